#include "anisolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "anisolab/errors.hpp"
#include "anisolab/snapshot_io.hpp"

namespace anisolab {

std::string_view to_string(Boundary b) noexcept {
  return b == Boundary::periodic ? "periodic" : "dirichlet";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "dirichlet" || text == "dirichlet_zero") return Boundary::dirichlet_zero;
  if (text == "periodic") return Boundary::periodic;
  throw ConfigError("unknown boundary '" + std::string(text) + "' (expected dirichlet|periodic)");
}

Grid::Grid(std::vector<double> half_domain, std::vector<int> resolution, Boundary boundary)
    : half_domain_(std::move(half_domain)), resolution_(std::move(resolution)), boundary_(boundary) {
  const std::size_t n = resolution_.size();
  spacing_.resize(n);
  strides_.resize(n);
  cell_count_ = 1;
  cell_volume_ = 1.0;
  for (std::size_t i = n; i-- > 0;) {
    strides_[i] = cell_count_;
    cell_count_ *= static_cast<std::size_t>(resolution_[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    spacing_[i] = 2.0 * half_domain_[i] / resolution_[i];
    cell_volume_ *= spacing_[i];
  }
}

double Grid::h_min() const noexcept {
  return *std::min_element(spacing_.begin(), spacing_.end());
}

void Grid::unflatten(std::size_t flat, std::span<int> index) const noexcept {
  for (std::size_t i = 0; i < resolution_.size(); ++i) {
    index[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
}

void Grid::cell_center(std::size_t flat, std::span<double> x) const noexcept {
  for (std::size_t i = 0; i < resolution_.size(); ++i) {
    const int j = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
    x[i] = center(static_cast<int>(i), j);
  }
}

bool Grid::operator==(const Grid& other) const noexcept {
  return half_domain_ == other.half_domain_ && resolution_ == other.resolution_ &&
         boundary_ == other.boundary_;
}

Grid build_grid(std::span<const double> half_domain, std::span<const int> resolution,
                Boundary boundary) {
  std::vector<std::string> problems;
  if (half_domain.empty()) problems.emplace_back("grid needs at least one axis");
  if (half_domain.size() != resolution.size()) {
    problems.emplace_back("half_domain and resolution must have the same length");
  }
  for (std::size_t i = 0; i < half_domain.size(); ++i) {
    if (!(half_domain[i] > 0.0) || !std::isfinite(half_domain[i])) {
      problems.push_back("half_domain[" + std::to_string(i) + "] must be positive");
    }
  }
  for (std::size_t i = 0; i < resolution.size(); ++i) {
    if (resolution[i] < 4) {
      problems.push_back("resolution[" + std::to_string(i) + "] must be >= 4");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return Grid({half_domain.begin(), half_domain.end()}, {resolution.begin(), resolution.end()},
              boundary);
}

double Field::sup() const noexcept {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double Field::min() const noexcept {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

double Field::mass() const noexcept {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid->cell_volume();
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class F>
void fill_pointwise(const Grid& grid, std::vector<double>& out, F&& f) {
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    grid.cell_center(c, x);
    out[c] = f(std::span<const double>(x));
  }
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

std::string describe(const InitialProfile& profile) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const profiles::SineProduct& s) { os << "sine_product(" << s.amplitude << ")"; },
                 [&](const profiles::Bump& b) { os << "bump(" << b.amplitude << "," << b.radius << ")"; },
                 [&](const profiles::Plateau& b) {
                   os << "plateau(" << b.amplitude << "," << b.radius << ")";
                 },
                 [&](const profiles::FromFile& f) { os << "from_file(" << f.path.string() << ")"; },
             },
             profile);
  return os.str();
}

Field init_field(std::shared_ptr<const Grid> grid, const InitialProfile& profile) {
  Field field;
  field.values.assign(grid->cell_count(), 0.0);
  const Grid& g = *grid;
  std::visit(
      overloaded{
          [&](const profiles::SineProduct& s) {
            if (!(s.amplitude >= 0.0)) throw ConfigError("sine_product amplitude must be >= 0");
            fill_pointwise(g, field.values, [&](std::span<const double> x) {
              double v = s.amplitude;
              for (std::size_t i = 0; i < x.size(); ++i) {
                v *= std::cos(std::numbers::pi * x[i] / (2.0 * g.half_domain()[i]));
              }
              return v;
            });
          },
          [&](const profiles::Bump& b) {
            if (!(b.amplitude >= 0.0) || !(b.radius > 0.0)) {
              throw ConfigError("bump needs amplitude >= 0 and radius > 0");
            }
            const double r2 = b.radius * b.radius;
            fill_pointwise(g, field.values, [&](std::span<const double> x) {
              const double s = norm2(x) / r2;
              return s < 1.0 ? b.amplitude * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
            });
          },
          [&](const profiles::Plateau& b) {
            if (!(b.amplitude >= 0.0) || !(b.radius > 0.0)) {
              throw ConfigError("plateau needs amplitude >= 0 and radius > 0");
            }
            const double r2 = b.radius * b.radius;
            fill_pointwise(g, field.values, [&](std::span<const double> x) {
              return norm2(x) <= r2 ? b.amplitude : 0.0;
            });
          },
          [&](const profiles::FromFile& f) {
            std::vector<double> data = read_f64_le(f.path);
            if (data.size() != g.cell_count()) {
              throw IngestionError("initial profile " + f.path.string() + " has " +
                                   std::to_string(data.size()) + " values, grid has " +
                                   std::to_string(g.cell_count()) + " cells");
            }
            for (double v : data) {
              if (!std::isfinite(v) || v < 0.0) {
                throw IngestionError("initial profile " + f.path.string() +
                                     " has negative or non-finite values");
              }
            }
            field.values = std::move(data);
          },
      },
      profile);
  field.grid = std::move(grid);
  return field;
}

}  // namespace anisolab
