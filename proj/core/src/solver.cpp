#include "anisolab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "anisolab/errors.hpp"

namespace anisolab {

namespace {

// Face fluxes of one field plus the per-axis maximum of dF/dg.
//
// Axis i is swept line by line; a line with n cells owns n + 1 faces, face k
// lying between cells k-1 and k. Periodic lines reuse face 0 as face n.
class FluxKernel {
 public:
  FluxKernel(const Grid& grid, const ExponentProfile& prof, double eps)
      : grid_(grid), prof_(prof), eps2_(eps * eps) {
    const int N = grid.dimension();
    flux_.resize(static_cast<std::size_t>(N));
    dmax_.assign(static_cast<std::size_t>(N), 0.0);
    for (int i = 0; i < N; ++i) {
      const std::size_t n = static_cast<std::size_t>(grid.resolution()[i]);
      flux_[i].resize(grid.cell_count() / n * (n + 1));
    }
  }

  void evaluate(std::span<const double> u) {
    const int N = grid_.dimension();
    const bool periodic = grid_.boundary() == Boundary::periodic;
    for (int axis = 0; axis < N; ++axis) {
      const std::size_t n = static_cast<std::size_t>(grid_.resolution()[axis]);
      const std::size_t stride = grid_.strides()[axis];
      const std::size_t block = n * stride;
      const double inv_h = 1.0 / grid_.spacing()[axis];
      const double p = prof_.p[axis];
      const bool linear = p == 2.0;
      const double expo = 0.5 * (p - 2.0);
      double dmax = 0.0;
      std::vector<double>& F = flux_[axis];
      std::size_t line = 0;
      for (std::size_t outer = 0; outer < grid_.cell_count(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner, ++line) {
          const std::size_t base = outer + inner;
          double* f = F.data() + line * (n + 1);
          for (std::size_t k = 0; k <= n; ++k) {
            double left;
            double right;
            if (k == 0) {
              right = u[base];
              left = periodic ? u[base + (n - 1) * stride] : -right;
            } else if (k == n) {
              left = u[base + (n - 1) * stride];
              right = periodic ? u[base] : -left;
            } else {
              left = u[base + (k - 1) * stride];
              right = u[base + k * stride];
            }
            const double g = (right - left) * inv_h;
            if (linear) {
              f[k] = g;
              dmax = 1.0;
            } else {
              const double s = g * g + eps2_;
              const double w = std::pow(s, expo);
              f[k] = w * g;
              const double d = w * ((p - 1.0) * g * g + eps2_) / s;
              dmax = std::max(dmax, d);
            }
          }
        }
      }
      dmax_[axis] = dmax;
    }
  }

  const std::vector<double>& max_derivative() const noexcept { return dmax_; }

  // out = u + dt * sum_i (F_{k+1} - F_k) / h_i. Returns the sum of out (NaN/inf on blowup).
  double apply(std::span<const double> u, std::span<double> out, double dt) const {
    std::copy(u.begin(), u.end(), out.begin());
    const int N = grid_.dimension();
    for (int axis = 0; axis < N; ++axis) {
      const std::size_t n = static_cast<std::size_t>(grid_.resolution()[axis]);
      const std::size_t stride = grid_.strides()[axis];
      const std::size_t block = n * stride;
      const double scale = dt / grid_.spacing()[axis];
      const std::vector<double>& F = flux_[axis];
      std::size_t line = 0;
      for (std::size_t outer = 0; outer < grid_.cell_count(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner, ++line) {
          const std::size_t base = outer + inner;
          const double* f = F.data() + line * (n + 1);
          for (std::size_t k = 0; k < n; ++k) {
            out[base + k * stride] += scale * (f[k + 1] - f[k]);
          }
        }
      }
    }
    double total = 0.0;
    for (double v : out) total += v;
    return total;
  }

  double dt_from_derivative(double safety) const noexcept {
    double denom = 0.0;
    for (int i = 0; i < grid_.dimension(); ++i) {
      const double h = grid_.spacing()[i];
      denom += 2.0 * dmax_[i] / (h * h);
    }
    return safety / denom;
  }

 private:
  const Grid& grid_;
  const ExponentProfile& prof_;
  double eps2_;
  std::vector<std::vector<double>> flux_;
  std::vector<double> dmax_;
};

void check_field(const Field& field, const ExponentProfile& prof) {
  if (!field.grid) throw ConfigError("field has no grid");
  if (prof.N != field.grid->dimension()) {
    throw ArityError("exponent profile dimension does not match the grid");
  }
  if (field.values.size() != field.grid->cell_count()) {
    throw ArityError("field size does not match the grid");
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("regularization eps must be > 0");
}

}  // namespace

std::vector<double> max_flux_derivative(const Field& field, const ExponentProfile& prof, double eps) {
  check_field(field, prof);
  check_eps(eps);
  FluxKernel kernel(*field.grid, prof, eps);
  kernel.evaluate(field.values);
  return kernel.max_derivative();
}

double stable_dt(const Field& field, const ExponentProfile& prof, double eps, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw DomainError("safety factor must lie in (0,1]");
  check_field(field, prof);
  check_eps(eps);
  FluxKernel kernel(*field.grid, prof, eps);
  kernel.evaluate(field.values);
  return kernel.dt_from_derivative(safety);
}

Field advance(const Field& field, const ExponentProfile& prof, double eps, double dt) {
  check_field(field, prof);
  check_eps(eps);
  if (!(dt >= 0.0)) throw DomainError("time step must be >= 0");
  FluxKernel kernel(*field.grid, prof, eps);
  kernel.evaluate(field.values);
  Field next{field.grid, std::vector<double>(field.values.size()), field.time + dt};
  const double total = kernel.apply(field.values, next.values, dt);
  if (!std::isfinite(total)) {
    throw BlowupError("non-finite value produced at t=" + std::to_string(field.time), field.time);
  }
  return next;
}

namespace {

std::vector<double> snapshot_schedule(const SimConfig& config, std::vector<std::string>& problems) {
  std::vector<double> times;
  if (!config.snapshot_times.empty()) {
    times = config.snapshot_times;
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (!(times[k] > 0.0) || times[k] > config.t_end || (k > 0 && !(times[k] > times[k - 1]))) {
        problems.emplace_back("snapshot times must be strictly increasing within (0, t_end]");
        break;
      }
    }
    if (!times.empty() && times.back() != config.t_end) times.push_back(config.t_end);
    return times;
  }
  if (config.t_end > 0.0) {
    if (config.snapshot_count < 1) {
      problems.emplace_back("snapshot count must be >= 1");
      return times;
    }
    for (int k = 1; k <= config.snapshot_count; ++k) {
      times.push_back(k == config.snapshot_count ? config.t_end
                                                 : config.t_end * k / config.snapshot_count);
    }
  }
  return times;
}

}  // namespace

Trajectory run(const SimConfig& config) {
  std::vector<std::string> problems;
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    problems.emplace_back("t_end must be >= 0");
  }
  if (!(config.safety > 0.0 && config.safety <= 1.0)) problems.emplace_back("safety must lie in (0,1]");
  if (config.eps && !(*config.eps > 0.0)) problems.emplace_back("eps must be > 0");
  const std::vector<double> schedule = snapshot_schedule(config, problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));

  auto grid = std::make_shared<const Grid>(
      build_grid(config.half_domain, config.resolution, config.boundary));

  Trajectory traj;
  traj.grid = grid;
  traj.profile = derive_exponents(config.p, grid->dimension());
  traj.eps = config.eps.value_or(grid->h_min());
  traj.safety = config.safety;
  traj.initial_profile = describe(config.initial);
  traj.snapshots.push_back(init_field(grid, config.initial));
  if (config.on_snapshot) config.on_snapshot(traj.snapshots.back(), 0);

  Field current = traj.snapshots.front();
  Field next{grid, std::vector<double>(current.values.size()), 0.0};
  FluxKernel kernel(*grid, traj.profile, traj.eps);

  for (double target : schedule) {
    while (current.time < target) {
      kernel.evaluate(current.values);
      double dt = kernel.dt_from_derivative(config.safety);
      bool lands = false;
      if (current.time + dt >= target) {
        dt = target - current.time;
        lands = true;
      }
      const double total = kernel.apply(current.values, next.values, dt);
      if (!std::isfinite(total)) {
        throw BlowupError("non-finite value produced at t=" + std::to_string(current.time),
                          current.time);
      }
      if (config.record_step_log) traj.step_log.push_back({current.time, dt});
      ++traj.step_count;
      next.time = lands ? target : current.time + dt;
      std::swap(current.values, next.values);
      current.time = next.time;
    }
    traj.snapshots.push_back(current);
    if (config.on_snapshot) config.on_snapshot(current, traj.step_count);
  }
  return traj;
}

}  // namespace anisolab
