#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace anisolab {

enum class Boundary { dirichlet_zero, periodic };

std::string_view to_string(Boundary b) noexcept;
Boundary parse_boundary(std::string_view text);

// Cell-centred tensor grid on the box prod_i (-half_domain[i], half_domain[i]).
// Values are stored row-major: the last axis varies fastest.
class Grid {
 public:
  Grid(std::vector<double> half_domain, std::vector<int> resolution, Boundary boundary);

  int dimension() const noexcept { return static_cast<int>(resolution_.size()); }
  const std::vector<double>& half_domain() const noexcept { return half_domain_; }
  const std::vector<int>& resolution() const noexcept { return resolution_; }
  const std::vector<double>& spacing() const noexcept { return spacing_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  Boundary boundary() const noexcept { return boundary_; }

  std::size_t cell_count() const noexcept { return cell_count_; }
  double cell_volume() const noexcept { return cell_volume_; }
  double h_min() const noexcept;

  // Coordinate of the centre of cell j along `axis`.
  double center(int axis, int j) const noexcept {
    return -half_domain_[axis] + (j + 0.5) * spacing_[axis];
  }
  // Multi-index of a flat cell id.
  void unflatten(std::size_t flat, std::span<int> index) const noexcept;
  void cell_center(std::size_t flat, std::span<double> x) const noexcept;

  bool operator==(const Grid& other) const noexcept;

 private:
  std::vector<double> half_domain_;
  std::vector<int> resolution_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  Boundary boundary_;
  std::size_t cell_count_ = 0;
  double cell_volume_ = 0.0;
};

// Validates the arguments (extent > 0, resolution >= 4 per axis) and builds the grid.
Grid build_grid(std::span<const double> half_domain, std::span<const int> resolution,
                Boundary boundary);

struct Field {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  double time = 0.0;

  double sup() const noexcept;
  double min() const noexcept;
  // sum of values times the cell volume
  double mass() const noexcept;
};

namespace profiles {
// A prod_i cos(pi x_i / (2 half_i)): positive hump, zero on the box faces.
struct SineProduct {
  double amplitude = 1.0;
};
// A exp(1 - 1/(1 - |x|^2/R^2)) inside the Euclidean ball of radius R.
struct Bump {
  double amplitude = 1.0;
  double radius = 0.25;
};
// A on the closed Euclidean ball of radius R, 0 elsewhere.
struct Plateau {
  double amplitude = 1.0;
  double radius = 0.25;
};
// Raw little-endian float64 values in row-major order.
struct FromFile {
  std::filesystem::path path;
};
}  // namespace profiles

using InitialProfile =
    std::variant<profiles::SineProduct, profiles::Bump, profiles::Plateau, profiles::FromFile>;

std::string describe(const InitialProfile& profile);

Field init_field(std::shared_ptr<const Grid> grid, const InitialProfile& profile);

}  // namespace anisolab
