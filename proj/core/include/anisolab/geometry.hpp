#pragma once

// Exponent arithmetic and the two anisotropic cube families.
//
// Exponents are kept sorted ascending (p_1 <= ... <= p_N); every per-axis
// quantity below refers to that sorted order.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace anisolab {

enum class Geometry { intrinsic, standard };

std::string_view to_string(Geometry g) noexcept;
Geometry parse_geometry(std::string_view text);

struct ExponentProfile {
  std::vector<double> p;         // sorted ascending
  int N = 0;
  double p_bar = 0.0;            // harmonic mean N / sum(1/p_i)
  double lambda = 0.0;           // N(p_bar - 2) + p_bar
  std::vector<double> lambda_i;  // N(p_i - 2) + p_bar
  bool strict_fast = false;      // every p_i < 2
  bool critical_dimension_warning = false;  // p_bar >= N

  // N(p_bar - 2) + r p_bar
  double lambda_r(double r) const noexcept;
  // N(p_i - 2) + r p_bar
  double lambda_ir(std::size_t i, double r) const noexcept;
  bool isotropic() const noexcept;
};

// Sorts p_list and fills every derived quantity. Entries must lie in (1, 2];
// p_i = 2 is the heat-equation validation mode (strict_fast = false).
ExponentProfile derive_exponents(std::span<const double> p_list, int N);

// (t / rho^p_bar)^{1/(2 - p_bar)}. Requires strict_fast.
double nu(double t, double rho, const ExponentProfile& prof);

// sum_k (t / rho^p_bar)^{1/(2 - p_k)}. Requires strict_fast.
double nu_sigma(double t, double rho, const ExponentProfile& prof);

struct CubeSpec {
  std::vector<double> center;
  std::vector<double> half_widths;
  Geometry kind = Geometry::standard;
  double rho = 0.0;
  std::optional<double> t;  // intrinsic only

  int dimension() const noexcept { return static_cast<int>(half_widths.size()); }
  double volume() const noexcept;
  bool contains(std::span<const double> x) const noexcept;
  // Every half-width multiplied by a (the a*K_rho(t) convention).
  CubeSpec scaled(double a) const;
};

// Half-widths rho^{p_bar/p_i} nu^{(p_i - p_bar)/p_i}; volume (2 rho)^N.
// An empty center means the origin.
CubeSpec intrinsic_cube(double rho, double t, const ExponentProfile& prof,
                        std::span<const double> center = {});

// Half-widths rho^{p_bar/p_i}; volume (2 rho)^N.
CubeSpec standard_cube(double rho, const ExponentProfile& prof,
                       std::span<const double> center = {});

// The cube of "radius" scale*rho in the requested family: the intrinsic cube
// K_rho(t) dilated by `scale`, or the standard cube of radius scale*rho.
CubeSpec family_cube(Geometry g, double rho, double t, const ExponentProfile& prof,
                     double scale = 1.0, std::span<const double> center = {});

struct SmallnessResult {
  bool violated = false;
  std::optional<std::size_t> index;  // first violating axis
  explicit operator bool() const noexcept { return violated; }
};

// Intrinsic: exists i with C^{p_i} rho^{p_bar} > min{1, nu^{p_bar - p_i}, nu^{p_bar}}.
// Standard:  exists i with C^{p_i} rho^{p_bar} > min{1, nu_sigma^{p_i}}.
// Ties do not count as violations.
SmallnessResult smallness_violated(double C, double rho, double t,
                                   const ExponentProfile& prof, Geometry mode);

}  // namespace anisolab
