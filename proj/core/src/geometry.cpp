#include "anisolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "anisolab/errors.hpp"

namespace anisolab {

std::string_view to_string(Geometry g) noexcept {
  return g == Geometry::intrinsic ? "intrinsic" : "standard";
}

Geometry parse_geometry(std::string_view text) {
  if (text == "intrinsic") return Geometry::intrinsic;
  if (text == "standard") return Geometry::standard;
  throw DomainError("unknown geometry '" + std::string(text) + "' (expected intrinsic|standard)");
}

double ExponentProfile::lambda_r(double r) const noexcept {
  return N * (p_bar - 2.0) + r * p_bar;
}

double ExponentProfile::lambda_ir(std::size_t i, double r) const noexcept {
  return N * (p[i] - 2.0) + r * p_bar;
}

bool ExponentProfile::isotropic() const noexcept {
  return std::all_of(p.begin(), p.end(), [&](double v) { return v == p.front(); });
}

ExponentProfile derive_exponents(std::span<const double> p_list, int N) {
  if (N < 1) throw ArityError("dimension N must be >= 1");
  if (p_list.size() != static_cast<std::size_t>(N)) {
    throw ArityError("expected " + std::to_string(N) + " exponents, got " +
                     std::to_string(p_list.size()));
  }
  for (double v : p_list) {
    if (!(v > 1.0 && v <= 2.0)) {
      throw DomainError("exponent out of (1,2]: " + std::to_string(v));
    }
  }

  ExponentProfile prof;
  prof.N = N;
  prof.p.assign(p_list.begin(), p_list.end());
  std::sort(prof.p.begin(), prof.p.end());

  double inv_sum = 0.0;
  for (double v : prof.p) inv_sum += 1.0 / v;
  prof.p_bar = N / inv_sum;
  // Harmonic mean of identical entries must be that entry exactly.
  if (prof.isotropic()) prof.p_bar = prof.p.front();
  prof.p_bar = std::clamp(prof.p_bar, prof.p.front(), prof.p.back());

  prof.lambda = N * (prof.p_bar - 2.0) + prof.p_bar;
  prof.lambda_i.resize(prof.p.size());
  for (std::size_t i = 0; i < prof.p.size(); ++i) {
    prof.lambda_i[i] = N * (prof.p[i] - 2.0) + prof.p_bar;
  }
  prof.strict_fast = std::all_of(prof.p.begin(), prof.p.end(), [](double v) { return v < 2.0; });
  prof.critical_dimension_warning = !(prof.p_bar < N);
  return prof;
}

namespace {

void require_strict_fast(const ExponentProfile& prof, const char* what) {
  if (!prof.strict_fast) {
    throw DomainError(std::string(what) + " requires every p_i < 2");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

std::vector<double> resolve_center(std::span<const double> center, int N) {
  if (center.empty()) return std::vector<double>(static_cast<std::size_t>(N), 0.0);
  if (center.size() != static_cast<std::size_t>(N)) {
    throw ArityError("cube center has " + std::to_string(center.size()) +
                     " entries, expected " + std::to_string(N));
  }
  return {center.begin(), center.end()};
}

}  // namespace

double nu(double t, double rho, const ExponentProfile& prof) {
  require_strict_fast(prof, "nu");
  require_positive(t, "t");
  require_positive(rho, "rho");
  return std::pow(t / std::pow(rho, prof.p_bar), 1.0 / (2.0 - prof.p_bar));
}

double nu_sigma(double t, double rho, const ExponentProfile& prof) {
  require_strict_fast(prof, "nu_sigma");
  require_positive(t, "t");
  require_positive(rho, "rho");
  const double base = t / std::pow(rho, prof.p_bar);
  double sum = 0.0;
  for (double pk : prof.p) sum += std::pow(base, 1.0 / (2.0 - pk));
  return sum;
}

double CubeSpec::volume() const noexcept {
  double v = 1.0;
  for (double w : half_widths) v *= 2.0 * w;
  return v;
}

bool CubeSpec::contains(std::span<const double> x) const noexcept {
  for (std::size_t i = 0; i < half_widths.size(); ++i) {
    if (std::abs(x[i] - center[i]) > half_widths[i]) return false;
  }
  return true;
}

CubeSpec CubeSpec::scaled(double a) const {
  require_positive(a, "cube scale");
  CubeSpec out = *this;
  for (double& w : out.half_widths) w *= a;
  out.rho *= a;
  return out;
}

CubeSpec intrinsic_cube(double rho, double t, const ExponentProfile& prof,
                        std::span<const double> center) {
  const double v = nu(t, rho, prof);
  CubeSpec cube;
  cube.center = resolve_center(center, prof.N);
  cube.kind = Geometry::intrinsic;
  cube.rho = rho;
  cube.t = t;
  cube.half_widths.resize(prof.p.size());
  for (std::size_t i = 0; i < prof.p.size(); ++i) {
    const double pi = prof.p[i];
    cube.half_widths[i] = std::pow(rho, prof.p_bar / pi) * std::pow(v, (pi - prof.p_bar) / pi);
  }
  return cube;
}

CubeSpec standard_cube(double rho, const ExponentProfile& prof, std::span<const double> center) {
  require_positive(rho, "rho");
  CubeSpec cube;
  cube.center = resolve_center(center, prof.N);
  cube.kind = Geometry::standard;
  cube.rho = rho;
  cube.half_widths.resize(prof.p.size());
  for (std::size_t i = 0; i < prof.p.size(); ++i) {
    cube.half_widths[i] = std::pow(rho, prof.p_bar / prof.p[i]);
  }
  return cube;
}

CubeSpec family_cube(Geometry g, double rho, double t, const ExponentProfile& prof, double scale,
                     std::span<const double> center) {
  if (g == Geometry::intrinsic) {
    CubeSpec base = intrinsic_cube(rho, t, prof, center);
    return scale == 1.0 ? base : base.scaled(scale);
  }
  require_positive(scale, "cube scale");
  return standard_cube(scale * rho, prof, center);
}

SmallnessResult smallness_violated(double C, double rho, double t, const ExponentProfile& prof,
                                   Geometry mode) {
  if (!(C >= 0.0)) throw DomainError("structure constant C must be >= 0");
  SmallnessResult result;
  const double rho_p = std::pow(rho, prof.p_bar);
  if (mode == Geometry::intrinsic) {
    const double v = nu(t, rho, prof);
    for (std::size_t i = 0; i < prof.p.size(); ++i) {
      const double bound = std::min({1.0, std::pow(v, prof.p_bar - prof.p[i]), std::pow(v, prof.p_bar)});
      if (std::pow(C, prof.p[i]) * rho_p > bound) {
        result.violated = true;
        result.index = i;
        return result;
      }
    }
  } else {
    const double vs = nu_sigma(t, rho, prof);
    for (std::size_t i = 0; i < prof.p.size(); ++i) {
      const double bound = std::min(1.0, std::pow(vs, prof.p[i]));
      if (std::pow(C, prof.p[i]) * rho_p > bound) {
        result.violated = true;
        result.index = i;
        return result;
      }
    }
  }
  return result;
}

}  // namespace anisolab
