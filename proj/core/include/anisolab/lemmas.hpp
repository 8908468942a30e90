#pragma once

// Verifiers for the auxiliary inequalities: Young's inequality with an explicit
// constant, the two sequence lemmas, the anisotropic Gagliardo-Sobolev-Nirenberg
// ratio and the Caccioppoli energy estimate.

#include <cstddef>
#include <optional>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/harnack.hpp"
#include "anisolab/solver.hpp"

namespace anisolab {

// gamma(eps) = ((q-1) / (q^{1/(q-1)} q)) eps^{-1/(q-1)}, the optimal constant in
// a b <= eps a^q + gamma(eps) b^{q'}.
double young_gamma(double eps, double q);
double young_conjugate(double q);  // q' = (1 - 1/q)^{-1}
// eps a^q + gamma(eps) b^{q'} - a b, >= 0 for all a, b >= 0.
double young_slack(double a, double b, double eps, double q);

struct SequenceLemmaResult {
  std::vector<double> values;  // Y_0 .. Y_{n_max} (or until the run stops)
  bool converged = false;
  double bound = 0.0;  // C^{-1/alpha} b^{-1/alpha^2}
};

// Runs Y_{n+1} = C b^n Y_n^{1+alpha}. Converged when Y drops below 1e-300, or
// when the sequence is strictly decreasing with last ratio < 1/2 at n_max.
SequenceLemmaResult fast_convergence(double C, double b, double alpha, double Y0, int n_max);

// I / (1 - eps b), the bound on Y_0 obtained by unrolling
// Y_n <= eps Y_{n+1} + I b^n for a sequence bounded by M. Empty when eps b >= 1.
std::optional<double> iteration_bound(double eps, double b, double I, double M);

struct SobolevTerms {
  double q = 0.0;
  double p_star = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;  // without the constant c
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
};

// Gagliardo-Sobolev-Nirenberg ratio for a field held constant on [0, t_extent].
// Derivatives are one-sided differences with zero values outside the box.
SobolevTerms sobolev_ratio(const Field& field, const ExponentProfile& prof, double theta,
                           double sigma, double t_extent);
// Same for a trajectory (time integrals by the trapezoidal rule over snapshots).
SobolevTerms sobolev_ratio(const Trajectory& traj, double theta, double sigma);

// zeta(x) = prod_i zeta_i(x_i)^{p_i}, zeta_i = 1 on the inner slab, 0 outside
// the outer slab, linear in between. A flat cutoff is identically 1.
struct CutoffSpec {
  CubeSpec inner;
  CubeSpec outer;
  std::vector<double> p;
  bool flat = false;

  static CutoffSpec between(const CubeSpec& inner, const CubeSpec& outer, const ExponentProfile& prof);
  static CutoffSpec identity(const ExponentProfile& prof);

  double axis_factor(std::size_t i, double x) const noexcept;  // zeta_i(x)
  double operator()(std::span<const double> x) const noexcept;
  // ||d_i zeta_i||_inf = 1 / (outer_i - inner_i); 0 for a flat cutoff.
  double derivative_bound(std::size_t i) const noexcept;
};

struct CaccioppoliParams {
  double k = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double C = 0.0;
  double C_o = 1.0;
  double C_1 = 1.0;
};

// Both sides of the energy estimate on Q = K x [tau1, tau2], K the outer cube
// (the whole box for a flat cutoff). The time factor xi ramps linearly from 0
// to 1 over the first quarter of the window.
InequalityReport caccioppoli_report(const Trajectory& traj, const CutoffSpec& cutoff,
                                    const CaccioppoliParams& params);

}  // namespace anisolab
