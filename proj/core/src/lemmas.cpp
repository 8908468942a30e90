#include "anisolab/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anisolab/errors.hpp"

namespace anisolab {

double young_conjugate(double q) {
  if (!(q > 1.0)) throw DomainError("Young exponent q must be > 1");
  return q / (q - 1.0);
}

double young_gamma(double eps, double q) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("Young epsilon must be > 0");
  if (!(q > 1.0) || !std::isfinite(q)) throw DomainError("Young exponent q must be > 1");
  const double e = 1.0 / (q - 1.0);
  return (q - 1.0) / (std::pow(q, e) * q) * std::pow(1.0 / eps, e);
}

double young_slack(double a, double b, double eps, double q) {
  if (a < 0.0 || b < 0.0) throw DomainError("Young check needs a, b >= 0");
  const double g = young_gamma(eps, q);
  return eps * std::pow(a, q) + g * std::pow(b, young_conjugate(q)) - a * b;
}

SequenceLemmaResult fast_convergence(double C, double b, double alpha, double Y0, int n_max) {
  if (!(C > 0.0)) throw DomainError("fast convergence: C must be > 0");
  if (!(b > 1.0)) throw DomainError("fast convergence: b must be > 1");
  if (!(alpha > 0.0)) throw DomainError("fast convergence: alpha must be > 0");
  if (!(Y0 >= 0.0) || !std::isfinite(Y0)) throw DomainError("fast convergence: Y0 must be >= 0");
  if (n_max < 1) throw DomainError("fast convergence: n_max must be >= 1");

  SequenceLemmaResult out;
  out.bound = std::pow(C, -1.0 / alpha) * std::pow(b, -1.0 / (alpha * alpha));
  out.values.reserve(static_cast<std::size_t>(n_max) + 1);
  out.values.push_back(Y0);
  constexpr double tiny = 1e-300;
  if (Y0 < tiny) {
    out.converged = true;
    return out;
  }
  const double lc = std::log(C);
  const double lb = std::log(b);
  double y = Y0;
  for (int n = 0; n < n_max; ++n) {
    double next = C * std::pow(b, n) * std::pow(y, 1.0 + alpha);
    // b^n or Y^{1+alpha} alone may leave the double range while the product does not.
    if (!std::isfinite(next) || next == 0.0) next = std::exp(lc + n * lb + (1.0 + alpha) * std::log(y));
    if (!std::isfinite(next)) {
      out.values.push_back(std::numeric_limits<double>::infinity());
      out.converged = false;
      return out;
    }
    out.values.push_back(next);
    y = next;
    if (y < tiny) {
      out.converged = true;
      return out;
    }
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (!(out.values[i] < out.values[i - 1])) {
      decreasing = false;
      break;
    }
  }
  const std::size_t n = out.values.size();
  out.converged = decreasing && out.values[n - 1] < 0.5 * out.values[n - 2];
  return out;
}

std::optional<double> iteration_bound(double eps, double b, double I, double M) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("iteration lemma: eps must lie in (0,1)");
  if (!(b > 1.0)) throw DomainError("iteration lemma: b must be > 1");
  if (!(I >= 1.0)) throw DomainError("iteration lemma: I must be >= 1");
  if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("iteration lemma: M must be finite and >= 0");
  if (!(eps * b < 1.0)) return std::nullopt;
  return I / (1.0 - eps * b);
}

// ---------------------------------------------------------------------------
// Gagliardo-Sobolev-Nirenberg ratio

namespace {

struct SobolevParts {
  double q_integral = 0.0;      // int |phi|^q
  double sigma_integral = 0.0;  // int |phi|^sigma
  std::vector<double> grad;     // int |d_i phi|^{p_i}, per axis
};

// Sum of |d_i phi|^{p_i} over every face along axis i, including the two box
// faces where the outside value is zero.
double axis_gradient(const Field& f, int axis, double p) {
  const Grid& g = *f.grid;
  const int n = g.resolution()[axis];
  const std::size_t stride = g.strides()[axis];
  const double h = g.spacing()[axis];
  double sum = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const int j = static_cast<int>((c / stride) % static_cast<std::size_t>(n));
    const double left = j == 0 ? 0.0 : f.values[c - stride];
    sum += std::pow(std::abs(f.values[c] - left) / h, p);
    if (j == n - 1) sum += std::pow(std::abs(f.values[c]) / h, p);
  }
  return sum * g.cell_volume();
}

SobolevParts sobolev_parts(const Field& f, const ExponentProfile& prof, double q, double sigma) {
  SobolevParts out;
  for (double v : f.values) {
    const double a = std::abs(v);
    out.q_integral += std::pow(a, q);
    out.sigma_integral += std::pow(a, sigma);
  }
  out.q_integral *= f.grid->cell_volume();
  out.sigma_integral *= f.grid->cell_volume();
  for (int i = 0; i < prof.N; ++i) out.grad.push_back(axis_gradient(f, i, prof.p[i]));
  return out;
}

SobolevTerms sobolev_setup(const ExponentProfile& prof, int dim, double theta, double sigma) {
  if (dim != prof.N) throw ArityError("field dimension does not match the exponent profile");
  if (!(prof.p_bar < prof.N)) throw DomainError("Sobolev embedding needs p_bar < N");
  SobolevTerms t;
  t.p_star = prof.N * prof.p_bar / (prof.N - prof.p_bar);
  if (!(theta >= 0.0 && theta <= prof.p_bar / t.p_star)) {
    throw DomainError("theta must lie in [0, p_bar/p*]");
  }
  if (!(sigma >= 1.0 && sigma <= t.p_star)) throw DomainError("sigma must lie in [1, p*]");
  t.q = theta * t.p_star + sigma * (1.0 - theta);
  return t;
}

double sobolev_rhs(const ExponentProfile& prof, double theta, double p_star, double T,
                   double sup_sigma, const std::vector<double>& grad_time) {
  double rhs = std::pow(T, 1.0 - theta * p_star / prof.p_bar) * std::pow(sup_sigma, 1.0 - theta);
  for (int i = 0; i < prof.N; ++i) {
    rhs *= std::pow(grad_time[i], theta * p_star / (prof.N * prof.p[i]));
  }
  return rhs;
}

void finish_ratio(SobolevTerms& t) {
  if (t.lhs == 0.0) {
    t.ratio = 0.0;
  } else if (t.rhs == 0.0) {
    t.ratio = std::numeric_limits<double>::infinity();
  } else {
    t.ratio = t.lhs / t.rhs;
  }
}

}  // namespace

SobolevTerms sobolev_ratio(const Field& field, const ExponentProfile& prof, double theta,
                           double sigma, double t_extent) {
  SobolevTerms t = sobolev_setup(prof, field.grid->dimension(), theta, sigma);
  if (!(t_extent > 0.0)) throw DomainError("t_extent must be > 0");
  const SobolevParts parts = sobolev_parts(field, prof, t.q, sigma);
  std::vector<double> grad_time(parts.grad);
  for (double& g : grad_time) g *= t_extent;
  t.lhs = parts.q_integral * t_extent;
  t.rhs = sobolev_rhs(prof, theta, t.p_star, t_extent, parts.sigma_integral, grad_time);
  finish_ratio(t);
  return t;
}

SobolevTerms sobolev_ratio(const Trajectory& traj, double theta, double sigma) {
  if (traj.snapshots.size() < 2) throw DomainError("trajectory Sobolev ratio needs >= 2 snapshots");
  const ExponentProfile& prof = traj.profile;
  SobolevTerms t = sobolev_setup(prof, traj.grid->dimension(), theta, sigma);
  std::vector<SobolevParts> parts;
  for (const Field& f : traj.snapshots) parts.push_back(sobolev_parts(f, prof, t.q, sigma));
  double sup_sigma = 0.0;
  std::vector<double> grad_time(static_cast<std::size_t>(prof.N), 0.0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    sup_sigma = std::max(sup_sigma, parts[k].sigma_integral);
    if (k == 0) continue;
    const double dt = traj.snapshots[k].time - traj.snapshots[k - 1].time;
    t.lhs += 0.5 * dt * (parts[k].q_integral + parts[k - 1].q_integral);
    for (int i = 0; i < prof.N; ++i) grad_time[i] += 0.5 * dt * (parts[k].grad[i] + parts[k - 1].grad[i]);
  }
  const double T = traj.snapshots.back().time - traj.snapshots.front().time;
  t.rhs = sobolev_rhs(prof, theta, t.p_star, T, sup_sigma, grad_time);
  finish_ratio(t);
  return t;
}

}  // namespace anisolab
