#include <algorithm>
#include <cmath>

#include "anisolab/errors.hpp"
#include "anisolab/lemmas.hpp"

namespace anisolab {

CutoffSpec CutoffSpec::between(const CubeSpec& inner, const CubeSpec& outer, const ExponentProfile& prof) {
  const int N = prof.N;
  if (inner.dimension() != N || outer.dimension() != N) {
    throw ArityError("cutoff cubes must match the exponent dimension");
  }
  for (int i = 0; i < N; ++i) {
    if (std::abs(inner.center[i] - outer.center[i]) > 1e-12 * std::max(1.0, outer.half_widths[i])) {
      throw DomainError("cutoff cubes must share their center");
    }
    if (!(inner.half_widths[i] > 0.0) || !(outer.half_widths[i] > inner.half_widths[i])) {
      throw DomainError("cutoff needs 0 < inner half-width < outer half-width on every axis");
    }
  }
  CutoffSpec c;
  c.inner = inner;
  c.outer = outer;
  c.p = prof.p;
  return c;
}

CutoffSpec CutoffSpec::identity(const ExponentProfile& prof) {
  CutoffSpec c;
  c.p = prof.p;
  c.flat = true;
  return c;
}

double CutoffSpec::axis_factor(std::size_t i, double x) const noexcept {
  if (flat) return 1.0;
  const double d = std::abs(x - outer.center[i]);
  const double a = inner.half_widths[i];
  const double b = outer.half_widths[i];
  if (d <= a) return 1.0;
  if (d >= b) return 0.0;
  return (b - d) / (b - a);
}

double CutoffSpec::operator()(std::span<const double> x) const noexcept {
  if (flat) return 1.0;
  double z = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) z *= std::pow(axis_factor(i, x[i]), p[i]);
  return z;
}

double CutoffSpec::derivative_bound(std::size_t i) const noexcept {
  if (flat) return 0.0;
  return 1.0 / (outer.half_widths[i] - inner.half_widths[i]);
}

namespace {

struct EnergySlice {
  double level = 0.0;                // int (u-k)_+^2 zeta xi
  std::vector<double> gradient;      // int |d_i[(u-k)_+ zeta xi]|^{p_i}
  std::vector<double> truncated_pi;  // int_K (u-k)_+^{p_i}
  double indicator = 0.0;            // |K cap {u > k}|
};

EnergySlice slice(const Field& f, const CutoffSpec& cutoff, const ExponentProfile& prof, double k,
                  double xi) {
  const Grid& g = *f.grid;
  const int N = g.dimension();
  const std::size_t cells = g.cell_count();
  EnergySlice s;
  s.gradient.assign(static_cast<std::size_t>(N), 0.0);
  s.truncated_pi.assign(static_cast<std::size_t>(N), 0.0);

  std::vector<double> v(cells);  // (u-k)_+ zeta xi
  std::vector<double> x(static_cast<std::size_t>(N));
  for (std::size_t c = 0; c < cells; ++c) {
    g.cell_center(c, x);
    const double w = std::max(f.values[c] - k, 0.0);
    const double z = cutoff(x);
    v[c] = w * z * xi;
    s.level += w * w * z * xi;
    const bool in_k = cutoff.flat || cutoff.outer.contains(x);
    if (in_k) {
      if (w > 0.0) s.indicator += 1.0;
      for (int i = 0; i < N; ++i) s.truncated_pi[i] += std::pow(w, prof.p[i]);
    }
  }
  for (int i = 0; i < N; ++i) {
    const int n = g.resolution()[i];
    const std::size_t stride = g.strides()[i];
    const double h = g.spacing()[i];
    double sum = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      const int j = static_cast<int>((c / stride) % static_cast<std::size_t>(n));
      const double left = j == 0 ? 0.0 : v[c - stride];
      sum += std::pow(std::abs(v[c] - left) / h, prof.p[i]);
      if (j == n - 1) sum += std::pow(std::abs(v[c]) / h, prof.p[i]);
    }
    s.gradient[i] = sum;
  }
  const double dv = g.cell_volume();
  s.level *= dv;
  s.indicator *= dv;
  for (int i = 0; i < N; ++i) {
    s.gradient[i] *= dv;
    s.truncated_pi[i] *= dv;
  }
  return s;
}

}  // namespace

InequalityReport caccioppoli_report(const Trajectory& traj, const CutoffSpec& cutoff,
                                    const CaccioppoliParams& params) {
  const ExponentProfile& prof = traj.profile;
  const Grid& grid = *traj.grid;
  const int N = grid.dimension();
  if (static_cast<int>(cutoff.p.size()) != N) throw ArityError("cutoff exponents do not match the grid");
  if (!(params.k >= 0.0)) throw DomainError("truncation level k must be >= 0");
  if (!(params.tau2 > params.tau1) || params.tau1 < 0.0) {
    throw DomainError("energy window must satisfy 0 <= tau1 < tau2");
  }
  if (params.tau2 > traj.final_time() * (1.0 + 1e-12)) {
    throw DomainError("energy window ends after the last snapshot");
  }
  if (!(params.C >= 0.0) || !(params.C_o > 0.0) || !(params.C_1 >= 0.0)) {
    throw DomainError("structure constants need C >= 0, C_o > 0, C_1 >= 0");
  }
  double volume_k = 1.0;
  if (cutoff.flat) {
    for (double L : grid.half_domain()) volume_k *= 2.0 * L;
  } else {
    if (cutoff.outer.dimension() != N) throw ArityError("cutoff cube dimension does not match the grid");
    for (int i = 0; i < N; ++i) {
      const double L = grid.half_domain()[i];
      const double lo = cutoff.outer.center[i] - cutoff.outer.half_widths[i];
      const double hi = cutoff.outer.center[i] + cutoff.outer.half_widths[i];
      if (lo < -L * (1.0 + 1e-12) || hi > L * (1.0 + 1e-12)) {
        throw DomainError("cutoff outer cube leaves the computational box on axis " + std::to_string(i));
      }
    }
    volume_k = cutoff.outer.volume();
  }

  const double span = params.tau2 - params.tau1;
  const double ramp = 0.25 * span;
  auto xi = [&](double tau) { return std::clamp((tau - params.tau1) / ramp, 0.0, 1.0); };

  const double tol = 1e-12 * std::max(1.0, params.tau2);
  std::vector<const Field*> window;
  for (const Field& f : traj.snapshots) {
    if (f.time >= params.tau1 - tol && f.time <= params.tau2 + tol) window.push_back(&f);
  }
  if (window.size() < 2) throw DomainError("energy window needs at least two snapshots");

  std::vector<EnergySlice> slices;
  slices.reserve(window.size());
  for (const Field* f : window) slices.push_back(slice(*f, cutoff, prof, params.k, xi(f->time)));

  double sup_level = 0.0;
  double indicator = 0.0;
  std::vector<double> grad(static_cast<std::size_t>(N), 0.0);
  std::vector<double> trunc(static_cast<std::size_t>(N), 0.0);
  for (std::size_t s = 0; s < slices.size(); ++s) {
    sup_level = std::max(sup_level, slices[s].level);
    if (s == 0) continue;
    const double dt = window[s]->time - window[s - 1]->time;
    indicator += 0.5 * dt * (slices[s].indicator + slices[s - 1].indicator);
    for (int i = 0; i < N; ++i) {
      grad[i] += 0.5 * dt * (slices[s].gradient[i] + slices[s - 1].gradient[i]);
      trunc[i] += 0.5 * dt * (slices[s].truncated_pi[i] + slices[s - 1].truncated_pi[i]);
    }
  }

  InequalityReport rep;
  rep.theorem = TheoremId::Caccioppoli;
  rep.geometry = cutoff.flat ? Geometry::standard : cutoff.outer.kind;
  rep.rho = cutoff.flat ? 0.0 : cutoff.outer.rho;
  rep.t = params.tau2;
  rep.C = params.C;
  rep.k = params.k;
  rep.snapshots_in_window = window.size();

  double energy = 0.0;
  for (int i = 0; i < N; ++i) energy += grad[i];
  rep.lhs = sup_level + params.C_o * energy;

  // ||d_i zeta_i||^{p_i} [1 + (C/||d_i zeta_i||)^{p_i}], multiplied out.
  double derivative = 0.0;
  double indicator_weight = 0.0;
  for (int i = 0; i < N; ++i) {
    const double d = cutoff.derivative_bound(static_cast<std::size_t>(i));
    const double p = prof.p[i];
    derivative += (std::pow(d, p) + std::pow(params.C, p)) * trunc[i];
    indicator_weight += std::pow(params.C, p);
  }
  rep.rhs_terms.emplace_back("derivative_term", derivative);
  rep.rhs_terms.emplace_back("time_term", (1.0 / ramp) * volume_k * span);
  rep.rhs_terms.emplace_back("indicator_term", indicator_weight * indicator);

  std::vector<double> terms;
  for (const auto& [name, v] : rep.rhs_terms) terms.push_back(v);
  rep.gamma_min = gamma_min(rep.lhs, terms);
  return rep;
}

}  // namespace anisolab
