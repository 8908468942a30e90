#include "anisolab/extinction.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <string>

#include "anisolab/errors.hpp"
#include "anisolab/grid.hpp"
#include "anisolab/harnack.hpp"
#include "anisolab/report_io.hpp"

namespace anisolab {

std::optional<double> detect_extinction(const Trajectory& traj, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("extinction threshold must be > 0");
  if (traj.snapshots.empty()) throw DomainError("empty trajectory");
  double prev_sup = traj.snapshots.front().sup();
  if (prev_sup < threshold) return traj.snapshots.front().time;
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const double s = traj.snapshots[k].sup();
    if (s < threshold) {
      const double t0 = traj.snapshots[k - 1].time;
      const double t1 = traj.snapshots[k].time;
      double frac;
      if (s > 0.0) {
        frac = (std::log(threshold) - std::log(prev_sup)) / (std::log(s) - std::log(prev_sup));
      } else {
        frac = (prev_sup - threshold) / prev_sup;
      }
      return t0 + std::clamp(frac, 0.0, 1.0) * (t1 - t0);
    }
    prev_sup = s;
  }
  return std::nullopt;
}

double max_face_gradient(const Field& field) {
  const Grid& g = *field.grid;
  const bool dirichlet = g.boundary() == Boundary::dirichlet_zero;
  double best = 0.0;
  for (int i = 0; i < g.dimension(); ++i) {
    const int n = g.resolution()[i];
    const std::size_t stride = g.strides()[i];
    const double h = g.spacing()[i];
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const int j = static_cast<int>((c / stride) % static_cast<std::size_t>(n));
      const double u = field.values[c];
      double d;
      if (j + 1 < n) {
        d = std::abs(field.values[c + stride] - u);
      } else {
        // Periodic wrap, or the odd-reflection ghost at the box face.
        d = dirichlet ? 2.0 * std::abs(u) : std::abs(field.values[c + stride - n * stride] - u);
      }
      if (j == 0 && dirichlet) d = std::max(d, 2.0 * std::abs(u));
      best = std::max(best, d / h);
    }
  }
  return best;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DomainError("power-law fit needs at least 3 points");
  const std::size_t n = points.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = points[i];
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("power-law fit needs positive finite points");
    }
    lx[i] = std::log(x);
    ly[i] = std::log(y);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw DomainError("power-law fit needs at least two distinct x values");

  PowerLawFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssr += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

namespace {

// Residual sum of squares of log y against log(T - tau).
double log_log_residual(std::span<const double> taus, std::span<const double> ys, double T) {
  const std::size_t n = taus.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(T - taus[i]);
    mx += lx[i];
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = std::log(ys[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  return sxx > 0.0 ? syy - sxy * sxy / sxx : syy;
}

DecayFit fit_series(const DecayReport& rep, const std::vector<double>& values,
                    std::size_t min_points, double theoretical) {
  DecayFit out;
  out.theoretical = theoretical;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t idx : rep.fit_indices) {
    const double y = values[idx];
    const double x = rep.samples[idx].remaining;
    if (y > 0.0 && x > 0.0) pts.emplace_back(x, y);
  }
  if (pts.size() < min_points) {
    out.status = FitStatus::not_applicable;
    out.reason = "only " + std::to_string(pts.size()) + " usable samples in the fit window (need " +
                 std::to_string(min_points) + ")";
    return out;
  }
  out.fit = fit_power_law(pts);
  return out;
}

DecayFit na(std::string reason, double theoretical = std::nan("")) {
  DecayFit f;
  f.status = FitStatus::not_applicable;
  f.reason = std::move(reason);
  f.theoretical = theoretical;
  return f;
}

}  // namespace

DecayReport decay_report(const Trajectory& traj, double rho, const DecayOptions& options) {
  if (!(rho > 0.0)) throw DomainError("rho must be > 0");
  if (traj.snapshots.empty()) throw DomainError("empty trajectory");
  if (options.min_points < 3) throw DomainError("min_points must be >= 3");
  const ExponentProfile& prof = traj.profile;

  DecayReport rep;
  rep.rho = rho;
  const double sup0 = traj.snapshots.front().sup();
  rep.threshold = options.threshold.value_or(1e-6 * sup0);
  if (!(rep.threshold > 0.0)) {
    // Zero initial datum: extinct from the start, nothing to fit.
    rep.t_star = 0.0;
    rep.t_fit = 0.0;
    rep.mass_intrinsic = rep.sup_intrinsic = rep.mass_standard = rep.sup_standard =
        na("initial datum is identically zero");
    return rep;
  }
  rep.t_star = detect_extinction(traj, rep.threshold);
  if (!rep.t_star) {
    rep.mass_intrinsic = rep.sup_intrinsic = rep.mass_standard = rep.sup_standard =
        na("no extinction detected: sup u never drops below " + format_number(rep.threshold));
    return rep;
  }
  const double t_star = *rep.t_star;

  for (std::size_t i = 0; i < prof.p.size(); ++i) {
    rep.standard_sup_exponents.push_back(prof.lambda_i[i] / ((2.0 - prof.p[i]) * prof.lambda));
    rep.standard_mass_exponents.push_back(1.0 / (2.0 - prof.p[i]));
  }

  // Candidate fit window: between the regularization floor and the early transient.
  std::vector<std::size_t> window;
  std::vector<double> window_tau, window_sup;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const Field& f = traj.snapshots[k];
    if (!(f.time < t_star)) break;
    const double s = f.sup();
    const bool resolved =
        options.gradient_floor <= 0.0 || max_face_gradient(f) >= options.gradient_floor * traj.eps;
    if (s >= options.floor_factor * rep.threshold && s <= options.ceiling_fraction * sup0 && resolved) {
      window.push_back(k);
      window_tau.push_back(f.time);
      window_sup.push_back(s);
    }
  }

  rep.t_fit = t_star;
  if (options.refine_extinction_time && window.size() >= options.min_points) {
    const double first = window_tau.front();
    const double last = window_tau.back();
    const double span = t_star - first;
    const double lo = last + 1e-9 * span;
    const double hi = t_star + span;
    const auto best = boost::math::tools::brent_find_minima(
        [&](double T) { return log_log_residual(window_tau, window_sup, T); }, lo, hi, 50);
    rep.t_fit = best.first;
  }

  const double t_fit = rep.t_fit;
  std::vector<double> m_i, s_i, m_s, s_s;
  const CubeSpec standard = standard_cube(rho, prof, options.center);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const Field& f = traj.snapshots[k];
    if (!(f.time < t_fit)) break;
    DecaySample sample{};
    sample.tau = f.time;
    sample.remaining = t_fit - f.time;
    if (prof.strict_fast) {
      const CubeSpec cube = intrinsic_cube(rho, sample.remaining, prof, options.center);
      sample.mass_intrinsic = cube_integral(f, cube).value;
      sample.sup_intrinsic = std::max(cube_sup(f, cube).value, 0.0);
      sample.intrinsic_volume = cube.volume();
      const CubeReduction big = cube_integral(f, cube.scaled(4.0));
      sample.intrinsic_contained = !big.clipped;
    } else {
      sample.mass_intrinsic = sample.sup_intrinsic = std::nan("");
    }
    sample.mass_standard = cube_integral(f, standard).value;
    sample.sup_standard = std::max(cube_sup(f, standard).value, 0.0);
    rep.samples.push_back(sample);
    m_i.push_back(sample.mass_intrinsic);
    s_i.push_back(sample.sup_intrinsic);
    m_s.push_back(sample.mass_standard);
    s_s.push_back(sample.sup_standard);
  }
  for (std::size_t k : window) {
    if (k < rep.samples.size()) rep.fit_indices.push_back(k);
  }
  if (!rep.fit_indices.empty()) {
    rep.fit_window = {rep.samples[rep.fit_indices.front()].tau, rep.samples[rep.fit_indices.back()].tau};
  }

  const double intrinsic_slope = prof.strict_fast ? 1.0 / (2.0 - prof.p_bar) : std::nan("");
  if (!prof.strict_fast) {
    rep.mass_intrinsic = rep.sup_intrinsic = rep.mass_standard = rep.sup_standard =
        na("decay laws require every p_i < 2");
    return rep;
  }
  rep.mass_intrinsic = fit_series(rep, m_i, options.min_points, intrinsic_slope);
  if (prof.lambda > 0.0) {
    rep.sup_intrinsic = fit_series(rep, s_i, options.min_points, intrinsic_slope);
  } else {
    rep.sup_intrinsic = na("lambda = N(p-2)+p <= 0", intrinsic_slope);
  }
  rep.mass_standard = fit_series(rep, m_s, options.min_points, 1.0 / (2.0 - prof.p.back()));

  const double std_sup_slope = prof.lambda_i.front() / ((2.0 - prof.p.back()) * prof.lambda);
  const bool all_positive =
      std::all_of(prof.lambda_i.begin(), prof.lambda_i.end(), [](double l) { return l > 0.0; });
  if (!(prof.lambda > 0.0)) {
    rep.sup_standard = na("lambda = N(p-2)+p <= 0", std_sup_slope);
  } else if (!all_positive) {
    rep.sup_standard = na("standard sup decay needs lambda_i > 0 for every i", std_sup_slope);
  } else {
    rep.sup_standard = fit_series(rep, s_s, options.min_points, std_sup_slope);
  }
  return rep;
}

}  // namespace anisolab
