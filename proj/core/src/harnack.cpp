#include "anisolab/harnack.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "anisolab/errors.hpp"

namespace anisolab {

std::string_view to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::L1L1_intrinsic: return "L1L1_intrinsic";
    case TheoremId::L1L1_standard: return "L1L1_standard";
    case TheoremId::L1Linf_intrinsic: return "L1Linf_intrinsic";
    case TheoremId::L1Linf_standard: return "L1Linf_standard";
    case TheoremId::LrLinf_sup: return "LrLinf_sup";
    case TheoremId::LrLinf_sup_standard: return "LrLinf_sup_standard";
    case TheoremId::Lr_backward_intrinsic: return "Lr_backward_intrinsic";
    case TheoremId::Lr_backward_standard: return "Lr_backward_standard";
    case TheoremId::Backwards_composite_intrinsic: return "Backwards_composite_intrinsic";
    case TheoremId::Backwards_composite_standard: return "Backwards_composite_standard";
    case TheoremId::Caccioppoli: return "Caccioppoli";
  }
  return "unknown";
}

std::string_view to_string(ReportStatus s) noexcept {
  return s == ReportStatus::ok ? "ok" : "not_applicable";
}

double InequalityReport::rhs_sum() const noexcept {
  double s = 0.0;
  for (const auto& [name, v] : rhs_terms) s += v;
  return s;
}

bool InequalityReport::holds_with(double gamma) const noexcept {
  return lhs <= gamma * rhs_sum();
}

double gamma_min(double lhs, const std::vector<double>& rhs_terms) {
  if (!(lhs >= 0.0) || !std::isfinite(lhs)) throw DomainError("lhs must be finite and >= 0");
  double sum = 0.0;
  for (double v : rhs_terms) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("rhs terms must be finite and >= 0");
    sum += v;
  }
  if (lhs == 0.0) return 0.0;
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / sum;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InequalityReport start_report(const Trajectory& traj, const CheckParams& params, TheoremId intrinsic_id,
                              TheoremId standard_id) {
  if (!(params.rho > 0.0)) throw DomainError("rho must be > 0");
  if (!(params.t > 0.0)) throw DomainError("t must be > 0");
  if (!(params.C >= 0.0)) throw DomainError("C must be >= 0");
  if (traj.snapshots.empty()) throw DomainError("empty trajectory");
  if (traj.snapshots.front().time != 0.0) throw DomainError("trajectory must start at t = 0");
  const double tol = 1e-12 * std::max(1.0, params.t);
  if (params.t > traj.final_time() + tol) {
    throw DomainError("t = " + std::to_string(params.t) + " exceeds the trajectory end " +
                      std::to_string(traj.final_time()));
  }
  if (!traj.profile.strict_fast) throw DomainError("Harnack checks require every p_i < 2");

  InequalityReport rep;
  rep.geometry = params.geometry;
  rep.theorem = params.geometry == Geometry::intrinsic ? intrinsic_id : standard_id;
  rep.rho = params.rho;
  rep.t = params.t;
  rep.r = params.r;
  rep.C = params.C;
  const SmallnessResult small =
      smallness_violated(params.C, params.rho, params.t, traj.profile, params.geometry);
  rep.smallness_triggered = small.violated;
  rep.smallness_index = small.index;
  return rep;
}

InequalityReport not_applicable(InequalityReport rep, std::string reason) {
  rep.status = ReportStatus::not_applicable;
  rep.reason = std::move(reason);
  rep.lhs = kNaN;
  rep.gamma_min = kNaN;
  rep.rhs_terms.clear();
  return rep;
}

void finish(InequalityReport& rep) {
  std::vector<double> terms;
  terms.reserve(rep.rhs_terms.size());
  for (const auto& [name, v] : rep.rhs_terms) terms.push_back(v);
  rep.gamma_min = gamma_min(rep.lhs, terms);
}

bool inside_box(const Grid& grid, const CubeSpec& cube) {
  for (int i = 0; i < grid.dimension(); ++i) {
    const double L = grid.half_domain()[i];
    if (cube.center[i] - cube.half_widths[i] < -L || cube.center[i] + cube.half_widths[i] > L) {
      return false;
    }
  }
  return true;
}

CubeSpec cube_at(const Trajectory& traj, const CheckParams& params, double scale) {
  return family_cube(params.geometry, params.rho, params.t, traj.profile, scale, params.center);
}

// (t / rho^p_bar)
double base_ratio(const ExponentProfile& prof, const CheckParams& params) {
  return params.t / std::pow(params.rho, prof.p_bar);
}

double sum_over_axes(const ExponentProfile& prof, double base, auto exponent) {
  double s = 0.0;
  for (std::size_t i = 0; i < prof.p.size(); ++i) s += std::pow(base, exponent(i));
  return s;
}

}  // namespace

InequalityReport check_l1l1(const Trajectory& traj, const CheckParams& params) {
  InequalityReport rep = start_report(traj, params, TheoremId::L1L1_intrinsic, TheoremId::L1L1_standard);
  rep.r = 1.0;
  const ExponentProfile& prof = traj.profile;
  const CubeSpec base = cube_at(traj, params, 1.0);
  const CubeSpec doubled = cube_at(traj, params, 2.0);
  rep.hypothesis_met = inside_box(*traj.grid, doubled);

  const WindowReduction sup_mass = time_extremal(traj, base, 0.0, params.t, TimeReduction::sup_l1);
  const WindowReduction inf_mass = time_extremal(traj, doubled, 0.0, params.t, TimeReduction::inf_l1);
  rep.lhs = sup_mass.value;
  rep.snapshots_in_window = sup_mass.snapshots;
  rep.rhs_terms.emplace_back("inf_mass_2rho", inf_mass.value);
  if (params.geometry == Geometry::intrinsic) {
    rep.rhs_terms.emplace_back(
        "scaling", std::pow(params.t / std::pow(params.rho, prof.lambda), 1.0 / (2.0 - prof.p_bar)));
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < prof.p.size(); ++i) {
      s += std::pow(params.t / std::pow(params.rho, prof.lambda_i[i]), 1.0 / (2.0 - prof.p[i]));
    }
    rep.rhs_terms.emplace_back("sum_scaling", s);
  }
  finish(rep);
  return rep;
}

InequalityReport check_l1linf(const Trajectory& traj, const CheckParams& params) {
  InequalityReport rep =
      start_report(traj, params, TheoremId::L1Linf_intrinsic, TheoremId::L1Linf_standard);
  rep.r = 1.0;
  const ExponentProfile& prof = traj.profile;
  if (!(prof.lambda > 0.0)) {
    return not_applicable(std::move(rep), "lambda = N(p-2)+p = " + std::to_string(prof.lambda) +
                                              " <= 0 (subcritical range)");
  }
  const CubeSpec half = cube_at(traj, params, 0.5);
  const CubeSpec doubled = cube_at(traj, params, 2.0);
  rep.hypothesis_met = inside_box(*traj.grid, doubled);

  const WindowReduction sup_u =
      time_extremal(traj, half, params.t / 2.0, params.t, TimeReduction::sup_linf);
  const WindowReduction inf_mass = time_extremal(traj, doubled, 0.0, params.t, TimeReduction::inf_l1);
  rep.lhs = std::max(sup_u.value, 0.0);
  rep.snapshots_in_window = sup_u.snapshots;

  const double N = prof.N;
  const double base = base_ratio(prof, params);
  rep.rhs_terms.emplace_back("mass_term", std::pow(params.t, -N / prof.lambda) *
                                              std::pow(inf_mass.value, prof.p_bar / prof.lambda));
  if (params.geometry == Geometry::intrinsic) {
    rep.rhs_terms.emplace_back("scaling", std::pow(base, 1.0 / (2.0 - prof.p_bar)));
  } else {
    rep.rhs_terms.emplace_back("sum_lambda", sum_over_axes(prof, base, [&](std::size_t i) {
                                 return prof.lambda_i[i] / ((2.0 - prof.p[i]) * prof.lambda);
                               }));
    rep.rhs_terms.emplace_back("sum_scaling", sum_over_axes(prof, base, [&](std::size_t i) {
                                 return 1.0 / (2.0 - prof.p[i]);
                               }));
  }
  finish(rep);
  return rep;
}

InequalityReport check_lr_sup(const Trajectory& traj, const CheckParams& params) {
  InequalityReport rep = start_report(traj, params, TheoremId::LrLinf_sup, TheoremId::LrLinf_sup_standard);
  if (!(params.r >= 1.0)) throw DomainError("r must be >= 1");
  const ExponentProfile& prof = traj.profile;
  const double lambda_r = prof.lambda_r(params.r);
  if (!(lambda_r > 0.0)) {
    return not_applicable(std::move(rep),
                          "lambda_r = N(p-2)+rp = " + std::to_string(lambda_r) + " <= 0");
  }
  const CubeSpec base_cube = cube_at(traj, params, 1.0);
  const CubeSpec half = cube_at(traj, params, 0.5);
  const CubeSpec hyp = params.geometry == Geometry::intrinsic ? cube_at(traj, params, 4.0) : base_cube;
  rep.hypothesis_met = inside_box(*traj.grid, hyp);

  const WindowReduction sup_u =
      time_extremal(traj, half, params.t / 2.0, params.t, TimeReduction::sup_linf);
  const WindowReduction sup_lr =
      time_extremal(traj, base_cube, 0.0, params.t, TimeReduction::sup_lr, params.r);
  rep.lhs = std::max(sup_u.value, 0.0);
  rep.snapshots_in_window = sup_u.snapshots;

  const double N = prof.N;
  const double base = base_ratio(prof, params);
  const double mean = sup_lr.value / std::pow(2.0 * params.rho, N);
  rep.rhs_terms.emplace_back("mean_term",
                             std::pow(base, -N / lambda_r) * std::pow(mean, prof.p_bar / lambda_r));
  if (params.geometry == Geometry::intrinsic) {
    rep.rhs_terms.emplace_back("scaling", std::pow(base, 1.0 / (2.0 - prof.p_bar)));
  } else {
    rep.rhs_terms.emplace_back("sum_scaling", sum_over_axes(prof, base, [&](std::size_t i) {
                                 return 1.0 / (2.0 - prof.p[i]);
                               }));
  }
  finish(rep);
  return rep;
}

InequalityReport check_lr_backward(const Trajectory& traj, const CheckParams& params) {
  if (!(params.r > 1.0)) throw DomainError("backward L^r estimate needs r > 1");
  InequalityReport rep =
      start_report(traj, params, TheoremId::Lr_backward_intrinsic, TheoremId::Lr_backward_standard);
  const ExponentProfile& prof = traj.profile;
  const double r = params.r;
  const CubeSpec base_cube = cube_at(traj, params, 1.0);
  const CubeSpec doubled = cube_at(traj, params, 2.0);
  rep.hypothesis_met = inside_box(*traj.grid, doubled);

  const WindowReduction sup_lr = time_extremal(traj, base_cube, 0.0, params.t, TimeReduction::sup_lr, r);
  const double initial = cube_integral(traj.snapshots.front(), doubled, r).value;
  rep.lhs = sup_lr.value;
  rep.snapshots_in_window = sup_lr.snapshots;
  rep.rhs_terms.emplace_back("initial_2rho", initial);
  const double t_r = std::pow(params.t, r);
  if (params.geometry == Geometry::intrinsic) {
    rep.rhs_terms.emplace_back(
        "scaling", std::pow(t_r / std::pow(params.rho, prof.lambda_r(r)), 1.0 / (2.0 - prof.p_bar)));
  } else {
    double s = 0.0;
    for (std::size_t i = 0; i < prof.p.size(); ++i) {
      s += std::pow(t_r / std::pow(params.rho, prof.lambda_ir(i, r)), 1.0 / (2.0 - prof.p[i]));
    }
    rep.rhs_terms.emplace_back("sum_scaling", s);
  }
  finish(rep);
  return rep;
}

InequalityReport check_backwards_composite(const Trajectory& traj, const CheckParams& params) {
  if (!(params.r > 1.0)) throw DomainError("backwards L^r-L^inf estimate needs r > 1");
  InequalityReport rep = start_report(traj, params, TheoremId::Backwards_composite_intrinsic,
                                      TheoremId::Backwards_composite_standard);
  const ExponentProfile& prof = traj.profile;
  const double r = params.r;
  const double lambda_r = prof.lambda_r(r);
  if (!(lambda_r > 0.0)) {
    return not_applicable(std::move(rep),
                          "lambda_r = N(p-2)+rp = " + std::to_string(lambda_r) + " <= 0");
  }
  const CubeSpec half = cube_at(traj, params, 0.5);
  const CubeSpec doubled = cube_at(traj, params, 2.0);
  rep.hypothesis_met = inside_box(*traj.grid, doubled);

  const WindowReduction sup_u =
      time_extremal(traj, half, params.t / 2.0, params.t, TimeReduction::sup_linf);
  const double initial = cube_integral(traj.snapshots.front(), doubled, r).value;
  rep.lhs = std::max(sup_u.value, 0.0);
  rep.snapshots_in_window = sup_u.snapshots;

  const double N = prof.N;
  const double base = base_ratio(prof, params);
  rep.rhs_terms.emplace_back("initial_term", std::pow(params.t, -N / lambda_r) *
                                                 std::pow(initial, prof.p_bar / lambda_r));
  if (params.geometry == Geometry::intrinsic) {
    rep.rhs_terms.emplace_back("scaling", std::pow(base, 1.0 / (2.0 - prof.p_bar)));
  } else {
    rep.rhs_terms.emplace_back("sum_lambda_r", sum_over_axes(prof, base, [&](std::size_t i) {
                                 return prof.lambda_ir(i, r) / ((2.0 - prof.p[i]) * lambda_r);
                               }));
    rep.rhs_terms.emplace_back("sum_scaling", sum_over_axes(prof, base, [&](std::size_t i) {
                                 return 1.0 / (2.0 - prof.p[i]);
                               }));
  }
  finish(rep);
  return rep;
}

}  // namespace anisolab
