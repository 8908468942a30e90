#pragma once

// Both sides of the integral Harnack-type inequalities, evaluated on simulated
// trajectories, and the smallest constant gamma that makes each instance hold.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/solver.hpp"

namespace anisolab {

// ---------------------------------------------------------------------------
// Cube reductions

struct CubeReduction {
  double value = 0.0;
  bool clipped = false;  // cube reaches outside the computational box
  bool empty = false;    // no overlap with the box at all
};

// Midpoint quadrature of u_+^r over the cube clipped to the box. A cell is
// weighted by the product over axes of the fraction of its extent inside.
CubeReduction cube_integral(const Field& field, const CubeSpec& cube, double r = 1.0);

// Maximum of u over the cells whose centres lie in the closed cube.
CubeReduction cube_sup(const Field& field, const CubeSpec& cube);

enum class TimeReduction { sup_l1, inf_l1, sup_lr, sup_linf };

struct WindowReduction {
  double value = 0.0;
  bool clipped = false;
  std::size_t snapshots = 0;  // snapshots that fell in the window
};

// Extremum over snapshots with time in [t_a, t_b] of a per-snapshot reduction
// on a fixed cube. Throws DomainError when no snapshot falls in the window.
WindowReduction time_extremal(const Trajectory& traj, const CubeSpec& cube, double t_a, double t_b,
                              TimeReduction kind, double r = 1.0);

// ---------------------------------------------------------------------------
// Inequality reports

enum class TheoremId {
  L1L1_intrinsic,
  L1L1_standard,
  L1Linf_intrinsic,
  L1Linf_standard,
  LrLinf_sup,
  LrLinf_sup_standard,
  Lr_backward_intrinsic,
  Lr_backward_standard,
  Backwards_composite_intrinsic,
  Backwards_composite_standard,
  Caccioppoli,
};

std::string_view to_string(TheoremId id) noexcept;

enum class ReportStatus { ok, not_applicable };

std::string_view to_string(ReportStatus s) noexcept;

struct InequalityReport {
  TheoremId theorem = TheoremId::L1L1_intrinsic;
  Geometry geometry = Geometry::intrinsic;
  ReportStatus status = ReportStatus::ok;
  std::string reason;  // why the report is not applicable

  double lhs = 0.0;
  std::vector<std::pair<std::string, double>> rhs_terms;
  double gamma_min = 0.0;

  bool smallness_triggered = false;
  std::optional<std::size_t> smallness_index;
  bool hypothesis_met = true;  // every cube the theorem needs lies inside the box
  std::size_t snapshots_in_window = 0;

  double rho = 0.0;
  double t = 0.0;
  double r = 1.0;
  double C = 0.0;
  double k = 0.0;  // truncation level (Caccioppoli only)

  double rhs_sum() const noexcept;
  // lhs <= gamma * sum(rhs_terms)
  bool holds_with(double gamma) const noexcept;
};

// lhs / sum(terms); 0 when lhs = 0; +infinity when lhs > 0 = sum(terms).
double gamma_min(double lhs, const std::vector<double>& rhs_terms);

struct CheckParams {
  double rho = 0.0;
  double t = 0.0;
  Geometry geometry = Geometry::intrinsic;
  double C = 0.0;
  double r = 1.0;
  std::vector<double> center;  // empty = origin
};

InequalityReport check_l1l1(const Trajectory& traj, const CheckParams& params);
InequalityReport check_l1linf(const Trajectory& traj, const CheckParams& params);
InequalityReport check_lr_sup(const Trajectory& traj, const CheckParams& params);
InequalityReport check_lr_backward(const Trajectory& traj, const CheckParams& params);
InequalityReport check_backwards_composite(const Trajectory& traj, const CheckParams& params);

}  // namespace anisolab
