#pragma once

// Numerical extinction time and log-log fits of the decay toward it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/solver.hpp"

namespace anisolab {

// Earliest time at which the global sup of u drops below `threshold`,
// interpolated linearly in log(sup u) between the bracketing snapshots.
std::optional<double> detect_extinction(const Trajectory& traj, double threshold);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // of log y
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

// Largest |difference quotient| over all faces, box faces included.
double max_face_gradient(const Field& field);

// Ordinary least squares of log y on log x. Needs >= 3 points, all positive.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

struct DecaySample {
  double tau;
  double remaining;  // t_fit - tau
  double mass_intrinsic;
  double sup_intrinsic;
  double mass_standard;
  double sup_standard;
  bool intrinsic_contained;  // the K_{4 rho}(t_fit - tau) cube lies inside the box
  double intrinsic_volume;
};

enum class FitStatus { ok, not_applicable };

struct DecayFit {
  FitStatus status = FitStatus::ok;
  std::string reason;
  PowerLawFit fit;
  double theoretical = 0.0;
  bool applicable() const noexcept { return status == FitStatus::ok; }
};

struct DecayOptions {
  std::optional<double> threshold;    // default: 1e-6 * sup u_0
  double floor_factor = 10.0;         // fit only where sup u >= floor_factor * threshold
  double ceiling_fraction = 0.2;      // ... and where sup u <= ceiling_fraction * sup u_0
  // ... and where the largest face gradient is >= gradient_floor * eps, so the
  // regularized flux has not yet linearized. 0 disables the test.
  double gradient_floor = 10.0;
  std::size_t min_points = 8;
  bool refine_extinction_time = true;  // fit the origin of the power law jointly
  std::vector<double> center;          // empty = origin
};

struct DecayReport {
  double rho = 0.0;
  double threshold = 0.0;
  std::optional<double> t_star;  // threshold crossing
  double t_fit = 0.0;            // origin used by the fits (refined t_star)
  std::pair<double, double> fit_window{0.0, 0.0};
  std::vector<DecaySample> samples;       // every snapshot before t_fit
  std::vector<std::size_t> fit_indices;   // samples that entered the fits

  DecayFit mass_intrinsic;
  DecayFit sup_intrinsic;
  DecayFit mass_standard;
  DecayFit sup_standard;

  // Per-axis exponents of the standard-geometry bounds.
  std::vector<double> standard_sup_exponents;   // lambda_i / ((2 - p_i) lambda)
  std::vector<double> standard_mass_exponents;  // 1 / (2 - p_i)
};

// Intrinsic samples integrate over K_rho(t_fit - tau); standard samples over
// the fixed cube of radius rho. Samples are fitted against t_fit - tau.
DecayReport decay_report(const Trajectory& traj, double rho, const DecayOptions& options = {});

}  // namespace anisolab
