#pragma once

// Explicit conservative finite-volume integrator for
//
//   d_t u = sum_i d_i( |d_i u|^{p_i - 2} d_i u )
//
// with the regularized face flux F_i(g) = (g^2 + eps^2)^{(p_i - 2)/2} g, where g is
// the difference quotient across the face. Dirichlet faces use an odd reflection
// (ghost = -u) so that u = 0 sits on the box faces; periodic faces wrap.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/grid.hpp"

namespace anisolab {

struct StepRecord {
  double time;  // time at the start of the step
  double dt;
};

struct Trajectory {
  std::shared_ptr<const Grid> grid;
  ExponentProfile profile;
  double eps = 0.0;
  double safety = 0.5;
  std::string initial_profile;  // human-readable description of u_0
  std::vector<Field> snapshots;  // strictly increasing times; front() is u(., 0)
  std::vector<StepRecord> step_log;
  std::size_t step_count = 0;

  double final_time() const noexcept { return snapshots.empty() ? 0.0 : snapshots.back().time; }
};

struct SimConfig {
  std::vector<double> half_domain;
  std::vector<int> resolution;
  Boundary boundary = Boundary::dirichlet_zero;
  std::vector<double> p;
  InitialProfile initial = profiles::SineProduct{};
  std::optional<double> eps;  // default: smallest grid spacing
  double safety = 0.5;
  double t_end = 0.0;
  // Uniformly spaced snapshots in (0, t_end] unless explicit times are given.
  int snapshot_count = 10;
  std::vector<double> snapshot_times;
  bool record_step_log = true;
  // Called after each stored snapshot.
  std::function<void(const Field&, std::size_t step_count)> on_snapshot;
};

// Largest derivative of the regularized flux over all faces of `field`,
// one entry per axis: max_faces (g^2+eps^2)^{(p_i-4)/2} ((p_i-1) g^2 + eps^2).
std::vector<double> max_flux_derivative(const Field& field, const ExponentProfile& prof, double eps);

// safety / sum_i (2 a_i / h_i^2) with a_i from max_flux_derivative.
double stable_dt(const Field& field, const ExponentProfile& prof, double eps, double safety);

// One forward Euler step. Throws BlowupError on a non-finite result.
Field advance(const Field& field, const ExponentProfile& prof, double eps, double dt);

Trajectory run(const SimConfig& config);

}  // namespace anisolab
