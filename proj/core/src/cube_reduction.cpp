#include <algorithm>
#include <cmath>
#include <limits>

#include "anisolab/errors.hpp"
#include "anisolab/harnack.hpp"

namespace anisolab {

namespace {

struct AxisCell {
  int j;
  double fraction;  // share of the cell extent inside the cube
  bool center_inside;
};

// Tensor-product description of the cells a cube touches.
struct CubeCover {
  std::vector<std::vector<AxisCell>> axes;
  bool clipped = false;
  bool empty = false;

  CubeCover(const Grid& grid, const CubeSpec& cube) {
    const int N = grid.dimension();
    if (cube.dimension() != N) throw ArityError("cube dimension does not match the grid");
    axes.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      const double L = grid.half_domain()[i];
      const double h = grid.spacing()[i];
      const double lo = cube.center[i] - cube.half_widths[i];
      const double hi = cube.center[i] + cube.half_widths[i];
      if (lo < -L || hi > L) clipped = true;
      const double a = std::max(lo, -L);
      const double b = std::min(hi, L);
      if (!(b > a)) {
        empty = true;
        continue;
      }
      const int n = grid.resolution()[i];
      const int j0 = std::clamp(static_cast<int>(std::floor((a + L) / h)), 0, n - 1);
      const int j1 = std::clamp(static_cast<int>(std::floor((b + L) / h)), 0, n - 1);
      for (int j = j0; j <= j1; ++j) {
        const double c0 = -L + j * h;
        const double overlap = std::min(b, c0 + h) - std::max(a, c0);
        if (overlap <= 0.0) continue;
        const double x = grid.center(i, j);
        axes[i].push_back({j, std::min(1.0, overlap / h),
                           std::abs(x - cube.center[i]) <= cube.half_widths[i]});
      }
      if (axes[i].empty()) empty = true;
    }
  }

  // Calls f(flat_index, weight, center_inside) for every touched cell.
  template <class F>
  void for_each(const Grid& grid, F&& f) const {
    if (empty) return;
    const std::size_t N = axes.size();
    std::vector<std::size_t> pos(N, 0);
    while (true) {
      std::size_t flat = 0;
      double weight = 1.0;
      bool inside = true;
      for (std::size_t i = 0; i < N; ++i) {
        const AxisCell& c = axes[i][pos[i]];
        flat += static_cast<std::size_t>(c.j) * grid.strides()[i];
        weight *= c.fraction;
        inside = inside && c.center_inside;
      }
      f(flat, weight, inside);
      std::size_t i = N;
      while (i-- > 0) {
        if (++pos[i] < axes[i].size()) break;
        pos[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
};

}  // namespace

CubeReduction cube_integral(const Field& field, const CubeSpec& cube, double r) {
  if (!(r >= 1.0)) throw DomainError("integral power r must be >= 1");
  const Grid& grid = *field.grid;
  CubeCover cover(grid, cube);
  CubeReduction out{0.0, cover.clipped, cover.empty};
  double sum = 0.0;
  // Round-off negatives (the scheme does not clamp) count as zero.
  if (r == 1.0) {
    cover.for_each(grid, [&](std::size_t c, double w, bool) { sum += w * std::max(field.values[c], 0.0); });
  } else if (r == 2.0) {
    cover.for_each(grid, [&](std::size_t c, double w, bool) {
      const double v = std::max(field.values[c], 0.0);
      sum += w * v * v;
    });
  } else {
    cover.for_each(grid, [&](std::size_t c, double w, bool) {
      sum += w * std::pow(std::max(field.values[c], 0.0), r);
    });
  }
  out.value = sum * grid.cell_volume();
  return out;
}

CubeReduction cube_sup(const Field& field, const CubeSpec& cube) {
  const Grid& grid = *field.grid;
  CubeCover cover(grid, cube);
  CubeReduction out{0.0, cover.clipped, cover.empty};
  double best = -std::numeric_limits<double>::infinity();
  cover.for_each(grid, [&](std::size_t c, double, bool inside) {
    if (inside) best = std::max(best, field.values[c]);
  });
  if (best == -std::numeric_limits<double>::infinity()) {
    out.empty = true;
    best = 0.0;
  }
  out.value = best;
  return out;
}

WindowReduction time_extremal(const Trajectory& traj, const CubeSpec& cube, double t_a, double t_b,
                              TimeReduction kind, double r) {
  if (!(t_b >= t_a)) throw DomainError("time window must satisfy t_a <= t_b");
  const double tol = 1e-12 * std::max(1.0, std::abs(t_b));
  WindowReduction out;
  bool first = true;
  for (const Field& f : traj.snapshots) {
    if (f.time < t_a - tol || f.time > t_b + tol) continue;
    CubeReduction red;
    switch (kind) {
      case TimeReduction::sup_l1:
      case TimeReduction::inf_l1:
        red = cube_integral(f, cube, 1.0);
        break;
      case TimeReduction::sup_lr:
        red = cube_integral(f, cube, r);
        break;
      case TimeReduction::sup_linf:
        red = cube_sup(f, cube);
        break;
    }
    out.clipped = out.clipped || red.clipped;
    if (first) {
      out.value = red.value;
      first = false;
    } else if (kind == TimeReduction::inf_l1) {
      out.value = std::min(out.value, red.value);
    } else {
      out.value = std::max(out.value, red.value);
    }
    ++out.snapshots;
  }
  if (out.snapshots == 0) {
    throw DomainError("no snapshot in time window [" + std::to_string(t_a) + ", " +
                      std::to_string(t_b) + "]");
  }
  return out;
}

}  // namespace anisolab
