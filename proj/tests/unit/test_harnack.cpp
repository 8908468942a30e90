#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "anisolab/errors.hpp"
#include "anisolab/harnack.hpp"
#include "test_support.hpp"

using namespace anisolab;
using anisolab::testing::linspace;
using anisolab::testing::make_grid;
using anisolab::testing::synthetic;

namespace {

Trajectory zero_traj(std::vector<double> p, int n = 32) {
  const int N = static_cast<int>(p.size());
  return synthetic(make_grid(std::vector<double>(N, 1.0), std::vector<int>(N, n)), p, linspace(0.0, 0.2, 11),
                   [](std::span<const double>, double) { return 0.0; });
}

Trajectory bump_run(std::vector<double> p, int n, double t_end, int snaps = 40) {
  SimConfig c;
  c.half_domain = std::vector<double>(p.size(), 1.0);
  c.resolution = std::vector<int>(p.size(), n);
  c.p = p;
  c.initial = profiles::Bump{1.0, 0.6};
  c.t_end = t_end;
  c.snapshot_count = snaps;
  return run(c);
}

CheckParams params(double rho, double t, Geometry g, double r = 1.0) {
  CheckParams p;
  p.rho = rho;
  p.t = t;
  p.geometry = g;
  p.r = r;
  return p;
}

// Brute-force oracle: cells are summed with their overlap fraction computed
// independently from the cell edges.
double brute_integral(const Field& f, const CubeSpec& cube, double r) {
  const Grid& g = *f.grid;
  const int N = g.dimension();
  double sum = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(N));
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    g.unflatten(c, idx);
    double w = 1.0;
    for (int i = 0; i < N; ++i) {
      const double a = -g.half_domain()[i] + idx[i] * g.spacing()[i];
      const double b = a + g.spacing()[i];
      const double lo = std::max(a, cube.center[i] - cube.half_widths[i]);
      const double hi = std::min(b, cube.center[i] + cube.half_widths[i]);
      w *= std::max(0.0, hi - lo) / g.spacing()[i];
    }
    sum += w * std::pow(std::max(f.values[c], 0.0), r);
  }
  return sum * g.cell_volume();
}

}  // namespace

TEST(CubeIntegral, ConstantTimesVolume) {
  const auto g = make_grid({2.0, 2.0}, {40, 40});
  const Field one{g, std::vector<double>(g->cell_count(), 1.0), 0.0};
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.3, 1.7}, 2);
  const CubeReduction red = cube_integral(one, standard_cube(1.0, prof));
  EXPECT_NEAR(red.value, 4.0, 1e-12);
  EXPECT_FALSE(red.clipped);
  const Field zero{g, std::vector<double>(g->cell_count(), 0.0), 0.0};
  EXPECT_EQ(cube_integral(zero, standard_cube(1.0, prof)).value, 0.0);
}

TEST(CubeIntegral, HalfPlateauSquared) {
  const auto g = make_grid({1.0, 1.0}, {20, 20});
  Field f{g, std::vector<double>(g->cell_count(), 0.0), 0.0};
  double x[2];
  for (std::size_t c = 0; c < g->cell_count(); ++c) {
    g->cell_center(c, x);
    f.values[c] = x[0] < 0.0 ? 2.0 : 0.0;
  }
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.5, 1.5}, 2);
  const CubeSpec cube = standard_cube(0.5, prof);
  EXPECT_NEAR(cube_integral(f, cube, 2.0).value, 4.0 * cube.volume() / 2.0, 1e-12);
}

TEST(CubeIntegral, MatchesBruteForceOnRandomCubes) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto g = make_grid({1.0, 0.8}, {17, 23});
  Field f{g, std::vector<double>(g->cell_count()), 0.0};
  for (double& v : f.values) v = u(gen) - 0.1;
  for (int trial = 0; trial < 200; ++trial) {
    CubeSpec cube;
    cube.center = {2.0 * u(gen) - 1.0, 1.6 * u(gen) - 0.8};
    cube.half_widths = {0.05 + 0.6 * u(gen), 0.05 + 0.6 * u(gen)};
    for (double r : {1.0, 2.0, 2.5}) {
      const double expect = brute_integral(f, cube, r);
      EXPECT_NEAR(cube_integral(f, cube, r).value, expect, 1e-12 * std::max(1.0, expect));
    }
  }
}

TEST(CubeSup, ConstantZeroAndBruteForce) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = make_grid({1.0, 1.0}, {15, 15});
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.5, 1.5}, 2);
  EXPECT_EQ(cube_sup(Field{g, std::vector<double>(225, 0.3), 0.0}, standard_cube(0.5, prof)).value, 0.3);
  EXPECT_EQ(cube_sup(Field{g, std::vector<double>(225, 0.0), 0.0}, standard_cube(0.5, prof)).value, 0.0);
  Field f{g, std::vector<double>(225), 0.0};
  for (double& v : f.values) v = u(gen);
  for (int trial = 0; trial < 100; ++trial) {
    CubeSpec cube;
    cube.center = {u(gen), u(gen)};
    cube.half_widths = {0.1 + 0.5 * std::abs(u(gen)), 0.1 + 0.5 * std::abs(u(gen))};
    double best = -1e300;
    double x[2];
    for (std::size_t c = 0; c < 225; ++c) {
      g->cell_center(c, x);
      if (std::abs(x[0] - cube.center[0]) <= cube.half_widths[0] &&
          std::abs(x[1] - cube.center[1]) <= cube.half_widths[1]) {
        best = std::max(best, f.values[c]);
      }
    }
    const CubeReduction red = cube_sup(f, cube);
    if (best == -1e300) {
      EXPECT_TRUE(red.empty);
    } else {
      EXPECT_EQ(red.value, best);
    }
  }
}

TEST(TimeExtremal, WindowsAndMonotoneFields) {
  const auto g = make_grid({1.0}, {20});
  const Trajectory traj = synthetic(g, {1.5}, linspace(0.0, 1.0, 11),
                                    [](std::span<const double>, double t) { return 2.0 - t; });
  const ExponentProfile& prof = traj.profile;
  const CubeSpec cube = standard_cube(0.5, prof);
  const WindowReduction one = time_extremal(traj, cube, 0.3, 0.3, TimeReduction::sup_l1);
  EXPECT_EQ(one.snapshots, 1u);
  EXPECT_NEAR(one.value, 1.7 * 1.0, 1e-12);
  const WindowReduction sup = time_extremal(traj, cube, 0.2, 0.6, TimeReduction::sup_l1);
  EXPECT_NEAR(sup.value, 1.8, 1e-12);  // value at t_a
  const WindowReduction inf = time_extremal(traj, cube, 0.2, 0.6, TimeReduction::inf_l1);
  EXPECT_NEAR(inf.value, 1.4, 1e-12);
  EXPECT_NEAR(time_extremal(traj, cube, 0.0, 1.0, TimeReduction::sup_linf).value, 2.0, 1e-15);
  EXPECT_THROW(time_extremal(traj, cube, 0.31, 0.39, TimeReduction::sup_l1), DomainError);

  const Trajectory zero = zero_traj({1.5});
  for (auto k : {TimeReduction::sup_l1, TimeReduction::inf_l1, TimeReduction::sup_lr, TimeReduction::sup_linf}) {
    EXPECT_EQ(time_extremal(zero, cube, 0.0, 0.2, k, 2.0).value, 0.0);
  }
}

TEST(GammaMin, Conventions) {
  EXPECT_DOUBLE_EQ(gamma_min(1.0, {0.5, 0.5}), 1.0);
  EXPECT_EQ(gamma_min(0.0, {3.0, 1.0}), 0.0);
  EXPECT_TRUE(std::isinf(gamma_min(2.0, {0.0})));
  EXPECT_THROW(gamma_min(-1.0, {1.0}), DomainError);
  EXPECT_THROW(gamma_min(1.0, {-1.0}), DomainError);
}

TEST(Checks, ZeroTrajectoryGivesZeroGamma) {
  const Trajectory zero = zero_traj({1.5, 1.5});
  for (Geometry g : {Geometry::intrinsic, Geometry::standard}) {
    EXPECT_EQ(check_l1l1(zero, params(0.2, 0.1, g)).gamma_min, 0.0);
    EXPECT_EQ(check_l1linf(zero, params(0.2, 0.1, g)).gamma_min, 0.0);
    EXPECT_EQ(check_lr_sup(zero, params(0.2, 0.1, g, 2.0)).gamma_min, 0.0);
    EXPECT_EQ(check_lr_backward(zero, params(0.2, 0.1, g, 2.0)).gamma_min, 0.0);
    EXPECT_EQ(check_backwards_composite(zero, params(0.2, 0.1, g, 2.0)).gamma_min, 0.0);
  }
}

TEST(Checks, ConstantPeriodicIntrinsicL1L1) {
  const auto g = make_grid({1.0, 1.0}, {32, 32}, Boundary::periodic);
  const Trajectory traj =
      synthetic(g, {1.4, 1.6}, linspace(0.0, 0.1, 6), [](std::span<const double>, double) { return 0.5; });
  const InequalityReport rep = check_l1l1(traj, params(0.1, 0.1, Geometry::intrinsic));
  ASSERT_EQ(rep.status, ReportStatus::ok);
  // lhs = c|K_rho|, first term = c|K_{2 rho}| = 4 c|K_rho|
  EXPECT_NEAR(rep.lhs * 4.0, rep.rhs_terms.front().second, 1e-12);
  EXPECT_LE(rep.gamma_min, 0.25 + 1e-12);
}

TEST(Checks, L1LinfRoutesNegativeLambda) {
  const Trajectory zero = zero_traj({1.1, 1.1});
  EXPECT_NEAR(zero.profile.lambda, -0.7, 1e-14);
  for (Geometry g : {Geometry::intrinsic, Geometry::standard}) {
    const InequalityReport rep = check_l1linf(zero, params(0.2, 0.1, g));
    EXPECT_EQ(rep.status, ReportStatus::not_applicable);
    EXPECT_FALSE(rep.reason.empty());
    EXPECT_TRUE(std::isnan(rep.gamma_min));
  }
  EXPECT_EQ(check_l1linf(zero_traj({1.5, 1.5}), params(0.2, 0.1, Geometry::intrinsic)).status, ReportStatus::ok);
}

TEST(Checks, LrExponents) {
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.2, 1.8}, 2);
  EXPECT_NEAR(prof.lambda_r(2.0), 1.76, 1e-14);
  EXPECT_NEAR(prof.lambda_ir(0, 2.0), 1.28, 1e-14);
  EXPECT_NEAR(prof.lambda_ir(1, 2.0), 2.48, 1e-14);
  EXPECT_EQ(check_lr_sup(zero_traj({1.2, 1.8}), params(0.2, 0.1, Geometry::intrinsic, 2.0)).status,
            ReportStatus::ok);
  EXPECT_THROW(check_lr_backward(zero_traj({1.2, 1.8}), params(0.2, 0.1, Geometry::intrinsic, 1.0)),
               DomainError);
}

TEST(Checks, RejectsBadInputs) {
  const Trajectory zero = zero_traj({1.5, 1.5});
  EXPECT_THROW(check_l1l1(zero, params(0.0, 0.1, Geometry::intrinsic)), DomainError);
  EXPECT_THROW(check_l1l1(zero, params(0.2, 0.0, Geometry::intrinsic)), DomainError);
  EXPECT_THROW(check_l1l1(zero, params(0.2, 5.0, Geometry::intrinsic)), DomainError);
}

TEST(Checks, L1L1RefinementStable1D) {
  const Trajectory a = bump_run({1.5}, 100, 0.3, 30);
  const Trajectory b = bump_run({1.5}, 200, 0.3, 30);
  for (Geometry g : {Geometry::intrinsic, Geometry::standard}) {
    const double ga = check_l1l1(a, params(0.25, 0.15, g)).gamma_min;
    const double gb = check_l1l1(b, params(0.25, 0.15, g)).gamma_min;
    ASSERT_TRUE(std::isfinite(ga) && std::isfinite(gb));
    EXPECT_LE(std::max(ga / gb, gb / ga), 2.0);
  }
}

// Monotone decay puts the sup in time at tau = 0, so the backward Lr estimate
// holds with a constant close to 1.
TEST(Checks, BackwardLrMonotoneDecay) {
  const Trajectory traj = bump_run({1.4, 1.6}, 48, 0.05, 10);
  const InequalityReport rep = check_lr_backward(traj, params(0.3, 0.05, Geometry::intrinsic, 2.0));
  ASSERT_EQ(rep.status, ReportStatus::ok);
  EXPECT_LE(rep.gamma_min, 1.0 + 1e-9);
  EXPECT_GT(rep.gamma_min, 0.0);
}

// gamma(composite) <= gamma(sup) max(1, gamma(backward))^s (1 + 2^{-Ns} max(1, 2^{s-1})),
// s = p_bar / lambda_r, from substituting the backward bound into the sup bound.
TEST(Checks, CompositeOrdering) {
  const Trajectory traj = bump_run({1.4, 1.6}, 48, 0.1, 20);
  const ExponentProfile& prof = traj.profile;
  const double r = 2.0;
  const double s = prof.p_bar / prof.lambda_r(r);
  const double factor = 1.0 + std::pow(2.0, -prof.N * s) * std::max(1.0, std::pow(2.0, s - 1.0));
  for (double rho : {0.15, 0.2}) {
    for (double t : {0.05, 0.1}) {
      const CheckParams p = params(rho, t, Geometry::intrinsic, r);
      const double gs = check_lr_sup(traj, p).gamma_min;
      const double gb = check_lr_backward(traj, p).gamma_min;
      const double gc = check_backwards_composite(traj, p).gamma_min;
      ASSERT_TRUE(std::isfinite(gc));
      EXPECT_LE(gc, gs * std::pow(std::max(1.0, gb), s) * factor * (1.0 + 1e-12));
    }
  }
}

TEST(Checks, ReportEchoesParameters) {
  const Trajectory traj = bump_run({1.4, 1.6}, 32, 0.05, 5);
  CheckParams p = params(0.2, 0.05, Geometry::standard, 2.0);
  p.C = 0.5;
  const InequalityReport rep = check_lr_sup(traj, p);
  EXPECT_EQ(rep.theorem, TheoremId::LrLinf_sup_standard);
  EXPECT_EQ(rep.rho, 0.2);
  EXPECT_EQ(rep.t, 0.05);
  EXPECT_EQ(rep.r, 2.0);
  EXPECT_EQ(rep.C, 0.5);
  EXPECT_TRUE(rep.holds_with(rep.gamma_min * (1 + 1e-12)));
}
