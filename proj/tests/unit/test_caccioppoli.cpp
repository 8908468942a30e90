#include <gtest/gtest.h>

#include <cmath>

#include "anisolab/errors.hpp"
#include "anisolab/lemmas.hpp"
#include "test_support.hpp"

using namespace anisolab;
using anisolab::testing::make_grid;

namespace {

Trajectory bump_run(int n, double t_end = 0.05) {
  SimConfig c;
  c.half_domain = {1.0, 1.0};
  c.resolution = {n, n};
  c.p = {1.4, 1.7};
  c.initial = profiles::Bump{1.0, 0.6};
  c.t_end = t_end;
  c.snapshot_count = 20;
  return run(c);
}

CutoffSpec cube_cutoff(const ExponentProfile& prof, double rho) {
  const CubeSpec inner = standard_cube(rho, prof);
  return CutoffSpec::between(inner, inner.scaled(2.0), prof);
}

CaccioppoliParams window(double k, double tau2) {
  CaccioppoliParams p;
  p.k = k;
  p.tau1 = 0.0;
  p.tau2 = tau2;
  return p;
}

}  // namespace

TEST(Cutoff, ValuesAndBounds) {
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.5, 1.5}, 2);
  const CutoffSpec c = cube_cutoff(prof, 0.25);  // inner half-width 0.25, outer 0.5
  const double inside[] = {0.1, -0.2};
  const double edge[] = {0.375, 0.0};
  const double outside[] = {0.6, 0.0};
  EXPECT_EQ(c(inside), 1.0);
  EXPECT_NEAR(c(edge), std::pow(0.5, 1.5), 1e-14);
  EXPECT_EQ(c(outside), 0.0);
  EXPECT_NEAR(c.derivative_bound(0), 4.0, 1e-12);
  const CutoffSpec flat = CutoffSpec::identity(prof);
  EXPECT_EQ(flat(outside), 1.0);
  EXPECT_EQ(flat.derivative_bound(1), 0.0);
}

TEST(Cutoff, RejectsBadCubes) {
  const ExponentProfile prof = derive_exponents(std::vector<double>{1.5, 1.5}, 2);
  const CubeSpec a = standard_cube(0.25, prof);
  EXPECT_THROW(CutoffSpec::between(a, a, prof), DomainError);
  EXPECT_THROW(CutoffSpec::between(a.scaled(2.0), a, prof), DomainError);
  const double shifted[] = {0.1, 0.0};
  EXPECT_THROW(CutoffSpec::between(a, standard_cube(0.5, prof, shifted), prof), DomainError);
}

TEST(Caccioppoli, LevelAboveSupIsTrivial) {
  const Trajectory traj = bump_run(32);
  const InequalityReport rep =
      caccioppoli_report(traj, cube_cutoff(traj.profile, 0.25), window(2.0, traj.final_time()));
  EXPECT_EQ(rep.theorem, TheoremId::Caccioppoli);
  EXPECT_EQ(rep.lhs, 0.0);
  EXPECT_EQ(rep.gamma_min, 0.0);
}

TEST(Caccioppoli, HoldsWithModestConstant) {
  const Trajectory traj = bump_run(32);
  for (double k : {0.0, 0.2, 0.5}) {
    const InequalityReport rep =
        caccioppoli_report(traj, cube_cutoff(traj.profile, 0.25), window(k, traj.final_time()));
    ASSERT_EQ(rep.status, ReportStatus::ok);
    EXPECT_GT(rep.lhs, 0.0);
    EXPECT_TRUE(std::isfinite(rep.gamma_min));
    EXPECT_LT(rep.gamma_min, 1.0);
    EXPECT_EQ(rep.rhs_terms.size(), 3u);
  }
}

TEST(Caccioppoli, FlatCutoffUsesWholeBox) {
  const Trajectory traj = bump_run(24);
  const InequalityReport rep =
      caccioppoli_report(traj, CutoffSpec::identity(traj.profile), window(0.3, traj.final_time()));
  ASSERT_EQ(rep.status, ReportStatus::ok);
  EXPECT_GT(rep.lhs, 0.0);
  EXPECT_EQ(rep.geometry, Geometry::standard);
  // zeta = 1 has no derivative; with C = 0 only the time term survives
  for (const auto& [name, v] : rep.rhs_terms) {
    if (name != "time_term") {
      EXPECT_EQ(v, 0.0) << name;
    }
  }
}

TEST(Caccioppoli, Misconfiguration) {
  const Trajectory traj = bump_run(24);
  EXPECT_THROW(caccioppoli_report(traj, cube_cutoff(traj.profile, 0.6), window(0.1, traj.final_time())),
               DomainError);
  EXPECT_THROW(caccioppoli_report(traj, cube_cutoff(traj.profile, 0.2), window(0.1, 2.0 * traj.final_time())),
               DomainError);
  EXPECT_THROW(caccioppoli_report(traj, cube_cutoff(traj.profile, 0.2), window(-1.0, traj.final_time())),
               DomainError);
  CaccioppoliParams narrow = window(0.1, traj.final_time());
  narrow.tau1 = narrow.tau2 * 0.999;
  EXPECT_THROW(caccioppoli_report(traj, cube_cutoff(traj.profile, 0.2), narrow), DomainError);
}
