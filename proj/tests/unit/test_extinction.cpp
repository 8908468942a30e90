#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "anisolab/errors.hpp"
#include "anisolab/extinction.hpp"
#include "test_support.hpp"

using namespace anisolab;
using anisolab::testing::linspace;
using anisolab::testing::make_grid;
using anisolab::testing::synthetic;

TEST(PowerLaw, ExactQuadratic) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {0.1, 0.2, 0.5, 1.0, 2.0}) pts.emplace_back(x, 3.0 * x * x);
  const PowerLawFit fit = fit_power_law(pts);
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(std::exp(fit.intercept), 3.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.n_points, 5u);
}

TEST(PowerLaw, ConstantHasZeroSlope) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {0.1, 0.3, 0.9, 2.7}) pts.emplace_back(x, 4.0);
  EXPECT_NEAR(fit_power_law(pts).slope, 0.0, 1e-14);
}

TEST(PowerLaw, PerturbedRecovery) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::vector<std::pair<double, double>> pts;
  for (double x : linspace(0.01, 1.0, 50)) pts.emplace_back(x, x * x * std::exp(noise(gen)));
  EXPECT_NEAR(fit_power_law(pts).slope, 2.0, 0.02);
}

TEST(PowerLaw, RejectsBadInput) {
  const std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 2.0}};
  EXPECT_THROW(fit_power_law(two), DomainError);
  const std::vector<std::pair<double, double>> neg = {{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}};
  EXPECT_THROW(fit_power_law(neg), DomainError);
}

TEST(Detection, InterpolatesInLogSup) {
  const auto g = make_grid({1.0}, {8});
  // sup u = exp(-10 t): crossing 1e-3 at t = ln(1000)/10
  const Trajectory traj = synthetic(g, {1.5}, linspace(0.0, 1.0, 11), [](std::span<const double>, double t) {
    return std::exp(-10.0 * t);
  });
  const auto t_star = detect_extinction(traj, 1e-3);
  ASSERT_TRUE(t_star);
  EXPECT_NEAR(*t_star, std::log(1000.0) / 10.0, 1e-12);
  EXPECT_FALSE(detect_extinction(traj, 1e-9));
}

TEST(Detection, ZeroDatum) {
  const auto g = make_grid({1.0}, {8});
  const Trajectory traj =
      synthetic(g, {1.5}, linspace(0.0, 1.0, 5), [](std::span<const double>, double) { return 0.0; });
  const DecayReport rep = decay_report(traj, 0.2);
  ASSERT_TRUE(rep.t_star);
  EXPECT_EQ(*rep.t_star, 0.0);
  EXPECT_FALSE(rep.mass_intrinsic.applicable());
}

TEST(Detection, NoCrossingIsNotApplicable) {
  const auto g = make_grid({1.0}, {8});
  const Trajectory traj =
      synthetic(g, {1.5}, linspace(0.0, 1.0, 5), [](std::span<const double>, double) { return 1.0; });
  const DecayReport rep = decay_report(traj, 0.2);
  EXPECT_FALSE(rep.t_star);
  EXPECT_FALSE(rep.sup_standard.applicable());
  EXPECT_NE(rep.sup_standard.reason.find("no extinction"), std::string::npos);
}

TEST(FaceGradient, DirichletBoundaryFace) {
  const auto g = make_grid({1.0}, {4});
  Field f{g, {0.0, 0.0, 0.0, 1.0}, 0.0};
  // boundary face with the odd ghost: |u - (-u)| / h
  EXPECT_NEAR(max_face_gradient(f), 2.0 / 0.5, 1e-14);
  const auto gp = make_grid({1.0}, {4}, Boundary::periodic);
  Field fp{gp, {0.0, 0.0, 0.0, 1.0}, 0.0};
  EXPECT_NEAR(max_face_gradient(fp), 1.0 / 0.5, 1e-14);
}

// u = (T - t)^2 cos(pi x / 2): every fitted quantity decays with slope 2 = 1/(2 - 1.5).
TEST(DecayReport, SyntheticSeparableLaw) {
  const auto g = make_grid({1.0}, {64});
  const double T = 1.0;
  const Trajectory traj = synthetic(g, {1.5}, linspace(0.0, 0.999, 400), [&](std::span<const double> x, double t) {
    return std::pow(T - t, 2.0) * std::cos(M_PI * x[0] / 2.0);
  });
  DecayOptions opt;
  opt.threshold = 1e-5;
  opt.gradient_floor = 0.0;
  const DecayReport rep = decay_report(traj, 0.2, opt);
  ASSERT_TRUE(rep.t_star);
  EXPECT_NEAR(rep.t_fit, T, 1e-4);
  for (const DecayFit* fit : {&rep.mass_intrinsic, &rep.sup_intrinsic, &rep.mass_standard, &rep.sup_standard}) {
    ASSERT_TRUE(fit->applicable()) << fit->reason;
    EXPECT_NEAR(fit->theoretical, 2.0, 1e-12);
    EXPECT_NEAR(fit->fit.slope, 2.0, 1e-3);
  }
  for (std::size_t k : rep.fit_indices) {
    EXPECT_LE(rep.samples[k].sup_standard, 0.2 + 1e-12);
  }
}

TEST(DecayReport, StandardSupNeedsPositiveAxisLambdas) {
  const auto g = make_grid({1.0, 1.0}, {16, 16});
  const Trajectory traj = synthetic(g, {1.2, 1.8}, linspace(0.0, 0.99, 100), [](std::span<const double> x, double t) {
    return (1.0 - t) * std::cos(M_PI * x[0] / 2.0) * std::cos(M_PI * x[1] / 2.0);
  });
  DecayOptions opt;
  opt.gradient_floor = 0.0;
  opt.threshold = 0.02;
  const DecayReport rep = decay_report(traj, 0.2, opt);
  EXPECT_FALSE(rep.sup_standard.applicable());
  EXPECT_NE(rep.sup_standard.reason.find("lambda_i"), std::string::npos);
  ASSERT_EQ(rep.standard_sup_exponents.size(), 2u);
  EXPECT_NEAR(rep.standard_mass_exponents[1], 1.0 / 0.2, 1e-12);
}

TEST(DecayReport, HeatModeNotApplicable) {
  const auto g = make_grid({1.0}, {16});
  const Trajectory traj = synthetic(g, {2.0}, linspace(0.0, 1.0, 30), [](std::span<const double> x, double t) {
    return std::exp(-20.0 * t) * std::cos(M_PI * x[0] / 2.0);
  });
  DecayOptions opt;
  opt.threshold = 1e-6;
  const DecayReport rep = decay_report(traj, 0.2, opt);
  EXPECT_FALSE(rep.mass_standard.applicable());
}
