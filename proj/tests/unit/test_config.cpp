#include <gtest/gtest.h>

#include <fstream>

#include "anisolab/config.hpp"
#include "anisolab/errors.hpp"
#include "test_support.hpp"

using namespace anisolab;
using anisolab::testing::TempDir;

namespace {

const char* kMinimal = R"(
[simulation]
p = 1.5
resolution = 16
t_end = 0.1
)";

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Config, MinimalDefaults) {
  const CampaignConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.simulation.p, std::vector<double>{1.5});
  EXPECT_EQ(c.simulation.resolution, std::vector<int>{16});
  EXPECT_EQ(c.simulation.half_domain, std::vector<double>{1.0});
  EXPECT_EQ(c.simulation.boundary, Boundary::dirichlet_zero);
  EXPECT_EQ(c.simulation.t_end, 0.1);
  EXPECT_FALSE(c.simulation.eps);
  EXPECT_TRUE(c.checks.empty());
  EXPECT_TRUE(c.extinction.empty());
  EXPECT_EQ(c.lemmas.seed, 1u);
}

TEST(Config, FullDocument) {
  const CampaignConfig c = parse_config(R"(
# comment
[simulation]
p = 1.4, 1.6
half_domain = 1.0
resolution = 32
boundary = periodic
initial = bump
amplitude = 2
radius = 0.4
eps = 0.001
safety = 0.4
t_end = 0.2
snapshot_count = 8

[analysis]
threshold = 1e-5

[check]
theorem = l1linf
geometry = standard
rho = 0.2
t = 0.1

[check]
theorem = caccioppoli
rho = 0.2
t = 0.1
cutoff = flat
k = 0.3

[extinction]
rho = 0.1
gradient_floor = 0

[lemmas]
seed = 42

[output]
dir = out
)");
  EXPECT_EQ(c.simulation.p, (std::vector<double>{1.4, 1.6}));
  EXPECT_EQ(c.simulation.half_domain, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(c.simulation.resolution, (std::vector<int>{32, 32}));
  EXPECT_EQ(c.simulation.boundary, Boundary::periodic);
  ASSERT_TRUE(std::holds_alternative<profiles::Bump>(c.simulation.initial));
  EXPECT_EQ(std::get<profiles::Bump>(c.simulation.initial).radius, 0.4);
  EXPECT_EQ(*c.simulation.eps, 0.001);
  EXPECT_EQ(*c.threshold, 1e-5);
  ASSERT_EQ(c.checks.size(), 2u);
  EXPECT_EQ(c.checks[0].kind, CheckKind::l1linf);
  EXPECT_EQ(c.checks[0].geometry, Geometry::standard);
  EXPECT_TRUE(c.checks[1].flat_cutoff);
  EXPECT_EQ(*c.checks[1].k, 0.3);
  ASSERT_EQ(c.extinction.size(), 1u);
  EXPECT_EQ(c.extinction[0].gradient_floor, 0.0);
  EXPECT_EQ(c.lemmas.seed, 42u);
  EXPECT_EQ(*c.output_dir, "out");
}

TEST(Config, ExponentOutOfRangeNamed) {
  const auto v = violations_of("[simulation]\np = 2.5\nresolution = 16\nt_end = 1\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("simulation.p"), std::string::npos);
  EXPECT_NE(v[0].find("exponent out of (1,2]"), std::string::npos);
}

TEST(Config, MissingFieldNamed) {
  const auto v = violations_of("[simulation]\np = 1.5\nresolution = 16\n");
  EXPECT_TRUE(mentions(v, "simulation.t_end: missing required field"));
}

TEST(Config, CollectsEveryViolation) {
  const auto v = violations_of(R"(
[simulation]
p = 1.5, 0.9
resolution = 2
t_end = -1
colour = red

[check]
theorem = l1l1
rho = -1
t = 0.5

[nonsense]
)");
  EXPECT_GE(v.size(), 5u);
  EXPECT_TRUE(mentions(v, "simulation.p"));
  EXPECT_TRUE(mentions(v, "simulation.resolution"));
  EXPECT_TRUE(mentions(v, "simulation.t_end"));
  EXPECT_TRUE(mentions(v, "unknown key 'colour'"));
  EXPECT_TRUE(mentions(v, "rho"));
  EXPECT_TRUE(mentions(v, "nonsense"));
}

TEST(Config, CheckSpecificRules) {
  EXPECT_TRUE(mentions(violations_of(std::string(kMinimal) + "[check]\ntheorem = lr_backward\nrho = 0.1\nt = 0.1\nr = 1\n"),
                       "r"));
  EXPECT_FALSE(violations_of(std::string(kMinimal) + "[check]\ntheorem = l1l1\nrho = 0.1\nt = 0.2\n").empty());
  EXPECT_FALSE(violations_of(std::string(kMinimal) + "[check]\ntheorem = l1l1\nrho = 0.1\nt = 0.1\nk = 1\n").empty());
  EXPECT_FALSE(violations_of(std::string(kMinimal) + "[check]\ntheorem = nope\nrho = 0.1\nt = 0.1\n").empty());
}

TEST(Config, JsonEquivalent) {
  const CampaignConfig text = parse_config(std::string(kMinimal) + "[check]\ntheorem = lr_sup\nrho = 0.2\nt = 0.1\nr = 2\n");
  const CampaignConfig json = parse_config(R"({
    "simulation": {"p": [1.5], "resolution": [16], "t_end": 0.1},
    "check": [{"theorem": "lr_sup", "rho": 0.2, "t": 0.1, "r": 2}]
  })");
  EXPECT_EQ(text.simulation.p, json.simulation.p);
  EXPECT_EQ(text.simulation.resolution, json.simulation.resolution);
  EXPECT_EQ(text.simulation.t_end, json.simulation.t_end);
  ASSERT_EQ(json.checks.size(), 1u);
  EXPECT_EQ(json.checks[0].kind, CheckKind::lr_sup);
  EXPECT_EQ(json.checks[0].r, 2.0);
  EXPECT_FALSE(violations_of(R"({"simulation": {"p": [3.0], "resolution": [16], "t_end": 0.1}})").empty());
}

TEST(Config, LoadResolvesRelativeFiles) {
  TempDir dir("cfg");
  {
    std::ofstream out(dir.path() / "run.cfg");
    out << "[simulation]\np = 1.5\nresolution = 8\nt_end = 0.1\ninitial = file\ninitial_file = u0.bin\n";
  }
  {
    std::ofstream bin(dir.path() / "u0.bin", std::ios::binary);
    const double zeros[8] = {};
    bin.write(reinterpret_cast<const char*>(zeros), sizeof zeros);
  }
  const CampaignConfig c = load_config(dir.path() / "run.cfg");
  ASSERT_TRUE(std::holds_alternative<profiles::FromFile>(c.simulation.initial));
  EXPECT_EQ(std::get<profiles::FromFile>(c.simulation.initial).path, dir.path() / "u0.bin");
  EXPECT_THROW(load_config(dir.path() / "absent.cfg"), Error);
}
