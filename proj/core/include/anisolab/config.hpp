#pragma once

// Campaign configuration.
//
// Text format: '#' starts a comment, "[section]" opens a section, every other
// non-blank line is "key = value". Lists are comma separated. [check] and
// [extinction] may repeat; each occurrence adds one entry. A document whose
// first non-blank character is '{' is read as JSON with the same schema:
//
//   {"simulation": {...}, "analysis": {...}, "lemmas": {...}, "output": {...},
//    "check": [{...}, ...], "extinction": [{...}, ...]}

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/solver.hpp"

namespace anisolab {

enum class CheckKind { l1l1, l1linf, lr_sup, lr_backward, composite, caccioppoli };

std::string_view to_string(CheckKind k) noexcept;
CheckKind parse_check_kind(std::string_view text);

struct CheckSpec {
  CheckKind kind = CheckKind::l1l1;
  Geometry geometry = Geometry::intrinsic;
  double rho = 0.0;
  double t = 0.0;
  double r = 1.0;
  double C = 0.0;
  std::vector<double> center;  // empty = origin

  // Caccioppoli only. The cutoff runs from the family cube of radius rho
  // (at time t for the intrinsic kind) to its double, unless flat.
  bool flat_cutoff = false;
  double k_fraction = 0.5;  // k = k_fraction * sup u_0 unless k is given
  std::optional<double> k;
  double tau1 = 0.0;
  std::optional<double> tau2;  // default: t
  double C_o = 1.0;
  double C_1 = 1.0;
};

struct ExtinctionSpec {
  double rho = 0.0;
  std::optional<double> threshold;  // default: analysis.threshold, else 1e-6 sup u_0
  double floor_factor = 10.0;
  double ceiling_fraction = 0.2;
  double gradient_floor = 10.0;
  int min_points = 8;
  bool refine = true;
};

struct LemmaSpec {
  std::uint64_t seed = 1;
  int young_samples = 100000;
  int fast_draws = 1000;
  int fast_n_max = 200;
  int iteration_draws = 10000;
  int sobolev_fields = 100;
  int sobolev_resolution = 64;
};

struct CampaignConfig {
  SimConfig simulation;
  std::vector<CheckSpec> checks;
  std::vector<ExtinctionSpec> extinction;
  std::optional<double> threshold;  // analysis-wide extinction threshold
  LemmaSpec lemmas;
  std::optional<std::filesystem::path> output_dir;
};

// Throws ConfigError listing every violation found. Relative file paths are
// resolved against `base_dir`.
CampaignConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
CampaignConfig load_config(const std::filesystem::path& path);

}  // namespace anisolab
