#pragma once

// Orchestration behind the command-line subcommands.
//
//   run      simulate and persist the trajectory
//   analyze  evaluate every configured check and extinction fit on a run
//   lemmas   randomized property campaigns for the auxiliary lemmas
//   report   merge CSV tables with identical headers

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "anisolab/config.hpp"
#include "anisolab/extinction.hpp"
#include "anisolab/harnack.hpp"
#include "anisolab/solver.hpp"

namespace anisolab {

InequalityReport evaluate_check(const Trajectory& traj, const CheckSpec& spec);
DecayReport evaluate_extinction(const Trajectory& traj, const ExtinctionSpec& spec,
                                std::optional<double> analysis_threshold = {});

struct AnalysisResult {
  std::vector<InequalityReport> checks;
  std::vector<DecayReport> extinction;
  std::vector<std::filesystem::path> files;
};

// Writes the trajectory to out_dir. `log` may be null.
Trajectory cmd_run(const CampaignConfig& cfg, const std::filesystem::path& out_dir, std::ostream* log = nullptr);

// Files: checks.csv (one row per check, config order), extinction.csv (one row
// per fitted quantity), decay_<i>.csv per extinction entry, summary.txt.
AnalysisResult cmd_analyze(const CampaignConfig& cfg, const std::filesystem::path& run_dir,
                           const std::filesystem::path& out_dir, std::ostream* log = nullptr);

struct LemmaOutcome {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;      // campaign-specific worst-case statistic
  double tolerance = 0.0;  // pass when failures == 0 (and worst within tolerance)
  bool passed = false;
  std::string detail;
};

std::vector<LemmaOutcome> run_lemma_campaign(const LemmaSpec& spec);

// Writes lemmas.csv.
std::vector<LemmaOutcome> cmd_lemmas(const LemmaSpec& spec, const std::filesystem::path& out_dir,
                                     std::ostream* log = nullptr);

// Concatenates CSV files (directories contribute their checks.csv) into
// out_dir/report.csv. Headers must agree.
std::filesystem::path cmd_report(const std::vector<std::filesystem::path>& inputs,
                                 const std::filesystem::path& out_dir, std::ostream* log = nullptr);

}  // namespace anisolab
