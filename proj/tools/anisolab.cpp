#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "anisolab/campaign.hpp"
#include "anisolab/config.hpp"
#include "anisolab/errors.hpp"

namespace fs = std::filesystem;

namespace {

fs::path resolve_out(const std::optional<std::string>& flag, const anisolab::CampaignConfig* cfg) {
  if (flag) return *flag;
  if (cfg && cfg->output_dir) return *cfg->output_dir;
  return "anisolab_out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisolab: anisotropic fast-diffusion laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::int64_t> seed;
  bool verbose = false;
  app.add_option("--config", config_path, "Campaign configuration file (key-value or JSON)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed for randomized lemma campaigns");
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

  auto* run = app.add_subcommand("run", "Simulate and write trajectory snapshots plus manifest");
  auto* analyze = app.add_subcommand("analyze", "Evaluate checks and extinction fits on a run directory");
  std::optional<std::string> run_dir;
  analyze->add_option("--run", run_dir, "Run directory (default: the output directory)");
  auto* lemmas = app.add_subcommand("lemmas", "Randomized lemma property campaigns");
  auto* report = app.add_subcommand("report", "Merge CSV tables with identical headers");
  std::vector<std::string> inputs;
  report->add_option("inputs", inputs, "CSV files or analysis directories")->required();

  for (auto* sub : {run, analyze, lemmas, report}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  std::ostream* log = verbose ? &std::cerr : nullptr;

  try {
    if (run->parsed() || analyze->parsed()) {
      if (config_path.empty()) throw anisolab::ConfigError("--config is required");
      const anisolab::CampaignConfig cfg = anisolab::load_config(config_path);
      const fs::path out = resolve_out(out_dir, &cfg);
      if (run->parsed()) {
        anisolab::cmd_run(cfg, out, log);
        std::cout << out.string() << "\n";
      } else {
        const auto res = anisolab::cmd_analyze(cfg, run_dir ? fs::path(*run_dir) : out, out, log);
        for (const auto& f : res.files) std::cout << f.string() << "\n";
      }
    } else if (lemmas->parsed()) {
      std::optional<anisolab::CampaignConfig> cfg;
      if (!config_path.empty()) cfg = anisolab::load_config(config_path);
      anisolab::LemmaSpec spec = cfg ? cfg->lemmas : anisolab::LemmaSpec{};
      if (seed) {
        if (*seed < 0) throw anisolab::ConfigError("--seed must be >= 0");
        spec.seed = static_cast<std::uint64_t>(*seed);
      }
      const fs::path out = resolve_out(out_dir, cfg ? &*cfg : nullptr);
      const auto res = anisolab::cmd_lemmas(spec, out, log);
      bool all = true;
      for (const auto& o : res) all = all && o.passed;
      std::cout << (out / "lemmas.csv").string() << "\n";
      return all ? 0 : 1;
    } else if (report->parsed()) {
      std::vector<fs::path> paths(inputs.begin(), inputs.end());
      std::cout << anisolab::cmd_report(paths, resolve_out(out_dir, nullptr), log).string() << "\n";
    }
  } catch (const anisolab::ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return 2;
  } catch (const anisolab::BlowupError& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
