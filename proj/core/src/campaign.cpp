#include "anisolab/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "anisolab/errors.hpp"
#include "anisolab/lemmas.hpp"
#include "anisolab/report_io.hpp"
#include "anisolab/snapshot_io.hpp"

namespace anisolab {

InequalityReport evaluate_check(const Trajectory& traj, const CheckSpec& spec) {
  if (spec.kind == CheckKind::caccioppoli) {
    const ExponentProfile& prof = traj.profile;
    CutoffSpec cutoff = CutoffSpec::identity(prof);
    if (!spec.flat_cutoff) {
      const CubeSpec inner = family_cube(spec.geometry, spec.rho, spec.t, prof, 1.0, spec.center);
      cutoff = CutoffSpec::between(inner, inner.scaled(2.0), prof);
    }
    CaccioppoliParams params;
    params.k = spec.k.value_or(spec.k_fraction * traj.snapshots.front().sup());
    params.tau1 = spec.tau1;
    params.tau2 = spec.tau2.value_or(spec.t);
    params.C = spec.C;
    params.C_o = spec.C_o;
    params.C_1 = spec.C_1;
    return caccioppoli_report(traj, cutoff, params);
  }
  CheckParams p;
  p.rho = spec.rho;
  p.t = spec.t;
  p.geometry = spec.geometry;
  p.C = spec.C;
  p.r = spec.r;
  p.center = spec.center;
  switch (spec.kind) {
    case CheckKind::l1l1: return check_l1l1(traj, p);
    case CheckKind::l1linf: return check_l1linf(traj, p);
    case CheckKind::lr_sup: return check_lr_sup(traj, p);
    case CheckKind::lr_backward: return check_lr_backward(traj, p);
    case CheckKind::composite: return check_backwards_composite(traj, p);
    case CheckKind::caccioppoli: break;
  }
  throw DomainError("unhandled check kind");
}

DecayReport evaluate_extinction(const Trajectory& traj, const ExtinctionSpec& spec,
                                std::optional<double> analysis_threshold) {
  DecayOptions opt;
  opt.threshold = spec.threshold ? spec.threshold : analysis_threshold;
  opt.floor_factor = spec.floor_factor;
  opt.ceiling_fraction = spec.ceiling_fraction;
  opt.gradient_floor = spec.gradient_floor;
  opt.min_points = static_cast<std::size_t>(spec.min_points);
  opt.refine_extinction_time = spec.refine;
  return decay_report(traj, spec.rho, opt);
}

Trajectory cmd_run(const CampaignConfig& cfg, const std::filesystem::path& out_dir, std::ostream* log) {
  SimConfig sim = cfg.simulation;
  if (log) {
    sim.on_snapshot = [log](const Field& f, std::size_t steps) {
      *log << "snapshot t=" << format_number(f.time) << " steps=" << steps << " sup=" << format_number(f.sup())
           << "\n";
    };
  }
  Trajectory traj = run(sim);
  write_trajectory(traj, out_dir);
  if (log) *log << "wrote " << traj.snapshots.size() << " snapshots to " << out_dir.string() << "\n";
  return traj;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << text;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string summary_text(const CampaignConfig& cfg, const AnalysisResult& res) {
  std::string out = "checks\n";
  out += pad("index", 7) + pad("theorem", 32) + pad("status", 16) + pad("rho", 12) + pad("t", 12) +
         "gamma_min\n";
  for (std::size_t i = 0; i < res.checks.size(); ++i) {
    const InequalityReport& r = res.checks[i];
    out += pad(std::to_string(i), 7) + pad(std::string(to_string(r.theorem)), 32) +
           pad(std::string(to_string(r.status)), 16) + pad(short_number(cfg.checks[i].rho), 12) +
           pad(short_number(cfg.checks[i].t), 12) + short_number(r.gamma_min) + "\n";
  }
  out += "\nextinction fits\n";
  out += pad("index", 7) + pad("rho", 10) + pad("quantity", 18) + pad("slope", 12) + pad("theory", 12) +
         "status\n";
  for (std::size_t i = 0; i < res.extinction.size(); ++i) {
    const DecayReport& d = res.extinction[i];
    const std::pair<const char*, const DecayFit*> fits[] = {{"mass_intrinsic", &d.mass_intrinsic},
                                                            {"sup_intrinsic", &d.sup_intrinsic},
                                                            {"mass_standard", &d.mass_standard},
                                                            {"sup_standard", &d.sup_standard}};
    for (const auto& [name, f] : fits) {
      out += pad(std::to_string(i), 7) + pad(short_number(d.rho), 10) + pad(name, 18) +
             pad(f->applicable() ? short_number(f->fit.slope) : "-", 12) + pad(short_number(f->theoretical), 12) +
             (f->applicable() ? "ok" : "not_applicable: " + f->reason) + "\n";
    }
  }
  return out;
}

}  // namespace

AnalysisResult cmd_analyze(const CampaignConfig& cfg, const std::filesystem::path& run_dir,
                           const std::filesystem::path& out_dir, std::ostream* log) {
  const Trajectory traj = read_trajectory(run_dir);
  std::filesystem::create_directories(out_dir);
  AnalysisResult res;

  CsvTable checks;
  checks.header = check_header();
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    InequalityReport rep = evaluate_check(traj, cfg.checks[i]);
    if (log) {
      *log << "check " << i << " " << to_string(rep.theorem) << " gamma_min=" << format_number(rep.gamma_min)
           << "\n";
    }
    checks.rows.push_back(check_row(i, cfg.checks[i], rep, traj));
    res.checks.push_back(std::move(rep));
  }
  res.files.push_back(out_dir / "checks.csv");
  write_csv(res.files.back(), checks);

  CsvTable fits;
  fits.header = fit_header();
  for (std::size_t i = 0; i < cfg.extinction.size(); ++i) {
    DecayReport rep = evaluate_extinction(traj, cfg.extinction[i], cfg.threshold);
    for (auto& row : fit_rows(i, cfg.extinction[i], rep, traj)) fits.rows.push_back(std::move(row));
    const auto path = out_dir / ("decay_" + std::to_string(i) + ".csv");
    write_csv(path, decay_table(rep));
    res.files.push_back(path);
    if (log) *log << "extinction " << i << " t_star=" << format_number(rep.t_star.value_or(NAN)) << "\n";
    res.extinction.push_back(std::move(rep));
  }
  res.files.push_back(out_dir / "extinction.csv");
  write_csv(res.files.back(), fits);

  res.files.push_back(out_dir / "summary.txt");
  write_text(res.files.back(), summary_text(cfg, res));
  return res;
}

// ---------------------------------------------------------------------------
// Lemma campaigns

namespace {

using Engine = std::mt19937_64;

double uniform(Engine& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }

double log_uniform(Engine& g, double a, double b) {
  return std::exp(uniform(g, std::log(a), std::log(b)));
}

LemmaOutcome young_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "young_inequality";
  o.samples = static_cast<std::size_t>(spec.young_samples);
  o.tolerance = 1e-12;
  o.worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double eps = log_uniform(g, 1e-2, 1e2);
    const double q = uniform(g, 1.05, 5.0);
    const double a = uniform(g, 0.0, 10.0);
    const double b = uniform(g, 0.0, 10.0);
    if (a == 0.0 || b == 0.0) continue;
    // Relative to the product so the tolerance is scale-free.
    const double rel = young_slack(a, b, eps, q) / (a * b);
    o.worst = std::min(o.worst, rel);
    if (rel < -o.tolerance) ++o.failures;
  }
  o.passed = o.failures == 0;
  o.detail = "min relative slack (eps a^q + gamma b^q' - ab)/ab";
  return o;
}

LemmaOutcome young_optimal_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "young_optimal_coupling";
  o.samples = static_cast<std::size_t>(std::max(1, spec.young_samples / 100));
  o.tolerance = 1e-9;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double eps = log_uniform(g, 1e-1, 1e1);
    const double q = uniform(g, 1.1, 4.0);
    const double b = uniform(g, 0.1, 10.0);
    const double a_star = std::pow(b / (eps * q), 1.0 / (q - 1.0));
    const double rel = std::abs(young_slack(a_star, b, eps, q)) / (a_star * b);
    o.worst = std::max(o.worst, rel);
    if (rel > o.tolerance) ++o.failures;
  }
  o.passed = o.failures == 0;
  o.detail = "max |slack|/ab at the optimal a for fixed b";
  return o;
}

LemmaOutcome fast_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "fast_geometric_convergence";
  o.samples = static_cast<std::size_t>(spec.fast_draws);
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double C = uniform(g, 0.5, 10.0);
    const double b = uniform(g, 1.5, 8.0);
    const double alpha = uniform(g, 0.25, 2.0);
    const double bound = std::pow(C, -1.0 / alpha) * std::pow(b, -1.0 / (alpha * alpha));
    const SequenceLemmaResult r = fast_convergence(C, b, alpha, 0.99 * bound, spec.fast_n_max);
    if (!r.converged) ++o.failures;
    o.worst = std::max(o.worst, r.values.back() / r.values.front());
  }
  o.passed = o.failures == 0;
  o.detail = "Y0 = 0.99 C^{-1/alpha} b^{-1/alpha^2}; worst = max Y_last/Y_0";
  return o;
}

LemmaOutcome iteration_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "iteration_bound";
  o.samples = static_cast<std::size_t>(spec.iteration_draws);
  o.tolerance = 1e-12;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double b = uniform(g, 1.1, 4.0);
    const double eps = uniform(g, 0.05, 0.99) / b;
    const double I = uniform(g, 1.01, 10.0);
    const int L = std::uniform_int_distribution<int>(1, 60)(g);
    const double M = I * std::pow(b, L) * uniform(g, 0.5, 2.0);
    // Backward construction: Y_n <= eps Y_{n+1} + I b^n, Y_n <= M, Y_n = 0 for n > L.
    double y = uniform(g, 0.0, std::min(M, I * std::pow(b, L)));
    for (int n = L - 1; n >= 0; --n) y = uniform(g, 0.0, std::min(M, eps * y + I * std::pow(b, n)));
    const double bound = *iteration_bound(eps, b, I, M);
    const double rel = y / bound - 1.0;
    o.worst = s == 0 ? rel : std::max(o.worst, rel);
    if (rel > o.tolerance) ++o.failures;
  }
  o.passed = o.failures == 0;
  o.detail = "max Y_0 / (I/(1-eps b)) - 1";
  return o;
}

Field random_bumps(std::shared_ptr<const Grid> grid, Engine& g, int count) {
  struct B {
    double a, r;
    std::vector<double> c;
  };
  std::vector<B> bumps;
  const int N = grid->dimension();
  for (int k = 0; k < count; ++k) {
    B b{uniform(g, 0.2, 2.0), uniform(g, 0.15, 0.4), {}};
    for (int i = 0; i < N; ++i) b.c.push_back(uniform(g, -0.45, 0.45) * grid->half_domain()[i]);
    bumps.push_back(std::move(b));
  }
  Field f{grid, std::vector<double>(grid->cell_count(), 0.0), 0.0};
  std::vector<double> x(static_cast<std::size_t>(N));
  for (std::size_t c = 0; c < grid->cell_count(); ++c) {
    grid->cell_center(c, x);
    double v = 0.0;
    for (const B& b : bumps) {
      double d2 = 0.0;
      for (int i = 0; i < N; ++i) d2 += (x[i] - b.c[i]) * (x[i] - b.c[i]);
      const double s = d2 / (b.r * b.r);
      if (s < 1.0) v += b.a * std::exp(1.0 - 1.0 / (1.0 - s));
    }
    f.values[c] = v;
  }
  return f;
}

LemmaOutcome sobolev_homogeneity_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "sobolev_homogeneity";
  o.samples = static_cast<std::size_t>(std::max(1, spec.sobolev_fields / 4));
  o.tolerance = 1e-12;
  const int n = spec.sobolev_resolution;
  const double L[] = {1.0, 1.0};
  const int res[] = {n, n};
  auto grid = std::make_shared<const Grid>(build_grid(L, res, Boundary::dirichlet_zero));
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double praw[] = {uniform(g, 1.05, 1.95), uniform(g, 1.05, 1.95)};
    const ExponentProfile prof = derive_exponents(praw, 2);
    const double p_star = 2.0 * prof.p_bar / (2.0 - prof.p_bar);
    const double theta = uniform(g, 0.0, prof.p_bar / p_star);
    const double sigma = uniform(g, 1.0, p_star);
    const double c = log_uniform(g, 1e-2, 1e2);
    Field f = random_bumps(grid, g, 1 + static_cast<int>(s % 3));
    const double r1 = sobolev_ratio(f, prof, theta, sigma, 1.0).ratio;
    for (double& v : f.values) v *= c;
    const double r2 = sobolev_ratio(f, prof, theta, sigma, 1.0).ratio;
    const double rel = std::abs(r2 / r1 - 1.0);
    o.worst = std::max(o.worst, rel);
    if (!(rel <= o.tolerance)) ++o.failures;
  }
  o.passed = o.failures == 0;
  o.detail = "max |ratio(c phi)/ratio(phi) - 1|";
  return o;
}

LemmaOutcome sobolev_refinement_campaign(const LemmaSpec& spec, Engine& g) {
  LemmaOutcome o;
  o.name = "sobolev_refinement";
  o.samples = static_cast<std::size_t>(spec.sobolev_fields);
  o.tolerance = 0.2;
  const double praw[] = {1.2, 1.8};
  const ExponentProfile prof = derive_exponents(praw, 2);
  const double p_star = 2.0 * prof.p_bar / (2.0 - prof.p_bar);
  const double theta = prof.p_bar / p_star;
  const double sigma = 2.0;
  const double L[] = {1.0, 1.0};
  const int n = spec.sobolev_resolution;
  const int coarse_res[] = {n, n};
  const int fine_res[] = {2 * n, 2 * n};
  auto coarse = std::make_shared<const Grid>(build_grid(L, coarse_res, Boundary::dirichlet_zero));
  auto fine = std::make_shared<const Grid>(build_grid(L, fine_res, Boundary::dirichlet_zero));
  double max_coarse = 0.0, max_fine = 0.0;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const std::uint64_t sub = g();
    Engine g1(sub), g2(sub);
    const int count = 1 + static_cast<int>(s % 3);
    max_coarse = std::max(max_coarse, sobolev_ratio(random_bumps(coarse, g1, count), prof, theta, sigma, 1.0).ratio);
    max_fine = std::max(max_fine, sobolev_ratio(random_bumps(fine, g2, count), prof, theta, sigma, 1.0).ratio);
  }
  o.worst = std::abs(max_fine / max_coarse - 1.0);
  o.passed = std::isfinite(max_coarse) && std::isfinite(max_fine) && o.worst <= o.tolerance;
  o.failures = o.passed ? 0 : 1;
  o.detail = "max ratio " + format_number(max_coarse) + " at " + std::to_string(n) + "^2, " +
             format_number(max_fine) + " at " + std::to_string(2 * n) + "^2";
  return o;
}

}  // namespace

std::vector<LemmaOutcome> run_lemma_campaign(const LemmaSpec& spec) {
  // One engine per campaign so that changing one sample count leaves the others unchanged.
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)};
  std::vector<std::uint64_t> seeds(6);
  {
    std::vector<std::uint32_t> raw(12);
    seq.generate(raw.begin(), raw.end());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      seeds[i] = (static_cast<std::uint64_t>(raw[2 * i]) << 32) | raw[2 * i + 1];
    }
  }
  std::vector<LemmaOutcome> out;
  Engine e0(seeds[0]), e1(seeds[1]), e2(seeds[2]), e3(seeds[3]), e4(seeds[4]), e5(seeds[5]);
  out.push_back(young_campaign(spec, e0));
  out.push_back(young_optimal_campaign(spec, e1));
  out.push_back(fast_campaign(spec, e2));
  out.push_back(iteration_campaign(spec, e3));
  out.push_back(sobolev_homogeneity_campaign(spec, e4));
  out.push_back(sobolev_refinement_campaign(spec, e5));
  return out;
}

std::vector<LemmaOutcome> cmd_lemmas(const LemmaSpec& spec, const std::filesystem::path& out_dir,
                                     std::ostream* log) {
  std::vector<LemmaOutcome> res = run_lemma_campaign(spec);
  std::filesystem::create_directories(out_dir);
  CsvTable t;
  t.header = {"lemma", "seed", "samples", "failures", "worst", "tolerance", "passed", "detail"};
  for (const LemmaOutcome& o : res) {
    t.rows.push_back({o.name, std::to_string(spec.seed), std::to_string(o.samples), std::to_string(o.failures),
                      format_number(o.worst), format_number(o.tolerance), o.passed ? "true" : "false", o.detail});
    if (log) *log << o.name << ": " << (o.passed ? "pass" : "FAIL") << " worst=" << format_number(o.worst) << "\n";
  }
  write_csv(out_dir / "lemmas.csv", t);
  return res;
}

std::filesystem::path cmd_report(const std::vector<std::filesystem::path>& inputs,
                                 const std::filesystem::path& out_dir, std::ostream* log) {
  if (inputs.empty()) throw ConfigError("report needs at least one input CSV or analysis directory");
  CsvTable merged;
  bool first = true;
  for (const auto& in : inputs) {
    const auto path = std::filesystem::is_directory(in) ? in / "checks.csv" : in;
    CsvTable t = read_csv(path);
    if (first) {
      merged.header = t.header;
      first = false;
    } else if (t.header != merged.header) {
      throw IngestionError("header of " + path.string() + " differs from " + inputs.front().string());
    }
    if (log) *log << "merged " << t.rows.size() << " rows from " << path.string() << "\n";
    for (auto& row : t.rows) merged.rows.push_back(std::move(row));
  }
  std::filesystem::create_directories(out_dir);
  const auto out = out_dir / "report.csv";
  write_csv(out, merged);
  return out;
}

}  // namespace anisolab
