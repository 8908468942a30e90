#include "anisolab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "anisolab/errors.hpp"

namespace anisolab {

std::string_view to_string(CheckKind k) noexcept {
  switch (k) {
    case CheckKind::l1l1: return "l1l1";
    case CheckKind::l1linf: return "l1linf";
    case CheckKind::lr_sup: return "lr_sup";
    case CheckKind::lr_backward: return "lr_backward";
    case CheckKind::composite: return "composite";
    case CheckKind::caccioppoli: return "caccioppoli";
  }
  return "?";
}

CheckKind parse_check_kind(std::string_view text) {
  for (CheckKind k : {CheckKind::l1l1, CheckKind::l1linf, CheckKind::lr_sup, CheckKind::lr_backward,
                      CheckKind::composite, CheckKind::caccioppoli}) {
    if (text == to_string(k)) return k;
  }
  throw ConfigError("unknown theorem '" + std::string(text) +
                    "' (expected l1l1|l1linf|lr_sup|lr_backward|composite|caccioppoli)");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
};

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::set<std::string> kRepeatable = {"check", "extinction"};
const std::map<std::string, std::set<std::string>> kKeys = {
    {"simulation",
     {"p", "half_domain", "resolution", "boundary", "initial", "amplitude", "radius", "initial_file",
      "eps", "safety", "t_end", "snapshot_count", "snapshot_times"}},
    {"analysis", {"threshold"}},
    {"check",
     {"theorem", "geometry", "rho", "t", "r", "C", "center", "cutoff", "k", "k_fraction", "tau1",
      "tau2", "C_o", "C_1"}},
    {"extinction", {"rho", "threshold", "floor_factor", "ceiling_fraction", "gradient_floor", "min_points", "refine"}},
    {"lemmas",
     {"seed", "young_samples", "fast_draws", "fast_n_max", "iteration_draws", "sobolev_fields",
      "sobolev_resolution"}},
    {"output", {"dir"}},
};

std::vector<Section> parse_text(std::string_view text, std::vector<std::string>& problems) {
  std::vector<Section> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(where + ": malformed section header");
        continue;
      }
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where + ": expected 'key = value'");
      continue;
    }
    if (sections.empty()) {
      problems.push_back(where + ": key outside of any section");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    auto& entries = sections.back().entries;
    if (entries.count(key)) {
      problems.push_back(where + ": duplicate key '" + key + "'");
      continue;
    }
    entries[key] = {value, line_no};
  }
  return sections;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ConfigError("unsupported JSON value " + v.dump());
}

std::vector<Section> parse_json(std::string_view text, std::vector<std::string>& problems) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("JSON config must be an object");
  std::vector<Section> sections;
  auto add = [&](const std::string& name, const nlohmann::json& obj) {
    if (!obj.is_object()) {
      problems.push_back(name + ": expected an object");
      return;
    }
    Section s{name, 0, {}};
    for (const auto& [key, val] : obj.items()) {
      try {
        if (val.is_array()) {
          std::string joined;
          for (const auto& item : val) {
            if (!joined.empty()) joined += ",";
            joined += json_scalar(item);
          }
          s.entries[key] = {joined, 0};
        } else {
          s.entries[key] = {json_scalar(val), 0};
        }
      } catch (const ConfigError& e) {
        problems.push_back(name + "." + key + ": " + e.what());
      }
    }
    sections.push_back(std::move(s));
  };
  for (const auto& [name, val] : doc.items()) {
    if (kRepeatable.count(name) && val.is_array()) {
      for (const auto& item : val) add(name, item);
    } else {
      add(name, val);
    }
  }
  return sections;
}

// Typed access to one section, recording problems instead of throwing.
class Reader {
 public:
  Reader(const Section& s, std::vector<std::string>& problems) : s_(s), problems_(problems) {}

  bool has(const std::string& key) const { return s_.entries.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) const {
    auto it = s_.entries.find(key);
    if (it == s_.entries.end()) return std::nullopt;
    return it->second.value;
  }

  std::optional<double> number(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    auto parsed = to_double(*v);
    if (!parsed) fail(key, "not a number: '" + *v + "'");
    return parsed;
  }

  std::optional<long long> integer(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      fail(key, "not an integer: '" + *v + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<bool> boolean(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    fail(key, "not a boolean: '" + *v + "'");
    return std::nullopt;
  }

  std::optional<std::vector<double>> numbers(const std::string& key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    std::vector<double> out;
    std::string_view rest = *v;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      auto parsed = to_double(item);
      if (!parsed) {
        fail(key, "not a number list: '" + *v + "'");
        return std::nullopt;
      }
      out.push_back(*parsed);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  void fail(const std::string& key, const std::string& message) const {
    problems_.push_back(label(key) + ": " + message);
  }

  std::string label(const std::string& key) const {
    std::string out = s_.name + "." + key;
    auto it = s_.entries.find(key);
    if (it != s_.entries.end() && it->second.line > 0) out += " (line " + std::to_string(it->second.line) + ")";
    return out;
  }

 private:
  static std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out)) return std::nullopt;
    return out;
  }

  const Section& s_;
  std::vector<std::string>& problems_;
};

std::vector<double> broadcast(std::vector<double> v, std::size_t n) {
  if (v.size() == 1 && n > 1) v.assign(n, v.front());
  return v;
}

void read_simulation(const Section& s, CampaignConfig& cfg, const std::filesystem::path& base,
                     std::vector<std::string>& problems) {
  Reader r(s, problems);
  SimConfig& sim = cfg.simulation;
  std::size_t N = 0;
  if (auto p = r.numbers("p")) {
    sim.p = *p;
    N = p->size();
    for (double v : *p) {
      if (!(v > 1.0 && v <= 2.0)) {
        r.fail("p", "exponent out of (1,2]: " + std::to_string(v));
        break;
      }
    }
  } else if (!r.has("p")) {
    problems.push_back("simulation.p: missing required field");
  }
  if (auto L = r.numbers("half_domain")) {
    sim.half_domain = broadcast(*L, N);
    for (double v : sim.half_domain) {
      if (!(v > 0.0)) {
        r.fail("half_domain", "extent must be > 0");
        break;
      }
    }
  } else if (!r.has("half_domain")) {
    sim.half_domain.assign(N, 1.0);
  }
  if (auto res = r.numbers("resolution")) {
    sim.resolution.clear();
    for (double v : broadcast(*res, N)) {
      if (v != std::floor(v) || v < 4.0 || v > 1e8) {
        r.fail("resolution", "cells per axis must be an integer >= 4");
        sim.resolution.clear();
        break;
      }
      sim.resolution.push_back(static_cast<int>(v));
    }
  } else if (!r.has("resolution")) {
    problems.push_back("simulation.resolution: missing required field");
  }
  if (N && !sim.half_domain.empty() && sim.half_domain.size() != N) {
    r.fail("half_domain", "expected " + std::to_string(N) + " entries (one per exponent)");
  }
  if (N && !sim.resolution.empty() && sim.resolution.size() != N) {
    r.fail("resolution", "expected " + std::to_string(N) + " entries (one per exponent)");
  }
  if (auto b = r.text("boundary")) {
    try {
      sim.boundary = parse_boundary(*b);
    } catch (const ConfigError& e) {
      r.fail("boundary", e.what());
    }
  }
  const double amplitude = r.number("amplitude").value_or(1.0);
  const double radius = r.number("radius").value_or(0.25);
  if (!(amplitude >= 0.0)) r.fail("amplitude", "must be >= 0");
  if (!(radius > 0.0)) r.fail("radius", "must be > 0");
  const std::string initial = r.text("initial").value_or("sine");
  if (initial == "sine") {
    sim.initial = profiles::SineProduct{amplitude};
  } else if (initial == "bump") {
    sim.initial = profiles::Bump{amplitude, radius};
  } else if (initial == "plateau") {
    sim.initial = profiles::Plateau{amplitude, radius};
  } else if (initial == "file") {
    if (auto path = r.text("initial_file")) {
      std::filesystem::path full = *path;
      if (full.is_relative() && !base.empty()) full = base / full;
      if (!std::filesystem::exists(full)) r.fail("initial_file", "file not found: " + full.string());
      sim.initial = profiles::FromFile{full};
    } else {
      problems.push_back("simulation.initial_file: required when initial = file");
    }
  } else {
    r.fail("initial", "unknown profile '" + initial + "' (expected sine|bump|plateau|file)");
  }
  if (auto eps = r.number("eps")) {
    if (!(*eps > 0.0)) r.fail("eps", "must be > 0");
    sim.eps = *eps;
  }
  if (auto v = r.number("safety")) {
    if (!(*v > 0.0 && *v <= 1.0)) r.fail("safety", "must lie in (0,1]");
    sim.safety = *v;
  }
  if (auto v = r.number("t_end")) {
    if (!(*v >= 0.0)) r.fail("t_end", "must be >= 0");
    sim.t_end = *v;
  } else if (!r.has("t_end")) {
    problems.push_back("simulation.t_end: missing required field");
  }
  if (auto v = r.integer("snapshot_count")) {
    if (*v < 1) r.fail("snapshot_count", "must be >= 1");
    sim.snapshot_count = static_cast<int>(*v);
  }
  if (auto v = r.numbers("snapshot_times")) {
    sim.snapshot_times = *v;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const double t = (*v)[i];
      if (!(t > 0.0) || t > sim.t_end || (i > 0 && !(t > (*v)[i - 1]))) {
        r.fail("snapshot_times", "must be strictly increasing within (0, t_end]");
        break;
      }
    }
  }
}

void read_check(const Section& s, CampaignConfig& cfg, std::vector<std::string>& problems) {
  Reader r(s, problems);
  CheckSpec c;
  if (auto th = r.text("theorem")) {
    try {
      c.kind = parse_check_kind(*th);
    } catch (const ConfigError& e) {
      r.fail("theorem", e.what());
    }
  } else {
    problems.push_back("check #" + std::to_string(cfg.checks.size() + 1) + ": missing theorem");
  }
  if (auto g = r.text("geometry")) {
    try {
      c.geometry = parse_geometry(*g);
    } catch (const DomainError& e) {
      r.fail("geometry", e.what());
    }
  }
  const double t_end = cfg.simulation.t_end;
  if (auto v = r.number("rho")) c.rho = *v;
  if (auto v = r.number("t")) c.t = *v;
  if (auto v = r.number("r")) c.r = *v;
  if (auto v = r.number("C")) c.C = *v;
  if (auto v = r.numbers("center")) c.center = *v;
  if (!(c.C >= 0.0)) r.fail("C", "must be >= 0");
  if (!c.center.empty() && c.center.size() != cfg.simulation.p.size()) {
    r.fail("center", "expected one coordinate per axis");
  }
  const bool flat = r.text("cutoff").value_or("cube") == "flat";
  if (auto cut = r.text("cutoff"); cut && *cut != "flat" && *cut != "cube") {
    r.fail("cutoff", "expected cube|flat");
  }
  if (!flat || c.kind != CheckKind::caccioppoli) {
    if (!(c.rho > 0.0)) r.fail("rho", r.has("rho") ? "must be > 0" : "missing required field");
  }
  if (c.kind == CheckKind::caccioppoli) {
    c.flat_cutoff = flat;
    if (auto v = r.number("k")) c.k = *v;
    if (auto v = r.number("k_fraction")) c.k_fraction = *v;
    if (auto v = r.number("tau1")) c.tau1 = *v;
    if (auto v = r.number("tau2")) c.tau2 = *v;
    if (auto v = r.number("C_o")) c.C_o = *v;
    if (auto v = r.number("C_1")) c.C_1 = *v;
    if (c.k && !(*c.k >= 0.0)) r.fail("k", "must be >= 0");
    if (!(c.k_fraction >= 0.0)) r.fail("k_fraction", "must be >= 0");
    const double tau2 = c.tau2.value_or(c.t);
    if (!(tau2 > c.tau1) || c.tau1 < 0.0 || tau2 > t_end) {
      r.fail("tau2", "energy window needs 0 <= tau1 < tau2 <= t_end");
    }
    if (!(c.C_o > 0.0)) r.fail("C_o", "must be > 0");
    if (!(c.C_1 >= 0.0)) r.fail("C_1", "must be >= 0");
    if (c.geometry == Geometry::intrinsic && !flat && !(c.t > 0.0)) {
      r.fail("t", "intrinsic cutoff cube needs t > 0");
    }
  } else {
    if (!(c.t > 0.0 && c.t <= t_end)) r.fail("t", "must lie in (0, t_end]");
    if (!(c.r >= 1.0)) r.fail("r", "must be >= 1");
    if (c.kind == CheckKind::lr_backward && !(c.r > 1.0)) r.fail("r", "backward Lr estimate needs r > 1");
  }
  for (const auto& [key, e] : s.entries) {
    static const std::set<std::string> cacc_only = {"cutoff", "k", "k_fraction", "tau1", "tau2", "C_o", "C_1"};
    if (c.kind != CheckKind::caccioppoli && cacc_only.count(key)) {
      r.fail(key, "only valid for theorem = caccioppoli");
    }
  }
  cfg.checks.push_back(std::move(c));
}

void read_extinction(const Section& s, CampaignConfig& cfg, std::vector<std::string>& problems) {
  Reader r(s, problems);
  ExtinctionSpec e;
  if (auto v = r.number("rho")) e.rho = *v;
  if (!(e.rho > 0.0)) r.fail("rho", r.has("rho") ? "must be > 0" : "missing required field");
  if (auto v = r.number("threshold")) {
    if (!(*v > 0.0)) r.fail("threshold", "must be > 0");
    e.threshold = *v;
  }
  if (auto v = r.number("floor_factor")) e.floor_factor = *v;
  if (auto v = r.number("ceiling_fraction")) e.ceiling_fraction = *v;
  if (auto v = r.number("gradient_floor")) e.gradient_floor = *v;
  if (auto v = r.integer("min_points")) e.min_points = static_cast<int>(*v);
  if (auto v = r.boolean("refine")) e.refine = *v;
  if (!(e.floor_factor >= 1.0)) r.fail("floor_factor", "must be >= 1");
  if (!(e.ceiling_fraction > 0.0 && e.ceiling_fraction <= 1.0)) r.fail("ceiling_fraction", "must lie in (0,1]");
  if (!(e.gradient_floor >= 0.0)) r.fail("gradient_floor", "must be >= 0");
  if (e.min_points < 3) r.fail("min_points", "must be >= 3");
  cfg.extinction.push_back(e);
}

void read_lemmas(const Section& s, CampaignConfig& cfg, std::vector<std::string>& problems) {
  Reader r(s, problems);
  LemmaSpec& l = cfg.lemmas;
  if (auto v = r.integer("seed")) {
    if (*v < 0) r.fail("seed", "must be >= 0");
    l.seed = static_cast<std::uint64_t>(*v);
  }
  auto positive = [&](const char* key, int& target, int minimum) {
    if (auto v = r.integer(key)) {
      if (*v < minimum || *v > 100000000) r.fail(key, "must be >= " + std::to_string(minimum));
      target = static_cast<int>(*v);
    }
  };
  positive("young_samples", l.young_samples, 1);
  positive("fast_draws", l.fast_draws, 1);
  positive("fast_n_max", l.fast_n_max, 1);
  positive("iteration_draws", l.iteration_draws, 1);
  positive("sobolev_fields", l.sobolev_fields, 1);
  positive("sobolev_resolution", l.sobolev_resolution, 4);
}

}  // namespace

CampaignConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<Section> sections = first != std::string_view::npos && text[first] == '{'
                                      ? parse_json(text, problems)
                                      : parse_text(text, problems);

  std::set<std::string> seen;
  for (const Section& s : sections) {
    auto known = kKeys.find(s.name);
    if (known == kKeys.end()) {
      problems.push_back("unknown section '" + s.name + "'");
      continue;
    }
    if (!kRepeatable.count(s.name) && !seen.insert(s.name).second) {
      problems.push_back("section [" + s.name + "] appears more than once");
    }
    for (const auto& [key, e] : s.entries) {
      if (!known->second.count(key)) problems.push_back("unknown key '" + key + "' in [" + s.name + "]");
    }
  }

  CampaignConfig cfg;
  bool have_sim = false;
  for (const Section& s : sections) {
    if (s.name == "simulation") {
      read_simulation(s, cfg, base_dir, problems);
      have_sim = true;
    }
  }
  if (!have_sim) problems.push_back("missing [simulation] section");
  for (const Section& s : sections) {
    if (s.name == "check") {
      read_check(s, cfg, problems);
    } else if (s.name == "extinction") {
      read_extinction(s, cfg, problems);
    } else if (s.name == "lemmas") {
      read_lemmas(s, cfg, problems);
    } else if (s.name == "analysis") {
      Reader r(s, problems);
      if (auto v = r.number("threshold")) {
        if (!(*v > 0.0)) r.fail("threshold", "must be > 0");
        cfg.threshold = *v;
      }
    } else if (s.name == "output") {
      Reader r(s, problems);
      if (auto d = r.text("dir")) {
        std::filesystem::path p = *d;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        cfg.output_dir = p;
      }
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace anisolab
