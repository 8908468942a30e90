#include "anisolab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "anisolab/errors.hpp"

namespace anisolab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_number(v[i]);
  }
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv_string(const CsvTable& table) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestionError("cannot write " + path.string());
  out << to_csv_string(table);
  if (!out) throw IngestionError("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw IngestionError("unterminated quote in " + path.string());
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw IngestionError("empty CSV file " + path.string());
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw IngestionError(path.string() + ": row " + std::to_string(r) + " has " +
                           std::to_string(records[r].size()) + " fields, header has " +
                           std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::vector<std::string> run_echo_header() {
  return {"p", "half_domain", "resolution", "boundary", "initial_profile", "eps", "safety", "t_final",
          "step_count"};
}

std::vector<std::string> run_echo(const Trajectory& traj) {
  const Grid& g = *traj.grid;
  std::vector<double> res(g.resolution().begin(), g.resolution().end());
  return {format_list(traj.profile.p),
          format_list(g.half_domain()),
          format_list(res),
          std::string(to_string(g.boundary())),
          traj.initial_profile,
          format_number(traj.eps),
          format_number(traj.safety),
          format_number(traj.final_time()),
          std::to_string(traj.step_count)};
}

std::vector<std::string> check_header() {
  std::vector<std::string> h = {"index", "theorem", "geometry", "status", "reason", "rho", "t", "r", "C",
                                "k", "center", "cutoff", "tau1", "tau2", "C_o", "C_1", "lhs", "rhs_terms",
                                "rhs_sum", "gamma_min", "smallness_triggered", "smallness_index",
                                "hypothesis_met", "snapshots_in_window"};
  for (auto& s : run_echo_header()) h.push_back(s);
  return h;
}

std::vector<std::string> check_row(std::size_t index, const CheckSpec& spec, const InequalityReport& rep,
                                   const Trajectory& traj) {
  std::string terms;
  for (const auto& [name, v] : rep.rhs_terms) {
    if (!terms.empty()) terms += ';';
    terms += name + "=" + format_number(v);
  }
  const bool cacc = spec.kind == CheckKind::caccioppoli;
  std::vector<std::string> row = {
      std::to_string(index),
      std::string(to_string(rep.theorem)),
      std::string(to_string(rep.geometry)),
      std::string(to_string(rep.status)),
      rep.reason,
      format_number(spec.rho),
      format_number(spec.t),
      format_number(spec.r),
      format_number(spec.C),
      cacc ? format_number(rep.k) : "",
      format_list(spec.center),
      cacc ? (spec.flat_cutoff ? "flat" : "cube") : "",
      cacc ? format_number(spec.tau1) : "",
      cacc ? format_number(spec.tau2.value_or(spec.t)) : "",
      cacc ? format_number(spec.C_o) : "",
      cacc ? format_number(spec.C_1) : "",
      format_number(rep.lhs),
      terms,
      rep.status == ReportStatus::ok ? format_number(rep.rhs_sum()) : "nan",
      format_number(rep.gamma_min),
      rep.smallness_triggered ? "true" : "false",
      rep.smallness_index ? std::to_string(*rep.smallness_index) : "",
      rep.hypothesis_met ? "true" : "false",
      std::to_string(rep.snapshots_in_window)};
  for (auto& s : run_echo(traj)) row.push_back(std::move(s));
  return row;
}

CsvTable decay_table(const DecayReport& rep) {
  CsvTable t;
  t.header = {"tau", "T*-tau", "mass_intrinsic", "sup_intrinsic", "mass_standard", "sup_standard",
              "in_fit", "intrinsic_contained"};
  std::vector<bool> in_fit(rep.samples.size(), false);
  for (std::size_t i : rep.fit_indices) in_fit[i] = true;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const DecaySample& s = rep.samples[i];
    t.rows.push_back({format_number(s.tau), format_number(s.remaining), format_number(s.mass_intrinsic),
                      format_number(s.sup_intrinsic), format_number(s.mass_standard),
                      format_number(s.sup_standard), in_fit[i] ? "true" : "false",
                      s.intrinsic_contained ? "true" : "false"});
  }
  return t;
}

std::vector<std::string> fit_header() {
  std::vector<std::string> h = {"index", "rho", "threshold", "floor_factor", "ceiling_fraction",
                                "gradient_floor", "min_points", "refine", "t_star", "t_fit", "fit_tau_start", "fit_tau_end",
                                "quantity", "status", "reason", "slope", "slope_stderr", "theoretical",
                                "relative_error", "r_squared", "n_points"};
  for (auto& s : run_echo_header()) h.push_back(s);
  return h;
}

std::vector<std::vector<std::string>> fit_rows(std::size_t index, const ExtinctionSpec& spec,
                                               const DecayReport& rep, const Trajectory& traj) {
  std::vector<std::vector<std::string>> rows;
  const std::pair<const char*, const DecayFit*> fits[] = {{"mass_intrinsic", &rep.mass_intrinsic},
                                                          {"sup_intrinsic", &rep.sup_intrinsic},
                                                          {"mass_standard", &rep.mass_standard},
                                                          {"sup_standard", &rep.sup_standard}};
  for (const auto& [name, fit] : fits) {
    const bool ok = fit->applicable();
    std::vector<std::string> row = {
        std::to_string(index),
        format_number(rep.rho),
        format_number(rep.threshold),
        format_number(spec.floor_factor),
        format_number(spec.ceiling_fraction),
        format_number(spec.gradient_floor),
        std::to_string(spec.min_points),
        spec.refine ? "true" : "false",
        rep.t_star ? format_number(*rep.t_star) : "nan",
        format_number(rep.t_fit),
        format_number(rep.fit_window.first),
        format_number(rep.fit_window.second),
        name,
        ok ? "ok" : "not_applicable",
        fit->reason,
        ok ? format_number(fit->fit.slope) : "nan",
        ok ? format_number(fit->fit.slope_stderr) : "nan",
        format_number(fit->theoretical),
        ok ? format_number((fit->fit.slope - fit->theoretical) / fit->theoretical) : "nan",
        ok ? format_number(fit->fit.r_squared) : "nan",
        ok ? std::to_string(fit->fit.n_points) : "0"};
    for (auto& s : run_echo(traj)) row.push_back(std::move(s));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace anisolab
