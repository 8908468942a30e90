#pragma once

// CSV and JSON output channels shared by the analysis and lemma campaigns.
// CSV follows RFC 4180 quoting with LF line endings; numbers are written with
// 17 significant digits and '.' as the decimal separator.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "anisolab/config.hpp"
#include "anisolab/extinction.hpp"
#include "anisolab/harnack.hpp"

namespace anisolab {

std::string format_number(double v);
std::string format_list(const std::vector<double>& v, char sep = ';');
std::string csv_escape(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
std::string to_csv_string(const CsvTable& table);

// Simulation parameters echoed into every analysis row.
std::vector<std::string> run_echo_header();
std::vector<std::string> run_echo(const Trajectory& traj);

std::vector<std::string> check_header();
std::vector<std::string> check_row(std::size_t index, const CheckSpec& spec, const InequalityReport& rep,
                                   const Trajectory& traj);

// tau, T*-tau, per-geometry mass and sup, plus fit membership.
CsvTable decay_table(const DecayReport& rep);

std::vector<std::string> fit_header();
std::vector<std::vector<std::string>> fit_rows(std::size_t index, const ExtinctionSpec& spec,
                                               const DecayReport& rep, const Trajectory& traj);

}  // namespace anisolab
