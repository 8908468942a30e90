#pragma once

// On-disk trajectory layout:
//
//   <dir>/manifest.json      grid, exponents, eps, snapshot list with times
//   <dir>/snap_00000.bin     little-endian float64, row-major, one per snapshot
//
// Files round-trip bit-exactly.

#include <filesystem>
#include <span>
#include <vector>

#include "anisolab/solver.hpp"

namespace anisolab {

std::vector<double> read_f64_le(const std::filesystem::path& path);
void write_f64_le(const std::filesystem::path& path, std::span<const double> values);

void write_trajectory(const Trajectory& traj, const std::filesystem::path& dir);
Trajectory read_trajectory(const std::filesystem::path& dir);

}  // namespace anisolab
