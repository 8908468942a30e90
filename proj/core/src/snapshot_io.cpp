#include "anisolab/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "anisolab/errors.hpp"

namespace anisolab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kFormatTag = "anisolab-trajectory-v1";

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%05zu.bin", index);
  return buf;
}

}  // namespace

std::vector<double> read_f64_le(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  if (bytes % 8 != 0) {
    throw IngestionError(path.string() + " is not a float64 array (" + std::to_string(bytes) +
                         " bytes)");
  }
  std::vector<double> values(bytes / 8);
  for (double& v : values) {
    std::uint64_t raw = 0;
    in.read(reinterpret_cast<char*>(&raw), 8);
    raw = to_le(raw);
    v = std::bit_cast<double>(raw);
  }
  if (!in) throw IngestionError("short read from " + path.string());
  return values;
}

void write_f64_le(const fs::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestionError("cannot write " + path.string());
  for (double v : values) {
    const std::uint64_t raw = to_le(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&raw), 8);
  }
  if (!out) throw IngestionError("write failed for " + path.string());
}

void write_trajectory(const Trajectory& traj, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IngestionError("cannot create " + dir.string() + ": " + ec.message());

  const Grid& g = *traj.grid;
  json manifest;
  manifest["format"] = kFormatTag;
  manifest["N"] = g.dimension();
  manifest["resolution"] = g.resolution();
  manifest["half_domain"] = g.half_domain();
  manifest["spacings"] = g.spacing();
  manifest["boundary"] = std::string(to_string(g.boundary()));
  manifest["p"] = traj.profile.p;
  manifest["eps"] = traj.eps;
  manifest["safety"] = traj.safety;
  manifest["initial_profile"] = traj.initial_profile;
  manifest["step_count"] = traj.step_count;
  json snaps = json::array();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const std::string name = snapshot_name(k);
    write_f64_le(dir / name, traj.snapshots[k].values);
    snaps.push_back({{"index", k}, {"file", name}, {"time", traj.snapshots[k].time}});
  }
  manifest["snapshots"] = std::move(snaps);

  std::ofstream out(dir / kManifestName, std::ios::trunc);
  if (!out) throw IngestionError("cannot write " + (dir / kManifestName).string());
  // nlohmann prints doubles with round-trip precision.
  out << manifest.dump(2) << '\n';
}

Trajectory read_trajectory(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestName;
  std::ifstream in(manifest_path);
  if (!in) throw IngestionError("no manifest at " + manifest_path.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw IngestionError("malformed manifest " + manifest_path.string() + ": " + e.what());
  }

  Trajectory traj;
  try {
    if (manifest.value("format", std::string{}) != kFormatTag) {
      throw IngestionError("unsupported manifest format in " + manifest_path.string());
    }
    const auto half = manifest.at("half_domain").get<std::vector<double>>();
    const auto res = manifest.at("resolution").get<std::vector<int>>();
    const Boundary boundary = parse_boundary(manifest.at("boundary").get<std::string>());
    traj.grid = std::make_shared<const Grid>(build_grid(half, res, boundary));
    const auto p = manifest.at("p").get<std::vector<double>>();
    traj.profile = derive_exponents(p, traj.grid->dimension());
    traj.eps = manifest.at("eps").get<double>();
    traj.safety = manifest.value("safety", 0.5);
    traj.initial_profile = manifest.value("initial_profile", std::string{});
    traj.step_count = manifest.value("step_count", std::size_t{0});

    const auto& snaps = manifest.at("snapshots");
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      const auto& entry = snaps[k];
      if (entry.at("index").get<std::size_t>() != k) {
        throw IngestionError("snapshot list in " + manifest_path.string() + " has a gap at index " +
                             std::to_string(k));
      }
      const fs::path file = dir / entry.at("file").get<std::string>();
      if (!fs::exists(file)) {
        throw IngestionError("missing snapshot " + std::to_string(k) + " (" + file.string() + ")");
      }
      Field f{traj.grid, read_f64_le(file), entry.at("time").get<double>()};
      if (f.values.size() != traj.grid->cell_count()) {
        throw IngestionError("snapshot " + file.string() + " has the wrong cell count");
      }
      if (!traj.snapshots.empty() && !(f.time > traj.snapshots.back().time)) {
        throw IngestionError("snapshot times in " + manifest_path.string() +
                             " are not strictly increasing");
      }
      traj.snapshots.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    throw IngestionError("manifest " + manifest_path.string() + ": " + e.what());
  }
  if (traj.snapshots.empty()) throw IngestionError("manifest lists no snapshots");
  return traj;
}

}  // namespace anisolab
