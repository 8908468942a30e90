#include <gtest/gtest.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "anisolab/errors.hpp"
#include "anisolab/snapshot_io.hpp"
#include "test_support.hpp"

using namespace anisolab;
using anisolab::testing::TempDir;

namespace {

Trajectory small_run() {
  SimConfig c;
  c.half_domain = {1.0, 0.5};
  c.resolution = {12, 8};
  c.p = {1.5, 1.7};
  c.initial = profiles::Bump{1.0, 0.45};
  c.t_end = 0.01;
  c.snapshot_count = 4;
  return run(c);
}

}  // namespace

TEST(SnapshotIo, LittleEndianBytes) {
  TempDir dir("io");
  const double v[] = {1.0};
  write_f64_le(dir.path() / "one.bin", v);
  std::ifstream in(dir.path() / "one.bin", std::ios::binary);
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  // 1.0 = 0x3FF0000000000000
  const unsigned char expect[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
  EXPECT_EQ(std::memcmp(bytes, expect, 8), 0);
}

TEST(SnapshotIo, RoundTripBitExact) {
  TempDir dir("io");
  const Trajectory a = small_run();
  write_trajectory(a, dir.path());
  const Trajectory b = read_trajectory(dir.path());
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  EXPECT_TRUE(*a.grid == *b.grid);
  EXPECT_EQ(a.profile.p, b.profile.p);
  EXPECT_EQ(a.eps, b.eps);
  EXPECT_EQ(a.step_count, b.step_count);
  EXPECT_EQ(a.initial_profile, b.initial_profile);
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    EXPECT_EQ(a.snapshots[k].time, b.snapshots[k].time);
    EXPECT_EQ(std::memcmp(a.snapshots[k].values.data(), b.snapshots[k].values.data(),
                          a.snapshots[k].values.size() * sizeof(double)),
              0);
  }
}

TEST(SnapshotIo, ManifestContents) {
  TempDir dir("io");
  write_trajectory(small_run(), dir.path());
  std::ifstream in(dir.path() / "manifest.json");
  const nlohmann::json m = nlohmann::json::parse(in);
  EXPECT_EQ(m["N"], 2);
  EXPECT_EQ(m["snapshots"].size(), 5u);
  EXPECT_EQ(m["boundary"], "dirichlet");
  EXPECT_EQ(m["snapshots"][0]["file"], "snap_00000.bin");
}

TEST(SnapshotIo, MissingSnapshotNamesTheGap) {
  TempDir dir("io");
  write_trajectory(small_run(), dir.path());
  std::filesystem::remove(dir.path() / "snap_00002.bin");
  try {
    read_trajectory(dir.path());
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("snapshot 2"), std::string::npos) << e.what();
  }
}

TEST(SnapshotIo, MissingManifest) {
  TempDir dir("io");
  EXPECT_THROW(read_trajectory(dir.path()), IngestionError);
}

TEST(SnapshotIo, TruncatedFileRejected) {
  TempDir dir("io");
  write_trajectory(small_run(), dir.path());
  std::filesystem::resize_file(dir.path() / "snap_00001.bin", 8 * 10);
  EXPECT_THROW(read_trajectory(dir.path()), IngestionError);
}
