#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "anisolab/geometry.hpp"
#include "anisolab/grid.hpp"
#include "anisolab/solver.hpp"

namespace anisolab::testing {

inline std::shared_ptr<const Grid> make_grid(std::vector<double> L, std::vector<int> n,
                                             Boundary b = Boundary::dirichlet_zero) {
  return std::make_shared<const Grid>(build_grid(L, n, b));
}

// Trajectory assembled from given fields (times and values), no solver involved.
inline Trajectory synthetic(std::shared_ptr<const Grid> grid, std::vector<double> p,
                            const std::vector<double>& times,
                            const std::function<double(std::span<const double>, double)>& u) {
  Trajectory traj;
  traj.grid = grid;
  traj.profile = derive_exponents(p, grid->dimension());
  traj.eps = grid->h_min();
  traj.initial_profile = "synthetic";
  std::vector<double> x(static_cast<std::size_t>(grid->dimension()));
  for (double t : times) {
    Field f{grid, std::vector<double>(grid->cell_count()), t};
    for (std::size_t c = 0; c < grid->cell_count(); ++c) {
      grid->cell_center(c, x);
      f.values[c] = u(x, t);
    }
    traj.snapshots.push_back(std::move(f));
  }
  return traj;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) {
    static std::mt19937_64 g(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("anisolab_" + name + "_" + std::to_string(g() % 1000000007ULL));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace anisolab::testing
