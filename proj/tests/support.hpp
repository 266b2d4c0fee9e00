#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "chemlat/sim.hpp"

namespace testing {

// State with the given memberships (insertion order kept) and activities.
inline chemlat::SimState make_state(const std::vector<std::vector<chemlat::MoleculeId>>& clusters,
                                    const std::vector<std::uint8_t>& m1, std::uint64_t seed = 7) {
  chemlat::SimState s;
  s.rng = chemlat::Rng(seed);
  s.m1 = m1;
  s.m0.assign(m1.size(), 0);
  for (std::size_t n = 0; n < clusters.size(); ++n) {
    s.cl.push_back(clusters[n]);
    std::uint32_t active = 0;
    for (auto k : clusters[n]) {
      s.m0[k] = static_cast<chemlat::ClusterId>(n);
      active += m1[k];
    }
    s.c0.push_back(static_cast<std::uint32_t>(clusters[n].size()));
    s.c1.push_back(active);
  }
  return s;
}

inline std::vector<std::vector<chemlat::MoleculeId>> singletons(std::uint32_t n) {
  std::vector<std::vector<chemlat::MoleculeId>> out;
  for (std::uint32_t k = 0; k < n; ++k) out.push_back({k});
  return out;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("chemlat_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace testing
