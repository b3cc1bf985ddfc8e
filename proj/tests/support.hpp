#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mtdm/mtdp.hpp"
#include "mtdm/problem_file.hpp"

namespace mtdm::testing {

inline std::string fixture_path() { return MTDM_FIXTURE; }

inline ProblemFile fixture() { return load_problem(fixture_path()); }

/// Small MTDP with values on the 0.1 grid so that ties and comparabilities occur.
inline Mtdp random_mtdp(std::mt19937_64& rng, std::size_t max_actions = 4,
                        std::size_t max_states = 4, std::size_t max_targets = 3) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t na = pick(2, max_actions);
  const std::size_t ns = pick(1, max_states);
  const std::size_t nt = pick(1, max_targets);
  const std::size_t z = pick(0, nt);
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<double>>> table(na);
  for (std::size_t a = 0; a < na; ++a) {
    names.push_back("X" + std::to_string(a + 1));
    for (std::size_t s = 0; s < ns; ++s) {
      std::vector<double> row;
      for (std::size_t j = 0; j < nt; ++j) row.push_back(static_cast<double>(pick(0, 10)) / 10.0);
      table[a].push_back(std::move(row));
    }
  }
  return Mtdp(StateSpace::numbered(ns), names, table, z);
}

inline bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](std::size_t x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

}  // namespace mtdm::testing
