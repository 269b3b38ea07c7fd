#pragma once

// Desk-scale verification sweeps behind `wordperc verify <suite>`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace wordperc::verify {

struct Bounds {
  std::size_t window = 2;
  std::size_t n = 6;         // word length / grid bound
  std::size_t N = 100;       // table length
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
};

struct Result {
  bool pass = true;
  std::vector<std::string> lines;      // human-readable progress
  std::vector<std::string> failures;   // first violation of each check, if any

  void check(bool ok, const std::string& what);
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
Result run_suite(const std::string& name, const Bounds& bounds);

}  // namespace wordperc::verify
