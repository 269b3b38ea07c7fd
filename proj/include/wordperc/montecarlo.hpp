#pragma once

// Seeded simulation: seeing-probability estimates, the red grid of the
// clairvoyant-demon formulation, and the block couplings that move a
// Bernoulli sequence from one parameter to another.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordperc/core.hpp"

namespace wordperc {

/// Identical configs produce identical streams. Stream i is seeded from
/// splitmix64(seed, i), so trials can be run in any order.
struct RngConfig {
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64/splitmix64";

  std::mt19937_64 stream(std::uint64_t index) const;
};

/// Uniform double in [0,1) from the top 53 bits; platform independent.
double uniform01(std::mt19937_64& gen);

SequencePrefix sample_sequence(double p, std::size_t length, std::mt19937_64& gen);
/// Uses stream 0 of the config.
SequencePrefix sample_sequence(double p, std::size_t length, const RngConfig& rng);

struct Estimate {
  double estimate = 0;
  double std_error = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
};

/// Frequency of {W is M-seen} over independent Bernoulli(p) prefixes of length nM.
Estimate estimate_seen_probability(const BinaryWord& word, std::size_t window, double p,
                                   std::size_t trials, const RngConfig& rng);

/// Per trial: a random word X of length n (parameter p_x) against a random Y
/// of length nM (parameter p_y).
Estimate estimate_x_seen_in_y(std::size_t window, double p_x, double p_y, std::size_t n,
                              std::size_t trials, const RngConfig& rng);

nlohmann::json estimate_json(const std::string& word, std::size_t window, double p,
                             const Estimate& e, const RngConfig& rng);

/// Rows i = 0..|X|, columns j = 0..|Y|; (i,j) with i,j >= 1 is red iff X_i = Y_j,
/// the origin is red, and the remaining axis points are not.
class RedGrid {
 public:
  RedGrid(const SequencePrefix& x, const SequencePrefix& y);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool red(std::size_t i, std::size_t j) const { return cells_.at(i * cols_ + j) != 0; }

  void write_pbm(std::ostream& out) const;
  void write_csv(std::ostream& out) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<char> cells_;
};

RedGrid red_grid(const SequencePrefix& x, const SequencePrefix& y);

/// Whether some path 0 = m_0 < m_1 < ... < m_{rows-1} with steps in [1, M]
/// visits only red points. Requires cols - 1 >= (rows - 1) M.
bool admissible_path_exists(const RedGrid& grid, std::size_t window);

struct CouplingOutput {
  SequencePrefix letters;
  std::vector<std::size_t> source;  // position in the input that each letter copies
};

/// Replaces each block 00 -> 0, 11 -> 1, and 01/10 -> 1 with probability p1
/// (else 0). Throws on odd input length.
CouplingOutput coupling_f(const SequencePrefix& x, double p1, std::mt19937_64& gen);

struct CouplingStage {
  double p_in = 0;
  double p1 = 0;
  double p_out = 0;  // p_in^2 + 2 p_in (1 - p_in) p1
};

inline double stage_output(double p, double p1) { return p * p + 2 * p * (1 - p) * p1; }

struct ParameterPath {
  std::vector<CouplingStage> stages;
  std::size_t window() const;  // 3^k
};

inline constexpr std::size_t kMaxCouplingStages = 30;

/// Iterates f1(p) = p^2 or f2(p) = 1 - (1-p)^2 toward the target until it is
/// attainable in one stage.
ParameterPath plan_parameter_path(double p, double p_target,
                                  std::size_t max_stages = kMaxCouplingStages);

struct ChainReport {
  ParameterPath path;
  std::size_t samples = 0;
  std::size_t output_length = 0;
  std::size_t seen_failures = 0;  // samples where X' is not 3^k-seen in X
  std::size_t ones = 0;
  std::size_t letters = 0;
  double empirical_p = 0;
  double target_p = 0;
  double sigma = 0;  // binomial standard deviation of empirical_p
  bool ok() const;
};

/// Samples X at p, pushes it through the planned stages and checks per sample
/// that the first `length` letters of X' are 3^k-seen in X.
ChainReport coupling_chain_demo(double p, double p_target, std::size_t length,
                                std::size_t samples, const RngConfig& rng);

}  // namespace wordperc
