#pragma once

// Moments of the number N_n of admissible embeddings, and the renewal
// structure behind the random-word second moment.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "wordperc/core.hpp"
#include "wordperc/rational.hpp"

namespace wordperc {

/// E(N_n) = (M/2)^n.
Rational expected_embeddings(std::size_t window, std::size_t n);

/// E(N_n^2) = (M/2)^{2n} E[prod over coincidences J_r = K_s of 2 * 1(w_r = w_s)],
/// evaluated by a DP over two independent uniform{1..M}-step walks that always
/// advances the one lagging behind, so only the difference of their current
/// positions needs to be tracked.
Rational second_moment_exact(const BinaryWord& word, std::size_t window);

/// Averages N_n(Y)^2 over all Y in {0,1}^{nM}, counting embeddings one by one.
Rational second_moment_oracle(const BinaryWord& word, std::size_t window,
                              std::size_t max_bits = 20);

struct RenewalTable {
  std::size_t window = 0;
  std::vector<Rational> u;  // u[n] = P(J_n = K_n), u[0] = 1
  std::vector<Rational> r;  // r[0] = 1, r[n] = sum_{k=1}^n u[k] r[n-k]
  std::vector<Rational> V;  // V[n] = r[0] + ... + r[n]
};

RenewalTable renewal_table(std::size_t window, std::size_t max_index);

/// Rows 0..min(rows, size)-1.
void write_renewal_csv(std::ostream& out, const RenewalTable& table, std::size_t rows = SIZE_MAX);

/// E(N_n(X)^2) for a uniformly random word X: (M/2)^{2n} V_n.
Rational random_word_second_moment(std::size_t window, std::size_t n);

/// E(2^{Z_n}) by enumerating all M^{2n} pairs of walk paths.
Rational visits_moment_bruteforce(std::size_t window, std::size_t n);

/// E(2^{Z_n}) = sum over subsets A of {1..n} of P(J_i = K_i for i in A), using
/// the Markov property of J - K to factor each term into return probabilities.
Rational visits_moment_by_subsets(std::size_t window, std::size_t n);

struct GrowthConstant {
  std::size_t window = 0;
  double tol = 0;
  double by_generating_function = 0;  // root of U(1/c) = 2
  double by_ratio = 0;                // limit of V_{n+1}/V_n
  std::size_t series_terms = 0;
  std::size_t ratio_steps = 0;
};

/// Throws std::runtime_error when either method fails to converge in its cap.
GrowthConstant growth_constant(std::size_t window, double tol);

nlohmann::json to_json(const GrowthConstant& c);

}  // namespace wordperc
