#pragma once

// Alternating-word recursions, the characteristic polynomial of their decay
// rate, and the two-block machinery (sigma grids, the u_{p,q} upper bound,
// the mixed difference operator and its polynomial certificate).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "wordperc/core.hpp"
#include "wordperc/rational.hpp"

namespace wordperc {

/// alpha = 1 - 2^-M, beta = 2^-M.
struct AlphaBeta {
  std::size_t window;
  Rational alpha;
  Rational beta;

  explicit AlphaBeta(std::size_t window);
};

/// v[n] = P(A_n is M-seen), vprime[n] = v_{n,M}, by_start[n][k-1] = v_{n,k}
/// (the standard embedding starts at k). by_start[0] is empty.
struct VnTable {
  std::size_t window = 0;
  std::vector<Rational> v;
  std::vector<Rational> vprime;
  std::vector<std::vector<Rational>> by_start;
};

VnTable vn_pair_recursion(std::size_t window, std::size_t max_index);
std::vector<Rational> vn_single_recursion(std::size_t window, std::size_t max_index);

/// Rows 0..min(rows, size)-1; ratio_next = v_{n+1}/v_n where the table has it.
void write_vn_csv(std::ostream& out, const VnTable& table, std::size_t rows = SIZE_MAX);

/// f(x) = x^2 - (alpha + (M-1)beta)x + beta(M - 2alpha).
struct CharPoly {
  std::size_t window;
  Rational linear;    // -(alpha + (M-1)beta)
  Rational constant;  // beta(M - 2alpha)
  double small_root;  // in (0, M beta)
  double large_root;  // in (alpha, 1)

  Rational operator()(const Rational& x) const { return x * x + linear * x + constant; }
};

CharPoly char_poly(std::size_t window);

/// sigma_{p,j} = P(tau_1..tau_p <= M, T_{p+j} > pM) via inclusion-exclusion.
Rational sigma_closed_form(std::size_t window, std::size_t p, std::size_t j);

struct SigmaPair {
  Rational sigma;        // T_{p+j} > pM
  Rational sigma_prime;  // T_{p+j} <= pM
};

inline constexpr std::size_t kSigmaOracleMaxHorizon = 4096;

/// Independent check: exact DP over the law of the geometric(1/2) gaps.
SigmaPair sigma_oracle(std::size_t window, std::size_t p, std::size_t j);

using RationalGrid = std::vector<std::vector<Rational>>;

/// Grids indexed [p][q] for 0 <= p <= max_p, 0 <= q <= max_q.
struct TwoBlockTable {
  std::size_t window = 0;
  RationalGrid sigma;        // sigma[p][j]
  RationalGrid sigma_prime;  // sigma'[p][j]
  RationalGrid u;            // u_{p,q}
  RationalGrid w;            // sum_{j<=q} alpha^{q-j} sigma_{p,j}
  RationalGrid delta;        // v_{p+q} - u_{p,q}
};

inline constexpr std::size_t kDefaultGridBound = 12;

/// Builds both expressions for u_{p,q} and throws std::logic_error if they
/// disagree. Bounds above `budget` throw BudgetExceeded.
TwoBlockTable u_table(std::size_t window, std::size_t max_p, std::size_t max_q,
                      std::size_t budget = 40);

void write_two_block_csv(std::ostream& out, const TwoBlockTable& table);

/// Delta f_{p,q} = f_{p+1,q+1} - M beta f_{p,q+1} - (alpha-beta) f_{p+1,q} + beta(M-2alpha) f_{p,q}.
Rational delta_operator(const RationalGrid& grid, std::size_t window, std::size_t p,
                        std::size_t q);

/// P(x) = (1-x)Q(x); coefficient vectors indexed by power of x.
struct PolyPQ {
  std::size_t window;
  std::vector<Rational> p;
  std::vector<Rational> q;
};

PolyPQ pq_polynomials(std::size_t window);

/// C(M,l) - 2 beta sum_{k=l}^M C(M,k), the closed form of Q's coefficient at x^l (l >= 2).
Rational q_coefficient_closed_form(std::size_t window, std::size_t l);

/// Compares (1-x) sum_j sigma_{p,j} x^{j-1} with beta^p x^{-p} [(1+x)^M - 1]^p
/// coefficient by coefficient up to x^order.
bool sigma_generating_identity(std::size_t window, std::size_t p, std::size_t order);

/// Suffix bounds for M = 2. Row m (1..n) describes the suffix W_m.
struct SuffixBoundRow {
  std::size_t m;
  Rational start1;  // w_{m,1}
  Rational start2;  // w_{m,2}
  Rational total;   // w_m
  Rational v;       // v_m
  bool equality_21;
  bool inequality_22;
  bool strict_22;
  bool below_v;
};

struct SuffixBoundReport {
  BinaryWord word;
  std::vector<SuffixBoundRow> rows;
  bool ok() const;
};

SuffixBoundReport verify_suffix_bounds_m2(const BinaryWord& word, std::size_t max_length = 16);

}  // namespace wordperc
