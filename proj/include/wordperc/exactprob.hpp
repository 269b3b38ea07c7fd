#pragma once

// Exact probability that a word is M-seen in a Bernoulli(p) sequence.
//
// The embedding NFA is determinized on the fly. A state records, for every
// word index k < n, the youngest position (as an age 0..M-1 relative to the
// current sequence position) at which the length-k prefix can end. Older
// endpoints of the same prefix are dominated: every future position reachable
// from them is also reachable from the youngest one. Two absorbing states
// remain: ACCEPT (the whole word has been embedded) and DEAD.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wordperc/core.hpp"
#include "wordperc/rational.hpp"

namespace wordperc {

class StateLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical subset state: ages[k] is 0 when prefix k is unreachable, else
/// 1 + (age of its youngest endpoint).
struct SubsetState {
  std::vector<std::uint8_t> ages;

  std::vector<std::pair<std::size_t, std::size_t>> members() const;
  friend bool operator==(const SubsetState&, const SubsetState&) = default;
};

struct AutomatonOptions {
  std::size_t state_cap = 1'000'000;
  /// Upper bound on m_1. Defaults to M when zero. Restricting it lets callers
  /// recover where the standard embedding starts.
  std::size_t first_gap_limit = 0;
};

class ProbAutomaton {
 public:
  static constexpr std::size_t kDead = 0;
  static constexpr std::size_t kAccept = 1;

  const BinaryWord& word() const noexcept { return word_; }
  std::size_t window() const noexcept { return window_; }
  std::size_t initial() const noexcept { return initial_; }
  std::size_t size() const noexcept { return states_.size(); }
  const SubsetState& state(std::size_t id) const { return states_.at(id); }
  std::size_t next(std::size_t id, Bit letter) const { return transitions_.at(id)[letter]; }

  /// Probability of absorption in ACCEPT when letters are 1 with probability p.
  Rational accept_probability(const Rational& p) const;
  double accept_probability(double p) const;

  /// One line per state: "id | members | on0->id | on1->id".
  void dump(std::ostream& out) const;

  friend ProbAutomaton build_automaton(const BinaryWord&, std::size_t, const AutomatonOptions&);

 private:
  template <class T>
  T absorb(const T& p) const;

  BinaryWord word_;
  std::size_t window_ = 0;
  std::size_t initial_ = kAccept;
  std::vector<SubsetState> states_;
  std::vector<std::array<std::size_t, 2>> transitions_;
};

ProbAutomaton build_automaton(const BinaryWord& word, std::size_t window,
                              const AutomatonOptions& options = {});

/// P(W is M-seen in Y) with P(Y_i = 1) = p, exact.
Rational exact_seen_probability(const BinaryWord& word, std::size_t window, const Rational& p,
                                const AutomatonOptions& options = {});

/// Floating-point variant for speed sweeps.
double approx_seen_probability(const BinaryWord& word, std::size_t window, double p,
                               const AutomatonOptions& options = {});

inline constexpr std::size_t kDefaultBruteForceBits = 24;

/// Averages the DP decision over all 2^{nM} prefixes at p = 1/2.
Rational exhaustive_seen_probability(const BinaryWord& word, std::size_t window,
                                     std::size_t max_bits = kDefaultBruteForceBits);

struct WordExtremes {
  Rational max;
  std::vector<BinaryWord> maximizers;  // lexicographic order
  Rational min;
  std::vector<BinaryWord> minimizers;
};

inline constexpr std::size_t kDefaultMaxWordLength = 16;

/// Exact p = 1/2 probabilities of all 2^n words, reduced to the extremes.
WordExtremes max_word_probability(std::size_t n, std::size_t window,
                                  std::size_t max_length = kDefaultMaxWordLength);

}  // namespace wordperc
