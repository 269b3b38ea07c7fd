#pragma once

// Words, Bernoulli sequence prefixes, and the M-admissible embedding engine.
//
// Positions are 1-based throughout, matching the convention m_0 = 0 for the
// (virtual) start of every embedding.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wordperc {

using Bit = std::uint8_t;

template <class Tag>
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_) {
      if (b > 1) throw std::invalid_argument("letters must be 0 or 1");
    }
  }

  /// Parses a string of '0'/'1' characters.
  static BitString parse(std::string_view text) {
    std::vector<Bit> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("expected a 0/1 string, got '" + std::string(text) + "'");
      }
      bits.push_back(static_cast<Bit>(c - '0'));
    }
    return BitString(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  /// 1-based access.
  Bit at(std::size_t i) const { return bits_.at(i - 1); }
  std::span<const Bit> bits() const noexcept { return bits_; }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  BitString prefix(std::size_t len) const {
    if (len > bits_.size()) throw std::out_of_range("prefix longer than string");
    return BitString(std::vector<Bit>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(len)));
  }
  BitString suffix(std::size_t len) const {
    if (len > bits_.size()) throw std::out_of_range("suffix longer than string");
    return BitString(std::vector<Bit>(bits_.end() - static_cast<std::ptrdiff_t>(len), bits_.end()));
  }
  BitString complement() const {
    std::vector<Bit> out(bits_);
    for (Bit& b : out) b ^= 1;
    return BitString(std::move(out));
  }

  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<Bit> bits_;
};

struct WordTag {};
struct SequenceTag {};

/// Finite binary word w_1..w_n.
using BinaryWord = BitString<WordTag>;
/// Finite prefix Y_1..Y_L of a Bernoulli sequence.
using SequencePrefix = BitString<SequenceTag>;

namespace word_kind {
struct Constant { Bit letter = 1; };
struct Alternating { Bit first = 1; };
struct TwoBlock { std::size_t ones = 0; std::size_t zeros = 0; };
struct Explicit { std::vector<Bit> bits; };
}  // namespace word_kind

using WordKind = std::variant<word_kind::Constant, word_kind::Alternating,
                              word_kind::TwoBlock, word_kind::Explicit>;

/// Builds a word of length n. Throws on negative length, a two-block word
/// whose block sizes do not add up to n, or an explicit word of another length.
BinaryWord make_word(const WordKind& kind, long n);

BinaryWord constant_word(std::size_t n, Bit letter = 1);
/// A_n = (1,0,1,0,...) when first == 1.
BinaryWord alternating_word(std::size_t n, Bit first = 1);
/// W_{p,q}: p ones followed by q zeros.
BinaryWord two_block_word(std::size_t ones, std::size_t zeros);

struct Embedding {
  std::vector<std::size_t> positions;  // m_1 < ... < m_n
  std::size_t window = 0;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Hitting times T_1..T_n (T_0 = 0 implicit) and gaps tau_k = T_k - T_{k-1}.
struct SpacingProfile {
  std::vector<std::size_t> hits;
  std::vector<std::size_t> gaps;

  static SpacingProfile from_hits(std::vector<std::size_t> hits);
  static SpacingProfile from_gaps(std::vector<std::size_t> gaps);

  std::size_t size() const noexcept { return hits.size(); }
  /// T_k with T_0 = 0.
  std::size_t T(std::size_t k) const { return k == 0 ? 0 : hits.at(k - 1); }
  std::size_t tau(std::size_t k) const { return gaps.at(k - 1); }
};

/// Sliding-window DP state for deciding M-seen. For each word index k it keeps
/// the ages (0..M-1, as a bitmask) of the positions where the length-k prefix
/// can end; older positions can never be extended because gaps are at most M.
class ReachFrontier {
 public:
  static constexpr std::size_t kMaxWindow = 63;

  ReachFrontier(const BinaryWord& word, std::size_t window);

  void advance(Bit letter);
  bool accepted() const noexcept { return accepted_; }
  /// No prefix can be extended any more (and the word was not completed).
  bool dead() const noexcept;
  std::size_t processed() const noexcept { return processed_; }
  std::uint64_t ages(std::size_t k) const { return ages_.at(k); }

 private:
  std::vector<Bit> word_;
  std::size_t window_;
  std::uint64_t live_mask_;
  std::vector<std::uint64_t> ages_;  // index k = 0..n-1
  std::size_t processed_ = 0;
  bool accepted_ = false;
};

/// Events {W is M-seen} live in Y_1..Y_{nM}.
inline std::size_t event_horizon(std::size_t word_length, std::size_t window) {
  return word_length * window;
}

/// True iff W has an M-admissible embedding in Y. Requires |Y| >= nM.
bool is_m_seen(const BinaryWord& word, const SequencePrefix& y, std::size_t window);

/// Like is_m_seen but without the horizon requirement: decides whether an
/// admissible embedding fits inside the given letters.
bool embeds_within(const BinaryWord& word, const SequencePrefix& y, std::size_t window);

/// The lexicographically least admissible embedding, if any. Requires |Y| >= nM.
std::optional<Embedding> standard_embedding(const BinaryWord& word, const SequencePrefix& y,
                                            std::size_t window);

/// Calls `visit` on every admissible embedding inside y (exhaustive; for oracles).
void for_each_embedding(const BinaryWord& word, const SequencePrefix& y, std::size_t window,
                        const std::function<void(std::span<const std::size_t>)>& visit);

/// Number of admissible embeddings inside y, by exhaustive enumeration.
std::size_t count_embeddings(const BinaryWord& word, const SequencePrefix& y, std::size_t window);

/// Throws std::domain_error if some letter of W is not hit inside y.
SpacingProfile spacing_profile(const BinaryWord& word, const SequencePrefix& y);

/// Constant words: M-seen iff tau_k <= M for k <= n.
bool constant_seen_by_spacings(const SpacingProfile& profile, std::size_t window, std::size_t n);

/// Alternating words: M-seen iff T_k <= kM for 1 <= k <= n and
/// T_k - T_j < (k - j + 1)M for 0 <= j < k <= n.
bool alternating_seen_by_spacings(const SpacingProfile& profile, std::size_t window,
                                  std::size_t n);

/// S_0 = 0, S_k = min(T_{k+1} - 1, S_{k-1} + M) for k = 1..|profile|-1.
std::vector<std::size_t> s_sequence(const SpacingProfile& profile, std::size_t window);

}  // namespace wordperc
