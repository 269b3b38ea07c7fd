#include "wordperc/core.hpp"

#include <algorithm>
#include <string>

namespace wordperc {
namespace {

void require_window(std::size_t window) {
  if (window == 0) throw std::invalid_argument("window M must be at least 1");
}

void require_horizon(const BinaryWord& word, const SequencePrefix& y, std::size_t window) {
  require_window(window);
  if (y.size() < event_horizon(word.size(), window)) {
    throw std::invalid_argument("sequence prefix of length " + std::to_string(y.size()) +
                                " does not determine the event; need at least " +
                                std::to_string(event_horizon(word.size(), window)));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

BinaryWord make_word(const WordKind& kind, long n) {
  if (n < 0) throw std::invalid_argument("word length must be non-negative");
  const auto len = static_cast<std::size_t>(n);
  return std::visit(
      Overloaded{
          [&](const word_kind::Constant& c) { return constant_word(len, c.letter); },
          [&](const word_kind::Alternating& a) { return alternating_word(len, a.first); },
          [&](const word_kind::TwoBlock& t) {
            if (t.ones + t.zeros != len) {
              throw std::invalid_argument("two-block sizes " + std::to_string(t.ones) + "+" +
                                          std::to_string(t.zeros) + " do not sum to " +
                                          std::to_string(len));
            }
            return two_block_word(t.ones, t.zeros);
          },
          [&](const word_kind::Explicit& e) {
            if (e.bits.size() != len) throw std::invalid_argument("explicit word has wrong length");
            return BinaryWord(e.bits);
          },
      },
      kind);
}

BinaryWord constant_word(std::size_t n, Bit letter) {
  if (letter > 1) throw std::invalid_argument("letters must be 0 or 1");
  return BinaryWord(std::vector<Bit>(n, letter));
}

BinaryWord alternating_word(std::size_t n, Bit first) {
  if (first > 1) throw std::invalid_argument("letters must be 0 or 1");
  std::vector<Bit> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<Bit>((first + i) % 2);
  return BinaryWord(std::move(bits));
}

BinaryWord two_block_word(std::size_t ones, std::size_t zeros) {
  std::vector<Bit> bits(ones, 1);
  bits.insert(bits.end(), zeros, 0);
  return BinaryWord(std::move(bits));
}

SpacingProfile SpacingProfile::from_hits(std::vector<std::size_t> hits) {
  SpacingProfile out;
  std::size_t prev = 0;
  for (std::size_t t : hits) {
    if (t <= prev) throw std::invalid_argument("hitting times must be strictly increasing from T_0 = 0");
    out.gaps.push_back(t - prev);
    prev = t;
  }
  out.hits = std::move(hits);
  return out;
}

SpacingProfile SpacingProfile::from_gaps(std::vector<std::size_t> gaps) {
  SpacingProfile out;
  std::size_t t = 0;
  for (std::size_t g : gaps) {
    if (g == 0) throw std::invalid_argument("gaps must be at least 1");
    t += g;
    out.hits.push_back(t);
  }
  out.gaps = std::move(gaps);
  return out;
}

ReachFrontier::ReachFrontier(const BinaryWord& word, std::size_t window)
    : word_(word.bits().begin(), word.bits().end()), window_(window) {
  require_window(window);
  if (window > kMaxWindow) throw std::invalid_argument("window too large for frontier bitmask");
  live_mask_ = (std::uint64_t{1} << window) - 1;
  ages_.assign(word_.size(), 0);
  if (word_.empty()) {
    accepted_ = true;
  } else {
    ages_[0] = 1;  // the origin m_0 = 0, age 0
  }
}

void ReachFrontier::advance(Bit letter) {
  ++processed_;
  if (accepted_) return;
  const std::size_t n = word_.size();
  // Any stored age d <= M-1 admits a next step of length d + 1 <= M.
  if (word_[n - 1] == letter && ages_[n - 1] != 0) {
    accepted_ = true;
    return;
  }
  for (std::size_t k = n - 1; k >= 1; --k) {
    std::uint64_t next = (ages_[k] << 1) & live_mask_;
    if (word_[k - 1] == letter && ages_[k - 1] != 0) next |= 1;
    ages_[k] = next;
  }
  ages_[0] = (ages_[0] << 1) & live_mask_;
}

bool ReachFrontier::dead() const noexcept {
  if (accepted_) return false;
  return std::all_of(ages_.begin(), ages_.end(), [](std::uint64_t a) { return a == 0; });
}

bool embeds_within(const BinaryWord& word, const SequencePrefix& y, std::size_t window) {
  require_window(window);
  const std::size_t n = word.size();
  if (n == 0) return true;
  // latest[k]: last position where w_1..w_k ends an admissible partial embedding (0 = none).
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> latest(n + 1, kNone);
  latest[0] = 0;
  for (std::size_t j = 1; j <= y.size(); ++j) {
    const Bit b = y.at(j);
    for (std::size_t k = n; k >= 1; --k) {
      if (word.at(k) == b && latest[k - 1] != kNone && latest[k - 1] + window >= j) latest[k] = j;
    }
    if (latest[n] != kNone) return true;
    if (j >= window && latest[0] + window < j) {
      bool alive = false;
      for (std::size_t k = 0; k < n && !alive; ++k) alive = latest[k] != kNone && latest[k] + window > j;
      if (!alive) return false;
    }
  }
  return false;
}

bool is_m_seen(const BinaryWord& word, const SequencePrefix& y, std::size_t window) {
  require_horizon(word, y, window);
  return embeds_within(word, y, window);
}

std::optional<Embedding> standard_embedding(const BinaryWord& word, const SequencePrefix& y,
                                            std::size_t window) {
  require_horizon(word, y, window);
  const std::size_t n = word.size();
  const std::size_t len = y.size();
  if (n == 0) return Embedding{{}, window};

  // feasible[k][m]: the suffix w_k..w_n has an admissible continuation with m_k = m.
  std::vector<std::vector<char>> feasible(n + 1, std::vector<char>(len + 2, 0));
  for (std::size_t m = 1; m <= len; ++m) feasible[n][m] = y.at(m) == word.at(n);
  for (std::size_t k = n - 1; k >= 1; --k) {
    // count of feasible[k+1] over the window (m, m+M]
    std::size_t in_window = 0;
    for (std::size_t m = len; m >= 1; --m) {
      if (m + 1 <= len) in_window += static_cast<std::size_t>(feasible[k + 1][m + 1]);
      if (m + window + 1 <= len) in_window -= static_cast<std::size_t>(feasible[k + 1][m + window + 1]);
      feasible[k][m] = y.at(m) == word.at(k) && in_window > 0;
    }
  }

  Embedding out{{}, window};
  std::size_t prev = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t chosen = 0;
    for (std::size_t m = prev + 1; m <= std::min(prev + window, len); ++m) {
      if (feasible[k][m]) {
        chosen = m;
        break;
      }
    }
    if (chosen == 0) return std::nullopt;
    out.positions.push_back(chosen);
    prev = chosen;
  }
  return out;
}

void for_each_embedding(const BinaryWord& word, const SequencePrefix& y, std::size_t window,
                        const std::function<void(std::span<const std::size_t>)>& visit) {
  require_window(window);
  const std::size_t n = word.size();
  std::vector<std::size_t> positions;
  positions.reserve(n);
  auto rec = [&](auto&& self, std::size_t prev) -> void {
    const std::size_t k = positions.size();
    if (k == n) {
      visit(positions);
      return;
    }
    for (std::size_t m = prev + 1; m <= std::min(prev + window, y.size()); ++m) {
      if (y.at(m) != word.at(k + 1)) continue;
      positions.push_back(m);
      self(self, m);
      positions.pop_back();
    }
  };
  rec(rec, 0);
}

std::size_t count_embeddings(const BinaryWord& word, const SequencePrefix& y, std::size_t window) {
  std::size_t count = 0;
  for_each_embedding(word, y, window, [&](std::span<const std::size_t>) { ++count; });
  return count;
}

SpacingProfile spacing_profile(const BinaryWord& word, const SequencePrefix& y) {
  std::vector<std::size_t> hits;
  hits.reserve(word.size());
  std::size_t i = 0;
  for (std::size_t k = 1; k <= word.size(); ++k) {
    do {
      ++i;
      if (i > y.size()) {
        throw std::domain_error("letter " + std::to_string(k) + " of the word is not hit within " +
                                std::to_string(y.size()) + " sequence positions");
      }
    } while (y.at(i) != word.at(k));
    hits.push_back(i);
  }
  return SpacingProfile::from_hits(std::move(hits));
}

bool constant_seen_by_spacings(const SpacingProfile& profile, std::size_t window, std::size_t n) {
  if (profile.size() < n) throw std::invalid_argument("spacing profile shorter than word");
  return std::all_of(profile.gaps.begin(), profile.gaps.begin() + static_cast<std::ptrdiff_t>(n),
                     [&](std::size_t tau) { return tau <= window; });
}

bool alternating_seen_by_spacings(const SpacingProfile& profile, std::size_t window,
                                  std::size_t n) {
  if (profile.size() < n) throw std::invalid_argument("spacing profile shorter than word");
  for (std::size_t k = 1; k <= n; ++k) {
    if (profile.T(k) > k * window) return false;
    for (std::size_t j = 0; j < k; ++j) {
      if (profile.T(k) - profile.T(j) >= (k - j + 1) * window) return false;
    }
  }
  return true;
}

std::vector<std::size_t> s_sequence(const SpacingProfile& profile, std::size_t window) {
  if (profile.size() == 0) throw std::invalid_argument("s_sequence needs at least T_1");
  std::vector<std::size_t> s{0};
  for (std::size_t k = 1; k < profile.size(); ++k) {
    s.push_back(std::min(profile.T(k + 1) - 1, s.back() + window));
  }
  return s;
}

}  // namespace wordperc
