#pragma once

// Slow reference implementations used only by the tests.

#include <cstdint>
#include <string>
#include <vector>

#include "wordperc/core.hpp"
#include "wordperc/rational.hpp"

namespace oracle {

using wordperc::Bit;
using wordperc::BinaryWord;
using wordperc::Rational;
using wordperc::SequencePrefix;

inline SequencePrefix seq(std::uint64_t mask, std::size_t len) {
  std::vector<Bit> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<Bit>((mask >> i) & 1u);
  return SequencePrefix(std::move(bits));
}

inline BinaryWord word(std::uint64_t mask, std::size_t len) {
  std::vector<Bit> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<Bit>((mask >> i) & 1u);
  return BinaryWord(std::move(bits));
}

// Every admissible position sequence, tried one by one.
inline void embeddings(const BinaryWord& w, const SequencePrefix& y, std::size_t m,
                       std::vector<std::size_t>& pos, std::vector<std::vector<std::size_t>>& out) {
  const std::size_t k = pos.size();
  if (k == w.size()) {
    out.push_back(pos);
    return;
  }
  const std::size_t last = k == 0 ? 0 : pos.back();
  for (std::size_t g = 1; g <= m; ++g) {
    const std::size_t at = last + g;
    if (at > y.size()) break;
    if (y.at(at) != w.at(k + 1)) continue;
    pos.push_back(at);
    embeddings(w, y, m, pos, out);
    pos.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> all_embeddings(const BinaryWord& w, const SequencePrefix& y,
                                                            std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pos;
  embeddings(w, y, m, pos, out);
  return out;
}

inline bool seen(const BinaryWord& w, const SequencePrefix& y, std::size_t m) {
  return !all_embeddings(w, y, m).empty();
}

inline Rational weight(const SequencePrefix& y, const Rational& p) {
  Rational out = 1;
  for (std::size_t i = 1; i <= y.size(); ++i) out *= y.at(i) ? p : Rational(1 - p);
  return out;
}

inline Rational seen_probability(const BinaryWord& w, std::size_t m, const Rational& p) {
  const std::size_t len = w.size() * m;
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    const SequencePrefix y = seq(mask, len);
    if (seen(w, y, m)) total += weight(y, p);
  }
  return total;
}

inline Rational second_moment(const BinaryWord& w, std::size_t m) {
  const std::size_t len = w.size() * m;
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    const auto count = all_embeddings(w, seq(mask, len), m).size();
    total += Rational(static_cast<long>(count * count));
  }
  return total / Rational(wordperc::Integer(1) << static_cast<unsigned>(len));
}

// P(J_n = K_n) for two independent walks with uniform steps in 1..m.
inline std::vector<Rational> return_probabilities(std::size_t m, std::size_t n_max) {
  std::vector<Rational> dist{1};
  std::vector<Rational> u{1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<Rational> next(dist.size() + m, Rational(0));
    for (std::size_t s = 0; s < dist.size(); ++s) {
      for (std::size_t g = 1; g <= m; ++g) next[s + g] += dist[s] / Rational(static_cast<long>(m));
    }
    dist = std::move(next);
    Rational sum = 0;
    for (const auto& q : dist) sum += q * q;
    u.push_back(sum);
  }
  return u;
}

}  // namespace oracle
