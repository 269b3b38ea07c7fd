#include "verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wordperc/core.hpp"
#include "wordperc/exactprob.hpp"
#include "wordperc/moments.hpp"
#include "wordperc/montecarlo.hpp"
#include "wordperc/recursions.hpp"

namespace wordperc::verify {
namespace {

SequencePrefix prefix_from_mask(std::uint64_t mask, std::size_t len) {
  std::vector<Bit> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<Bit>((mask >> i) & 1u);
  return SequencePrefix(std::move(bits));
}

BinaryWord word_from_mask(std::uint64_t mask, std::size_t len) {
  std::vector<Bit> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = static_cast<Bit>((mask >> (len - 1 - i)) & 1u);
  return BinaryWord(std::move(bits));
}

SequencePrefix extend(const SequencePrefix& y, const BinaryWord& w) {
  std::vector<Bit> bits(y.bits().begin(), y.bits().end());
  bits.insert(bits.end(), w.bits().begin(), w.bits().end());
  return SequencePrefix(std::move(bits));
}

Result maximizers(const Bounds& b) {
  Result r;
  const VnTable vn = vn_pair_recursion(std::max<std::size_t>(b.window, 2), b.n);
  for (std::size_t n = 1; n <= b.n; ++n) {
    const WordExtremes ex = max_word_probability(n, b.window);
    std::string who;
    for (const auto& w : ex.maximizers) who += (who.empty() ? "" : " ") + w.to_string();
    r.lines.push_back("n=" + std::to_string(n) + " max=" + to_fraction_string(ex.max) +
                      " v_n=" + to_fraction_string(vn.v[n]) + " maximizers: " + who);
    if (b.window != 2) continue;
    r.check(ex.max == vn.v[n], "max word probability equals v_" + std::to_string(n));
    bool alternating_max = false;
    for (const auto& w : ex.maximizers) alternating_max |= w == alternating_word(n, 1) || w == alternating_word(n, 0);
    r.check(alternating_max, "alternating word attains the maximum at n=" + std::to_string(n));
    r.check(ex.min == pow(AlphaBeta(2).alpha, static_cast<unsigned>(n)), "minimum is alpha^n at n=" + std::to_string(n));
  }
  if (b.window == 2) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b.n); ++mask) {
      const BinaryWord w = word_from_mask(mask, b.n);
      if (!verify_suffix_bounds_m2(w).ok()) {
        r.check(false, "suffix bounds for word " + w.to_string());
        break;
      }
    }
  } else {
    r.lines.push_back("M != 2: maximizers reported, not asserted");
  }
  return r;
}

Result two_blocks(const Bounds& b) {
  Result r;
  const std::size_t m = b.window;
  const TwoBlockTable t = u_table(m, b.n, b.n);
  const std::vector<Rational> v = vn_single_recursion(m, b.n);
  for (std::size_t p = 0; p <= b.n; ++p) {
    for (std::size_t q = 0; p + q <= b.n; ++q) {
      const Rational exact = exact_seen_probability(two_block_word(p, q), m, Rational(1, 2));
      const bool ok = exact <= t.u[p][q] && t.u[p][q] <= v[p + q];
      r.check(ok, "P(W_{" + std::to_string(p) + "," + std::to_string(q) + "}) = " +
                      to_fraction_string(exact) + " <= u = " + to_fraction_string(t.u[p][q]) +
                      " <= v = " + to_fraction_string(v[p + q]));
    }
  }
  r.lines.push_back("checked all p+q <= " + std::to_string(b.n) + " at M=" + std::to_string(m));
  return r;
}

Result spacing(const Bounds& b) {
  Result r;
  const std::size_t m = b.window;
  for (std::size_t n = 1; n <= b.n; ++n) {
    const std::size_t len = n * m;
    if (len > 22) {
      r.lines.push_back("skipping n=" + std::to_string(n) + " (2^" + std::to_string(len) + " prefixes)");
      continue;
    }
    const BinaryWord constant = constant_word(n), alternating = alternating_word(n);
    std::size_t mismatches = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      const SequencePrefix y = prefix_from_mask(mask, len);
      const auto pc = spacing_profile(constant, extend(y, constant));
      const auto pa = spacing_profile(alternating, extend(y, alternating));
      if (is_m_seen(constant, y, m) != constant_seen_by_spacings(pc, m, n)) ++mismatches;
      if (is_m_seen(alternating, y, m) != alternating_seen_by_spacings(pa, m, n)) ++mismatches;
    }
    r.check(mismatches == 0, "spacing characterizations agree for n=" + std::to_string(n) +
                                 " over 2^" + std::to_string(len) + " prefixes");
  }
  const auto w = two_block_word(2, 2);
  const auto profile = spacing_profile(w, SequencePrefix::parse("110110"));
  r.check(profile.gaps == std::vector<std::size_t>{1, 1, 1, 3}, "tau = (1,1,1,3) for 1100 in 110110");
  r.check(is_m_seen(w, SequencePrefix::parse("11011000"), 2) &&
              !is_m_seen(w, SequencePrefix::parse("11011011"), 2),
          "1100 visibility differs across the two extensions of 110110");
  return r;
}

Result moments(const Bounds& b) {
  Result r;
  const std::size_t m = b.window;
  for (std::size_t n = 1; n <= b.n; ++n) {
    Rational best = 0, average = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const BinaryWord w = word_from_mask(mask, n);
      const Rational exact = second_moment_exact(w, m);
      if (n * m <= 16) {
        r.check(exact == second_moment_oracle(w, m), "second moment matches enumeration for " + w.to_string());
      }
      r.check(exact >= expected_embeddings(m, n) * expected_embeddings(m, n),
              "variance nonnegative for " + w.to_string());
      best = std::max(best, exact);
      average += exact;
    }
    average /= Rational(Integer(1) << static_cast<unsigned>(n));
    r.check(second_moment_exact(constant_word(n), m) == best,
            "constant word maximizes E(N^2) at n=" + std::to_string(n));
    r.check(average == random_word_second_moment(m, n),
            "random-word identity at n=" + std::to_string(n));
  }
  r.lines.push_back("checked all words of length <= " + std::to_string(b.n) + " at M=" + std::to_string(m));
  return r;
}

Result certificates(const Bounds& b) {
  Result r;
  for (std::size_t m = 2; m <= std::max<std::size_t>(b.window, 2); ++m) {
    const PolyPQ pq = pq_polynomials(m);
    bool nonneg = true;
    for (const auto& c : pq.q) nonneg &= c >= 0;
    r.check(nonneg, "Q has nonnegative coefficients at M=" + std::to_string(m));
  }
  const std::size_t m = std::max<std::size_t>(b.window, 2);
  const TwoBlockTable t = u_table(m, b.n + 1, b.n + 1);
  const AlphaBeta ab(m);
  RationalGrid alpha_grid(b.n + 2, std::vector<Rational>(b.n + 2));
  for (std::size_t p = 0; p < alpha_grid.size(); ++p) {
    for (auto& cell : alpha_grid[p]) cell = pow(ab.alpha, static_cast<unsigned>(p));
  }
  for (std::size_t p = 0; p <= b.n; ++p) {
    for (std::size_t q = 0; q <= b.n; ++q) {
      const std::string at = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      r.check(delta_operator(alpha_grid, m, p, q) == 0, "Delta alpha^p = 0 at " + at);
      r.check(delta_operator(t.u, m, p, q) <= 0, "Delta u <= 0 at " + at);
      r.check(delta_operator(t.w, m, p, q) >= 0, "Delta w >= 0 at " + at);
    }
  }
  for (std::size_t p = 0; p <= 4; ++p) {
    r.check(sigma_generating_identity(m, p, 12), "generating identity at p=" + std::to_string(p));
  }
  r.lines.push_back("grid p,q <= " + std::to_string(b.n) + " at M=" + std::to_string(m));
  return r;
}

Result renewal(const Bounds& b) {
  Result r;
  const RenewalTable t = renewal_table(b.window, b.N + 1);
  for (std::size_t n = 1; n <= b.N; ++n) {
    r.check(t.u[n + 1] <= t.u[n], "u_n non-increasing at n=" + std::to_string(n));
    r.check(t.V[n] * t.V[n] >= t.V[n + 1] * t.V[n - 1], "V log-concave at n=" + std::to_string(n));
  }
  r.lines.push_back("u_n and V_n checked for n <= " + std::to_string(b.N) + " at M=" + std::to_string(b.window));
  return r;
}

Result coupling(const Bounds& b) {
  Result r;
  RngConfig rng{b.seed};
  std::size_t failures = 0, ones = 0, letters = 0;
  const double p = 0.5, p1 = 0.5;
  for (std::size_t s = 0; s < b.trials; ++s) {
    auto gen = rng.stream(s);
    const SequencePrefix x = sample_sequence(p, 64, gen);
    const CouplingOutput out = coupling_f(x, p1, gen);
    std::size_t prev = 0;
    for (std::size_t k = 1; k <= out.letters.size(); ++k) {
      const std::size_t pos = out.source[k - 1];
      if (pos <= prev || pos - prev > 3 || x.at(pos) != out.letters.at(k)) ++failures;
      prev = pos;
      ones += out.letters.at(k);
      ++letters;
    }
  }
  r.check(failures == 0, "coupling output 3-seen in its input on every sample");
  const double target = stage_output(p, p1);
  const double sigma = std::sqrt(target * (1 - target) / static_cast<double>(letters));
  const double mean = static_cast<double>(ones) / static_cast<double>(letters);
  r.check(std::abs(mean - target) <= 4 * sigma, "coupled parameter within 4 sigma");
  for (auto [from, to] : {std::pair{0.5, 0.25}, std::pair{0.9, 0.1}, std::pair{0.3, 0.7}}) {
    const ChainReport rep = coupling_chain_demo(from, to, 16, 200, rng);
    std::ostringstream line;
    line << "chain " << from << " -> " << to << ": k=" << rep.path.stages.size()
         << " M=" << rep.path.window() << " empirical p'=" << rep.empirical_p;
    r.lines.push_back(line.str());
    r.check(rep.ok(), line.str());
  }
  return r;
}

const std::map<std::string, std::function<Result(const Bounds&)>>& suites() {
  static const std::map<std::string, std::function<Result(const Bounds&)>> table{
      {"thm1a", maximizers}, {"thm1b", two_blocks}, {"thm3", spacing}, {"thm4", moments},
      {"lemma43", certificates}, {"renewal", renewal}, {"coupling", coupling},
  };
  return table;
}

}  // namespace

void Result::check(bool ok, const std::string& what) {
  if (ok) return;
  if (pass) failures.push_back("counterexample: " + what);
  pass = false;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

Result run_suite(const std::string& name, const Bounds& bounds) {
  auto it = suites().find(name);
  if (it == suites().end()) throw std::invalid_argument("unknown suite " + name);
  return it->second(bounds);
}

}  // namespace wordperc::verify
