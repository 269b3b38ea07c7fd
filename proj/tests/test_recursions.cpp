#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "wordperc/exactprob.hpp"
#include "wordperc/recursions.hpp"

using namespace wordperc;

namespace {

// sigma at p = 1/2 by enumerating the first pM letters: the gaps between
// successive ones are the spacing variables of an all-ones word.
Rational sigma_by_enumeration(std::size_t m, std::size_t p, std::size_t j) {
  const std::size_t len = p * m;
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    std::size_t last = 0, ones = 0;
    bool short_gaps = true;
    for (std::size_t i = 1; i <= len; ++i) {
      if (!((mask >> (i - 1)) & 1u)) continue;
      ++ones;
      if (ones <= p && i - last > m) short_gaps = false;
      last = i;
    }
    if (ones < p) short_gaps = false;
    if (short_gaps && ones < p + j) total += 1;
  }
  return total / Rational(Integer(1) << static_cast<unsigned>(len));
}

}  // namespace

TEST_CASE("alpha and beta") {
  const AlphaBeta ab(3);
  CHECK(ab.alpha == Rational(7, 8));
  CHECK(ab.beta == Rational(1, 8));
  for (std::size_t m = 2; m <= 10; ++m) {
    const AlphaBeta x(m);
    CHECK(x.alpha + x.beta == 1);
    CHECK(x.alpha - Rational(static_cast<long>(m)) * x.beta > 0);
  }
}

TEST_CASE("v_n tables") {
  const VnTable t = vn_pair_recursion(2, 6);
  CHECK(t.v[0] == 1);
  CHECK(t.vprime[0] == 0);
  CHECK(t.v[1] == Rational(3, 4));
  CHECK(t.vprime[1] == Rational(1, 4));
  CHECK(t.v[2] == Rational(5, 8));
  CHECK(exhaustive_seen_probability(alternating_word(2), 2) == Rational(5, 8));
  const auto single = vn_single_recursion(2, 6);
  CHECK(single[1] == Rational(3, 4));
  CHECK(single[2] == Rational(5, 8));
  CHECK(single[3] == t.v[3]);
  CHECK_THROWS_AS(vn_pair_recursion(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(vn_single_recursion(1, 3), std::invalid_argument);
}

TEST_CASE("v_n invariants") {
  for (std::size_t m = 2; m <= 6; ++m) {
    const VnTable t = vn_pair_recursion(m, 40);
    const auto single = vn_single_recursion(m, 40);
    const AlphaBeta ab(m);
    for (std::size_t n = 1; n <= 40; ++n) {
      Rational sum = 0;
      for (const auto& x : t.by_start[n]) sum += x;
      REQUIRE(sum == t.v[n]);
      REQUIRE(t.by_start[n].back() == t.vprime[n]);
      REQUIRE(t.v[n] <= t.v[n - 1]);
      REQUIRE(t.v[n] >= pow(ab.alpha, static_cast<unsigned>(n)));
      REQUIRE(single[n] == t.v[n]);
    }
    for (std::size_t k = 1; k <= m; ++k) CHECK(t.by_start[1][k - 1] == Rational(1, 1u << k));
  }
}

TEST_CASE("v_n starting positions against standard embeddings") {
  const std::size_t m = 3, n = 3, len = n * m;
  const VnTable t = vn_pair_recursion(m, n);
  std::vector<Rational> by_start(m, Rational(0));
  for (std::uint64_t mask = 0; mask < (1u << len); ++mask) {
    const auto e = standard_embedding(alternating_word(n), oracle::seq(mask, len), m);
    if (e) by_start[e->positions.front() - 1] += Rational(1, 1u << len);
  }
  CHECK(by_start == t.by_start[n]);
}

TEST_CASE("characteristic polynomial") {
  const CharPoly two = char_poly(2);
  CHECK(two.large_root == doctest::Approx((1 + std::sqrt(0.5)) / 2).epsilon(1e-12));
  CHECK(two.small_root == doctest::Approx((1 - std::sqrt(0.5)) / 2).epsilon(1e-12));
  CHECK(std::abs(char_poly(5).large_root - 0.9978) < 5e-5);
  for (std::size_t m = 2; m <= 12; ++m) {
    const CharPoly f = char_poly(m);
    const AlphaBeta ab(m);
    CHECK(f(Rational(1)) == 2 * ab.beta * ab.beta);
    CHECK(f.small_root > 0);
    CHECK(f.small_root < static_cast<double>(m) * ab.beta.get_d());
    CHECK(f.large_root > ab.alpha.get_d());
    CHECK(f.large_root < 1);
  }
  const VnTable t = vn_pair_recursion(2, 60);
  const Rational ratio = t.v[60] / t.v[59];
  CHECK(ratio.get_d() == doctest::Approx(0.853553).epsilon(1e-6));
}

TEST_CASE("sigma three ways") {
  CHECK(sigma_closed_form(2, 1, 1) == sigma_oracle(2, 1, 1).sigma);
  for (std::size_t m = 2; m <= 4; ++m) {
    const AlphaBeta ab(m);
    for (std::size_t p = 0; p <= 4; ++p) {
      for (std::size_t j = 0; p + j <= 8; ++j) {
        const Rational closed = sigma_closed_form(m, p, j);
        const SigmaPair dp = sigma_oracle(m, p, j);
        REQUIRE(closed == dp.sigma);
        REQUIRE(dp.sigma + dp.sigma_prime == pow(ab.alpha, static_cast<unsigned>(p)));
        if (p * m <= 16) REQUIRE(closed == sigma_by_enumeration(m, p, j));
      }
    }
  }
}

TEST_CASE("u table") {
  for (std::size_t m = 2; m <= 5; ++m) {
    const TwoBlockTable t = u_table(m, 6, 6);
    const AlphaBeta ab(m);
    const auto v = vn_single_recursion(m, 12);
    for (std::size_t p = 0; p <= 6; ++p) {
      CHECK(t.u[p][0] == pow(ab.alpha, static_cast<unsigned>(p)));
      CHECK(t.u[0][p] == pow(ab.alpha, static_cast<unsigned>(p)));
      for (std::size_t q = 0; q <= 6; ++q) {
        REQUIRE(t.u[p][q] >= 0);
        REQUIRE(t.u[p][q] <= 1);
        REQUIRE(t.delta[p][q] == v[p + q] - t.u[p][q]);
        REQUIRE(t.delta[p][q] >= 0);
        REQUIRE(t.sigma[p][q] + t.sigma_prime[p][q] == pow(ab.alpha, static_cast<unsigned>(p)));
        if (p + q <= 5) {
          REQUIRE(exact_seen_probability(two_block_word(p, q), m, Rational(1, 2)) <= t.u[p][q]);
        }
      }
    }
  }
  CHECK_THROWS_AS(u_table(2, 50, 2), BudgetExceeded);
}

TEST_CASE("difference operator") {
  const std::size_t m = 3;
  const TwoBlockTable t = u_table(m, 7, 7);
  const AlphaBeta ab(m);
  RationalGrid ap(8, std::vector<Rational>(8));
  for (std::size_t p = 0; p < 8; ++p) {
    for (auto& c : ap[p]) c = pow(ab.alpha, static_cast<unsigned>(p));
  }
  for (std::size_t p = 0; p <= 6; ++p) {
    for (std::size_t q = 0; q <= 6; ++q) {
      CHECK(delta_operator(ap, m, p, q) == 0);
      CHECK(delta_operator(t.u, m, p, q) <= 0);
      CHECK(delta_operator(t.w, m, p, q) >= 0);
    }
  }
  CHECK_THROWS_AS(delta_operator(t.u, m, 7, 0), std::out_of_range);
}

TEST_CASE("P and Q polynomials") {
  for (std::size_t m = 2; m <= 20; ++m) {
    const PolyPQ pq = pq_polynomials(m);
    const AlphaBeta ab(m);
    Rational at_one = 0, partial = 0;
    for (const auto& c : pq.p) at_one += c;
    CHECK(at_one == 0);
    CHECK(pq.p[2] == Rational(binomial(m, 2)) - 2 * (ab.alpha - Rational(static_cast<long>(m)) * ab.beta));
    for (std::size_t l = 0; l < pq.q.size(); ++l) {
      partial += pq.p[l];
      REQUIRE(pq.q[l] == partial);
      REQUIRE(pq.q[l] >= 0);
      if (l >= 2) REQUIRE(pq.q[l] == q_coefficient_closed_form(m, l));
    }
    CHECK(pq.q[m] == 1 - 2 * ab.beta);
  }
}

TEST_CASE("sigma generating identity") {
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t p = 0; p <= 4; ++p) CHECK(sigma_generating_identity(m, p, 12));
  }
  CHECK(sigma_generating_identity(3, 2, 10));
}

TEST_CASE("suffix bounds for M = 2") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::uint64_t wm = 0; wm < (1u << n); ++wm) {
      const auto report = verify_suffix_bounds_m2(oracle::word(wm, n));
      REQUIRE(report.ok());
      CHECK(report.rows.front().total == Rational(3, 4));
      CHECK(report.rows.front().start2 == Rational(1, 4));
    }
    const auto alt = verify_suffix_bounds_m2(alternating_word(n));
    const VnTable t = vn_pair_recursion(2, n);
    for (const auto& row : alt.rows) CHECK(row.total == t.v[row.m]);
  }
  bool strict = false;
  for (std::uint64_t wm = 0; wm < 64 && !strict; ++wm) {
    for (const auto& row : verify_suffix_bounds_m2(oracle::word(wm, 6)).rows) strict |= row.strict_22;
  }
  CHECK(strict);
}

TEST_CASE("csv writers") {
  std::ostringstream vn;
  write_vn_csv(vn, vn_pair_recursion(2, 3));
  CHECK(vn.str().find("2,5,8,0.625000000000") != std::string::npos);
  std::ostringstream tb;
  write_two_block_csv(tb, u_table(2, 2, 2));
  CHECK(tb.str().rfind("p,q", 0) == 0);
}
