#include <doctest.h>

#include "oracles.hpp"
#include "wordperc/core.hpp"

using namespace wordperc;

TEST_CASE("word constructors") {
  CHECK(alternating_word(4).to_string() == "1010");
  CHECK(alternating_word(3, 0).to_string() == "010");
  CHECK(two_block_word(2, 2).to_string() == "1100");
  CHECK(constant_word(3, 0).to_string() == "000");
  CHECK(make_word(word_kind::Constant{1}, 0).empty());
  CHECK(make_word(word_kind::Explicit{{1, 0, 0}}, 3).to_string() == "100");
  CHECK_THROWS_AS(make_word(word_kind::Constant{1}, -1), std::invalid_argument);
  CHECK_THROWS_AS(make_word(word_kind::TwoBlock{2, 2}, 5), std::invalid_argument);
  CHECK_THROWS_AS(BinaryWord::parse("102"), std::invalid_argument);
  CHECK(BinaryWord::parse("0110").complement().to_string() == "1001");
}

TEST_CASE("is_m_seen on the two extensions of 110110") {
  const auto w = two_block_word(2, 2);
  CHECK(is_m_seen(w, SequencePrefix::parse("11011000"), 2));
  CHECK_FALSE(is_m_seen(w, SequencePrefix::parse("11011011"), 2));
  CHECK_THROWS_AS(is_m_seen(w, SequencePrefix::parse("1101"), 2), std::invalid_argument);
}

TEST_CASE("standard embedding") {
  const auto e = standard_embedding(two_block_word(2, 2), SequencePrefix::parse("11011001"), 2);
  REQUIRE(e);
  CHECK(e->positions == std::vector<std::size_t>{2, 4, 6, 7});
  const auto e8 = standard_embedding(two_block_word(2, 2), SequencePrefix::parse("11011010"), 2);
  REQUIRE(e8);
  CHECK(e8->positions == std::vector<std::size_t>{2, 4, 6, 8});
  const auto f = standard_embedding(BinaryWord::parse("11"), SequencePrefix::parse("0101"), 2);
  REQUIRE(f);
  CHECK(f->positions == std::vector<std::size_t>{2, 4});
  CHECK_FALSE(standard_embedding(BinaryWord::parse("11"), SequencePrefix::parse("0100"), 2));
}

TEST_CASE("embedding search agrees with enumeration of position sequences") {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t len = n * m;
      for (std::uint64_t wm = 0; wm < (1u << n); ++wm) {
        const auto w = oracle::word(wm, n);
        for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << len); ++ym) {
          const auto y = oracle::seq(ym, len);
          const auto all = oracle::all_embeddings(w, y, m);
          REQUIRE(is_m_seen(w, y, m) == !all.empty());
          REQUIRE(count_embeddings(w, y, m) == all.size());
          const auto st = standard_embedding(w, y, m);
          REQUIRE(st.has_value() == !all.empty());
          if (st) REQUIRE(st->positions == all.front());
        }
      }
    }
  }
}

TEST_CASE("embeddings are increasing with gaps in 1..M and match letters") {
  const auto w = BinaryWord::parse("1001");
  const auto y = SequencePrefix::parse("110010011001");
  std::size_t visits = 0;
  for_each_embedding(w, y, 3, [&](std::span<const std::size_t> pos) {
    ++visits;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      CHECK(pos[i] > prev);
      CHECK(pos[i] - prev <= 3);
      CHECK(y.at(pos[i]) == w.at(i + 1));
      prev = pos[i];
    }
  });
  CHECK(visits == count_embeddings(w, y, 3));
}

TEST_CASE("seen is monotone in M and in extending Y") {
  for (std::uint64_t ym = 0; ym < (1u << 12); ym += 7) {
    const auto y = oracle::seq(ym, 12);
    const auto w = BinaryWord::parse("1011");
    CHECK((!embeds_within(w, y, 2) || embeds_within(w, y, 3)));
    CHECK((!embeds_within(w, y.prefix(8), 3) || embeds_within(w, y, 3)));
  }
}

TEST_CASE("spacing profile") {
  const auto a = spacing_profile(two_block_word(2, 2), SequencePrefix::parse("110110"));
  CHECK(a.gaps == std::vector<std::size_t>{1, 1, 1, 3});
  CHECK(a.hits == std::vector<std::size_t>{1, 2, 3, 6});
  const auto b = spacing_profile(BinaryWord::parse("01"), SequencePrefix::parse("1101"));
  CHECK(b.hits == std::vector<std::size_t>{3, 4});
  CHECK(b.gaps == std::vector<std::size_t>{3, 1});
  CHECK(b.T(0) == 0);
  CHECK_THROWS_AS(spacing_profile(BinaryWord::parse("00"), SequencePrefix::parse("101")), std::domain_error);
}

TEST_CASE("spacing characterizations") {
  CHECK_FALSE(constant_seen_by_spacings(SpacingProfile::from_gaps({1, 1, 1, 3}), 2, 4));
  CHECK(constant_seen_by_spacings(SpacingProfile::from_hits({2, 4}), 2, 2));
  const auto s = s_sequence(SpacingProfile::from_hits({1, 2, 3, 4}), 2);
  CHECK(s == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(s_sequence(SpacingProfile::from_hits({1, 5, 6}), 2)[1] == 2);
}

TEST_CASE("spacing characterizations agree with is_m_seen") {
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t n = 1; n * m <= 12; ++n) {
      const std::size_t len = n * m;
      const auto c = constant_word(n), a = alternating_word(n);
      for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << len); ++ym) {
        const auto y = oracle::seq(ym, len);
        std::vector<Bit> ext(y.bits().begin(), y.bits().end());
        for (std::size_t i = 0; i < n; ++i) ext.push_back(static_cast<Bit>(i % 2 == 0));
        const SequencePrefix ya(ext);
        std::vector<Bit> ones(y.bits().begin(), y.bits().end());
        ones.insert(ones.end(), n, 1);
        const SequencePrefix yc(ones);
        REQUIRE(is_m_seen(c, y, m) == constant_seen_by_spacings(spacing_profile(c, yc), m, n));
        REQUIRE(is_m_seen(a, y, m) == alternating_seen_by_spacings(spacing_profile(a, ya), m, n));
      }
    }
  }
}

TEST_CASE("reach frontier accepts exactly when a prefix is seen") {
  const auto w = BinaryWord::parse("0110");
  for (std::uint64_t ym = 0; ym < (1u << 8); ++ym) {
    const auto y = oracle::seq(ym, 8);
    ReachFrontier f(w, 2);
    for (std::size_t i = 1; i <= 8 && !f.accepted() && !f.dead(); ++i) f.advance(y.at(i));
    CHECK(f.accepted() == oracle::seen(w, y, 2));
  }
}
