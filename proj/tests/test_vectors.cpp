#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "test_support.hpp"
#include "unimod/vectors.hpp"

namespace unimod {
namespace {

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

TEST(Unimodular, Examples) {
  const auto r = make_ring(RingSpec::zps(3, 2));
  EXPECT_TRUE(is_unimodular(make_vector(*r, {3, 2})));
  EXPECT_FALSE(is_unimodular(make_vector(*r, {3, 6})));
  EXPECT_FALSE(is_unimodular(make_vector(*r, {0, 0})));
}

TEST(Unimodular, ConstructionErrors) {
  const auto a = make_ring(RingSpec::zps(3, 2));
  const auto b = make_ring(RingSpec::zps(3, 2));
  EXPECT_EQ(error_of([] { RingVector(std::vector<Element>{}); }), Errc::dimension_mismatch);
  EXPECT_EQ(error_of([&] { RingVector({a->one(), b->one()}); }), Errc::mixed_rings);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_unimodular(*make_ring(RingSpec::zps(3, 1)), 2).size(), 8u);
  EXPECT_EQ(enumerate_unimodular(*make_ring(RingSpec::zps(3, 2)), 2).size(), 72u);
  EXPECT_EQ(enumerate_unimodular(*make_ring(RingSpec::chain(3, 2)), 2).size(), 72u);
}

TEST(Enumerate, LexicographicOrder) {
  const auto r = make_ring(RingSpec::zps(3, 1));
  const auto vs = enumerate_unimodular(*r, 2);
  std::vector<std::string> text;
  for (const auto& v : vs) text.push_back(format_vector(v));
  EXPECT_EQ(text, (std::vector<std::string>{"(0,1)", "(0,2)", "(1,0)", "(1,1)", "(1,2)", "(2,0)", "(2,1)", "(2,2)"}));
}

TEST(Enumerate, TooLarge) {
  const auto r = make_ring(RingSpec::zps(3, 3), RingOptions{500});
  EXPECT_NO_THROW(enumerate_unimodular(*r, 1));
  EXPECT_EQ(error_of([&] { enumerate_unimodular(*r, 2); }), Errc::too_large);
  EXPECT_EQ(error_of([&] { enumerate_unimodular(*r, 40); }), Errc::too_large);
}

// Complement law against a plain filter over R^n.
TEST(Enumerate, ComplementLawExhaustive) {
  for (const auto& ring : testing::small_rings(27)) {
    for (std::size_t n = 1; n <= 3; ++n) {
      if (n == 3 && ring->cardinality() > 9) continue;
      const auto card = ring->cardinality();
      std::uint64_t total = 1, ideal = 1;
      for (std::size_t i = 0; i < n; ++i) {
        total *= card;
        ideal *= ring->maximal_ideal_size();
      }
      std::uint64_t filtered = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        bool any_unit = false;
        for (std::size_t i = 0; i < n; ++i) {
          any_unit = any_unit || ring->is_unit(ring->from_code(rest % card));
          rest /= card;
        }
        filtered += any_unit;
      }
      const auto vs = enumerate_unimodular(*ring, n);
      ASSERT_EQ(vs.size(), filtered) << ring->label() << " n=" << n;
      ASSERT_EQ(total - vs.size(), ideal) << ring->label() << " n=" << n;
      ASSERT_TRUE(std::is_sorted(vs.begin(), vs.end()));
    }
  }
}

TEST(Scaling, UnitScalingPreservesUnimodularity) {
  std::mt19937_64 rng(3);
  for (const auto& ring : testing::catalog_rings()) {
    if (ring->cardinality() > 27) continue;
    const auto vs = enumerate_unimodular(*ring, 2);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& v = vs[rng() % vs.size()];
      ASSERT_TRUE(is_unimodular(scale(testing::random_unit(*ring, rng), v)));
    }
  }
}

TEST(Literal, RoundTrip) {
  const auto r = make_ring(RingSpec::ext(3, {1, 0, 1}));
  const auto v = parse_vector(*r, "((1,2),(0,1))");
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(format_vector(v), "((1,2),(0,1))");
  EXPECT_EQ(error_of([&] { parse_vector(*r, "(1,2"); }), Errc::parse_error);
}

}  // namespace
}  // namespace unimod
