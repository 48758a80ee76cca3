#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "stochprice/random.hpp"

using namespace stochprice;

// Known-answer vectors published with Random123 for philox4x32-10.
TEST(Philox4x32, KnownAnswerVectors) {
  using P = Philox4x32;
  EXPECT_EQ(P::bijection({0, 0, 0, 0}, {0, 0}),
            (P::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(P::bijection({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                         {0xffffffff, 0xffffffff}),
            (P::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(P::bijection({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                         {0xa4093822, 0x299f31d0}),
            (P::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox4x32, StreamLayout) {
  // Block b of stream s is the bijection of counter {b_lo, b_hi, s_lo, s_hi}.
  const SeededStream s{0x0123456789abcdefull, 0x42ull};
  Philox4x32 rng(s);
  const Philox4x32::Key key{0x89abcdef, 0x01234567};
  for (std::uint32_t block = 0; block < 3; ++block) {
    const auto expect = Philox4x32::bijection({block, 0, 0x42, 0}, key);
    for (auto word : expect) EXPECT_EQ(rng(), word);
  }
}

TEST(Philox4x32, SameStreamSameSequence) {
  Philox4x32 a({7, 3}), b({7, 3}), c({7, 4}), d({8, 3});
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs_stream |= x != c();
    differs_seed |= x != d();
  }
  EXPECT_TRUE(differs_stream);
  EXPECT_TRUE(differs_seed);
}

TEST(Philox4x32, UniformIsOpenUnitInterval) {
  Philox4x32 rng({1, 0});
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // mean 1/2, sd of mean sqrt(1/12/n)
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12.0 / n));
}

TEST(NormalQuantile, MatchesBoostReference) {
  const boost::math::normal_distribution<double> ref;
  for (double p : {1e-300, 1e-16, 1e-10, 1e-5, 0.001, 0.02425, 0.024, 0.1, 0.3, 0.5, 0.7,
                   0.9, 0.97575, 0.999, 1 - 1e-10, 1 - 1e-16}) {
    const double expect = boost::math::quantile(ref, p);
    EXPECT_NEAR(normal_quantile(p), expect, 1e-13 * std::max(1.0, std::abs(expect))) << p;
  }
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    const double expect = boost::math::quantile(ref, p);
    EXPECT_NEAR(normal_quantile(p), expect, 1e-13) << p;
  }
}

TEST(NormalQuantile, Symmetry) {
  // Dyadic p keeps 1 - p exact.
  for (int i = 1; i < 512; ++i) {
    const double p = i / 1024.0;
    EXPECT_EQ(normal_quantile(p), -normal_quantile(1.0 - p));
  }
  EXPECT_EQ(normal_quantile(0.5), 0.0);
}

TEST(NormalQuantile, Boundaries) {
  EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
  EXPECT_TRUE(std::isinf(normal_quantile(1.0)));
  EXPECT_TRUE(std::isnan(normal_quantile(-0.1)));
}

TEST(UniformIndex, InRangeAndRoughlyUniform) {
  Philox4x32 rng({99, 0});
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = uniform_index(rng, 7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
}

TEST(DeriveSeed, DistinctTags) {
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}
