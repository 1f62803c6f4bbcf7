#include <gtest/gtest.h>

#include <cmath>

#include "dhilbert/rng.hpp"

using namespace dhilbert;

// Known-answer vectors published with the Random123 library (philox4x32_10).
TEST(Philox, KnownAnswers) {
  using B = Philox4x32::Block;
  EXPECT_EQ(Philox4x32::encrypt(B{0, 0, 0, 0}, {0, 0}), (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, EngineWalksTheCounter) {
  Philox4x32 e(0, 0);
  const auto first = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
  for (auto w : first) EXPECT_EQ(e(), w);
  const auto second = Philox4x32::encrypt({1, 0, 0, 0}, {0, 0});
  EXPECT_EQ(e(), second[0]);
}

TEST(RngStream, PureFunctionOfSeedAndIndex) {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_NE(x, d.uniform());
  }
}

TEST(RngStream, Moments) {
  RngStream s(1, 0);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, se = 0;
  long plus = 0;
  std::uint64_t below[5] = {};
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
    se += s.exponential();
    plus += s.sign() > 0;
    ++below[s.below(5)];
  }
  // Tolerances are ~5 standard errors.
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 5 * std::sqrt(2.0 / n));
  EXPECT_NEAR(se / n, 1.0, 5 / std::sqrt(n));
  EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, 5 * 0.5 / std::sqrt(n));
  for (auto c : below) EXPECT_NEAR(static_cast<double>(c) / n, 0.2, 5 * 0.4 / std::sqrt(n));
}
