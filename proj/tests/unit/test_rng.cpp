#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ulik/rng.hpp"

namespace ulik {
namespace {

// Known-answer vectors of the Philox4x32-10 reference implementation.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                              {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPiDigits) {
  const auto out = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                              {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

// Reference quantiles from mpmath at 30 digits: -sqrt(2) erfinv(1 - 2p).
TEST(NormalQuantile, MatchesHighPrecisionReference) {
  const std::pair<double, double> cases[] = {
      {1e-10, -6.361340902404057},   {0.001, -3.0902323061678136},
      {0.02425, -1.972961051311885}, {0.1, -1.2815515655446004},
      {0.7, 0.5244005127080407},     {0.975, 1.9599639845400538},
      {0.999999, 4.753424308817087}, {1e-300, -37.0470962993612},
  };
  for (const auto& [p, z] : cases) EXPECT_NEAR(normal_quantile(p), z, 4e-15 * std::fabs(z)) << p;
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
  EXPECT_TRUE(std::isinf(normal_quantile(1.0)));
}

TEST(NormalQuantile, IsAntisymmetric) {
  for (double p = 0.001; p < 0.5; p += 0.0137)
    EXPECT_NEAR(normal_quantile(p), -normal_quantile(1.0 - p), 1e-12);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DifferentStreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  EXPECT_NE(a.next_u64(), b.next_u64());
  RngStream a2(42, 7);
  EXPECT_NE(a2.next_u64(), c.next_u64());
}

TEST(RngStream, SubstreamIgnoresParentPosition) {
  RngStream parent(9);
  const RngStream before = parent.substream(3);
  for (int i = 0; i < 17; ++i) parent.next_u64();
  RngStream x = before;
  RngStream y = parent.substream(3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(x.next_u64(), y.next_u64());
  EXPECT_NE(parent.substream(3).next_u64(), parent.substream(4).next_u64());
}

TEST(RngStream, UniformRanges) {
  RngStream r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    const double v = r.uniform_open();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(RngStream, ExponentialMeanIsOne) {
  RngStream r(5);
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.exponential();
  EXPECT_NEAR(sum / n, 1.0, 0.003);
}

TEST(RngStream, NormalMoments) {
  RngStream r(6);
  const int n = 1'000'000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s1 += z;
    s2 += z * z;
  }
  // 4 standard errors.
  EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace ulik
