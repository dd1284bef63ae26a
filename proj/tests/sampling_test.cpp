#include <gtest/gtest.h>

#include "kzdual/sampling.hpp"

using namespace kzdual;

namespace {

TEST(SplitMix64, ReferenceStream) {
  // Published reference outputs for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SamplePoint, SingleFactorShape) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ParamPoint p = sample_point(seed, 1, 1, false, 1);
    ASSERT_EQ(p.z.size(), 1u);
    ASSERT_EQ(p.lam.size(), 1u);
    EXPECT_FALSE(p.t.has_value());
    EXPECT_NE(sgn(p.z[0]), 0);
    EXPECT_NE(sgn(p.lam[0]), 0);
    EXPECT_NE(sgn(p.kappa), 0);
    EXPECT_EQ(Rat(p.z[0] * 7).get_den(), 1);
    EXPECT_EQ(Rat(p.lam[0] * 11).get_den(), 1);
    EXPECT_EQ(Rat(p.kappa * 13).get_den(), 1);
    EXPECT_LE(Rat(abs(p.z[0] * 7)), 20);
  }
}

TEST(SamplePoint, Deterministic) {
  EXPECT_EQ(sample_point(123, 3, 2, true, 5), sample_point(123, 3, 2, true, 5));
  EXPECT_NE(sample_point(123, 3, 2, true, 5), sample_point(124, 3, 2, true, 5));
}

TEST(SamplePoint, FirstDrawsMatchIndependentDecoding) {
  // Decode the raw stream by hand: numerator = raw % 40 mapped onto
  // [-20, 20] without 0, denominators 7, 11, 13, 17 in draw order.
  auto decode = [](std::uint64_t raw) {
    const long idx = static_cast<long>(raw % 40);
    return idx < 20 ? idx - 20 : idx - 19;
  };
  SplitMix64 rng(5);
  std::vector<long> nums;
  for (int j = 0; j < 4; ++j) nums.push_back(decode(rng.next()));
  const ParamPoint candidate{{make_rat(nums[0], 7)}, {make_rat(nums[1], 11)}, make_rat(nums[2], 13),
                             make_rat(nums[3], 17)};
  if (point_is_nonsingular(candidate, 2)) EXPECT_EQ(sample_point(5, 1, 1, true, 2), candidate);
}

TEST(SamplePoint, ShiftedDifferencesAreNeverIntegers) {
  for (std::uint64_t seed = 1; seed < 400; ++seed) {
    const ParamPoint p = sample_point(seed, 2, 2, true, 5);
    for (int c = -2; c <= 2; ++c) {
      EXPECT_FALSE(is_integer(Rat(p.z[0] - p.z[1] + c * p.kappa)));
      EXPECT_FALSE(is_integer(Rat(p.lam[0] - p.lam[1] + c * p.kappa)));
    }
    EXPECT_FALSE(is_integer(*p.t));
    EXPECT_FALSE(is_integer(p.kappa));
    EXPECT_NE(p.z[0], p.z[1]);
    EXPECT_NE(p.lam[0], p.lam[1]);
  }
}

TEST(SamplePoint, SeedOneTwoByTwo) {
  const ParamPoint p = sample_point(1, 2, 2, false, 3);
  EXPECT_FALSE(is_integer(Rat(p.z[0] - p.z[1] - p.kappa)));
  EXPECT_TRUE(point_is_nonsingular(p, 3));
}

TEST(SamplePoint, RejectsSingularCandidates) {
  ParamPoint p{{make_rat(1, 7), make_rat(8, 7)}, {make_rat(1, 11)}, make_rat(1, 13), std::nullopt};
  EXPECT_FALSE(point_is_nonsingular(p, 3));  // z_1 - z_2 = -1
  p.z[1] = make_rat(2, 7);
  EXPECT_TRUE(point_is_nonsingular(p, 3));
  p.kappa = make_rat(13, 13);
  EXPECT_FALSE(point_is_nonsingular(p, 3));
}

TEST(ParamPoint, SwapAndShift) {
  const ParamPoint p{{make_rat(1, 7), make_rat(2, 7)}, {make_rat(3, 11)}, make_rat(1, 13), make_rat(1, 17)};
  const ParamPoint s = p.swapped();
  EXPECT_EQ(s.z, p.lam);
  EXPECT_EQ(s.lam, p.z);
  EXPECT_EQ(s.swapped(), p);
  EXPECT_EQ(p.with_z_shift(1, p.kappa).z[1], make_rat(2, 7) + make_rat(1, 13));
  EXPECT_EQ(p.with_lam_shift(0, p.kappa).lam[0], make_rat(3, 11) + make_rat(1, 13));
}

}  // namespace
