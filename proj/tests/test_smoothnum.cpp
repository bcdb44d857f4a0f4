// Copyright 2026 The shiftsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/smoothnum.hpp"

namespace shiftsieve::smooth {
namespace {

std::uint64_t brute_smooth(std::uint64_t x, double z) {
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n) c += is_smooth(n, z) ? 1 : 0;
  return c;
}

std::uint64_t brute_rough(std::uint64_t x, double z) {
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    bool ok = true;
    for (std::uint64_t p = 2; p <= z && ok; ++p) {
      if (is_prime(p) && n % p == 0) ok = false;
    }
    c += ok ? 1 : 0;
  }
  return c;
}

TEST(SmoothCount, Examples) {
  EXPECT_EQ(smooth_count(10, 2), 4u);
  EXPECT_EQ(smooth_count(100, 5), 34u);
  EXPECT_EQ(smooth_count(100, 5), brute_smooth(100, 5));
  EXPECT_EQ(smooth_count(57.5, 100), 57u);
}

TEST(SmoothCount, MatchesEnumeration) {
  for (double z : {2.0, 3.0, 7.0, 10.0, 30.0, 100.0}) {
    for (std::uint64_t x : {1u, 2u, 99u, 1000u, 12345u}) {
      EXPECT_EQ(smooth_count(x, z), brute_smooth(x, z)) << x << " " << z;
    }
  }
}

TEST(SmoothCount, ComplementCountsRoughPart) {
  for (double z : {5.0, 13.0, 50.0}) {
    const std::uint64_t x = 20000;
    std::uint64_t non_smooth = 0;
    for (std::uint64_t n = 1; n <= x; ++n) non_smooth += is_smooth(n, z) ? 0 : 1;
    EXPECT_EQ(smooth_count(x, z) + non_smooth, x);
  }
}

TEST(Rankin, Examples) {
  EXPECT_NEAR(rankin_alpha_bound(10, 2, 1.0), 20.0, 1e-12);
  EXPECT_GE(rankin_alpha_bound(100, 5, 0.9), 34.0);
  EXPECT_THROW(rankin_alpha_bound(10, 2, 0.0), Error);
  const double a = 1.0 - 1.0 / std::log(100.0);
  EXPECT_GE(rankin_alpha_bound(1e6, 100, a), static_cast<double>(smooth_count(1e6, 100)));
}

// The exact inequality on the full grid.
TEST(Rankin, CountNeverExceedsBound) {
  for (double x : {1e3, 1e4, 1e5, 1e6}) {
    for (double z : {10.0, 30.0, 100.0}) {
      const double count = static_cast<double>(smooth_count(x, z));
      for (double alpha : {0.5, 0.7, 0.9, 1.0 - 1.0 / std::log(z)}) {
        EXPECT_LE(count, rankin_alpha_bound(x, z, alpha)) << x << " " << z << " " << alpha;
      }
    }
  }
}

TEST(RoughCount, Examples) {
  EXPECT_EQ(rough_count(30, 5).count, 8u);
  EXPECT_NEAR(rough_count(30, 5).main, 8.0, 1e-12);
  EXPECT_EQ(rough_count(7, 7).count, 1u);
}

TEST(RoughCount, LegendreBoundExhaustive) {
  for (double z : {2.0, 3.0, 5.0, 7.0, 11.0, 13.0}) {
    const auto table = rough_count_table(100000, z);
    for (std::uint64_t x = 1; x <= 100000; x += (x < 2000 ? 1 : 97)) {
      const auto r = rough_count(static_cast<double>(x), z);
      ASSERT_EQ(r.count, table[x]);
      EXPECT_LE(std::abs(static_cast<double>(r.count) - r.main), r.legendre_bound);
    }
    EXPECT_EQ(table[1000], brute_rough(1000, z));
  }
}

TEST(ReciprocalTail, Examples) {
  double h = 0.0;
  for (int a = 2; a <= 50; ++a) h += 1.0 / a;
  EXPECT_NEAR(smooth_reciprocal_tail(50, 60, 0.0), h, 1e-13);
  double pow2 = 0.0;
  for (int a = 2; a <= 64; a *= 2) pow2 += 1.0 / a;
  EXPECT_NEAR(smooth_reciprocal_tail(100, 2, 1.0 / 16.0), pow2, 1e-15);
  // Nothing 3-smooth in (97^{0.999}, 97].
  EXPECT_EQ(smooth_reciprocal_tail(97, 3, 0.9999), 0.0);
}

}  // namespace
}  // namespace shiftsieve::smooth
