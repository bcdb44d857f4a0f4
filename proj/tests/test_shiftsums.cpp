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
#include <numeric>

#include "common.hpp"
#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/shiftsums.hpp"

namespace shiftsieve::shift {
namespace {

using testing::delta;
using testing::stub_table;

// Trial-division oracles, independent of the table's factorizer.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

double eta_oracle(const EigenvalueTable& t, std::uint64_t n) {
  double e = 1.0;
  for (auto [p, k] : factor(n)) {
    const double l2 = t(p) * t(p);
    e *= (p == 2 || p == 3) ? l2 : std::pow(l2, k);
  }
  return e;
}

bool coprime_to_primes_upto(std::uint64_t n, double z, std::uint64_t avoid = 1) {
  for (auto [p, k] : factor(n)) {
    (void)k;
    if (static_cast<double>(p) <= z && avoid % p != 0) return false;
  }
  return true;
}

std::uint64_t smooth_part(std::uint64_t n, double z) {
  std::uint64_t a = 1;
  for (auto [p, k] : factor(n)) {
    if (static_cast<double>(p) <= z) {
      for (int i = 0; i < k; ++i) a *= p;
    }
  }
  return a;
}

TEST(SmoothSplit, Examples) {
  EXPECT_EQ(smooth_split(1, 5.0).a, 1u);
  EXPECT_EQ(smooth_split(1, 5.0).b, 1u);
  EXPECT_EQ(smooth_split(14, 5.0).a, 2u);
  EXPECT_EQ(smooth_split(14, 5.0).b, 7u);
  EXPECT_EQ(smooth_split(98, 5.0).a, 2u);
  EXPECT_EQ(smooth_split(98, 5.0).b, 49u);
}

TEST(SmoothSplit, BijectionExhaustive) {
  const Factorizer& f = delta().factorizer();
  for (double z : {10.0, 100.0}) {
    for (std::uint64_t n = 1; n <= 100000; ++n) {
      const auto s = smooth_split(f, n, z);
      ASSERT_EQ(s.a * s.b, n);
      ASSERT_EQ(s.a, smooth_part(n, z)) << n;
      ASSERT_TRUE(coprime_to_primes_upto(s.b, z)) << n;
      const auto t = smooth_split(n, z);
      ASSERT_EQ(t.a, s.a);
      ASSERT_EQ(t.b, s.b);
    }
  }
}

TEST(ShiftedSum, Examples) {
  EXPECT_EQ(shifted_sum(stub_table(1.0, 200), 1, 100), 100.0);
  const double l2 = 24.0 / std::pow(2.0, 5.5);
  const double l3 = 252.0 / std::pow(3.0, 5.5);
  EXPECT_NEAR(shifted_sum(delta(), 1, 1), l2, 1e-15);
  EXPECT_NEAR(shifted_sum(delta(), 1, 1), 0.530330, 1e-6);
  EXPECT_NEAR(shifted_sum(delta(), 1, 2), l2 + l2 * l3, 1e-15);
  // Six-digit rounding of the two terms lands 2.5e-6 above the exact sum.
  EXPECT_NEAR(shifted_sum(delta(), 1, 2), 0.847859, 5e-6);
  EXPECT_THROW(shifted_sum(stub_table(1.0, 100), 1, 100), Error);
  EXPECT_THROW(shifted_sum(delta(), 0, 10), Error);
}

TEST(ShiftedSum, NegativeShiftIdentity) {
  // S_{-l}(x) = S_l(x - l) + sum_{n < l} |lambda(n) lambda(l - n)|.
  const auto stub = stub_table(1.0, 1000);
  for (std::int64_t l : {1, 2, 5, 17}) {
    const auto ul = static_cast<std::uint64_t>(l);
    EXPECT_EQ(shifted_sum(stub, -l, 500),
              shifted_sum(stub, l, 500 - ul) + static_cast<double>(ul - 1));
  }
  const auto& t = delta();
  for (std::int64_t l : {1, 3, 12}) {
    const auto ul = static_cast<std::uint64_t>(l);
    double boundary = 0.0;
    for (std::uint64_t n = 1; n < ul; ++n) boundary += std::abs(t(n) * t(ul - n));
    const double lhs = shifted_sum(t, -l, 50000);
    EXPECT_NEAR(lhs, shifted_sum(t, l, 50000 - ul) + boundary, 1e-11 * lhs);
  }
}

TEST(Eta, Examples) {
  const EtaFunction eta(delta());
  const auto& t = delta();
  EXPECT_EQ(eta_value(eta, 1), 1.0);
  EXPECT_NEAR(eta_value(eta, 4), 0.28125, 4 * 0x1p-53);
  EXPECT_EQ(eta_value(eta, 4), t(2) * t(2));
  EXPECT_EQ(eta_value(eta, 8), eta_value(eta, 2));
  EXPECT_NEAR(eta_value(eta, 25), std::pow(t(5), 4), 1e-15);
  EXPECT_NEAR(eta_value(eta, 12), t(2) * t(2) * t(3) * t(3), 1e-15);
}

TEST(Eta, MatchesOracleAndDominatesSquarefreePart) {
  const auto& t = delta();
  const EtaFunction eta(t, 100000);
  for (std::uint64_t b = 1; b <= 100000; ++b) {
    const double e = eta(b);
    ASSERT_NEAR(e, eta_oracle(t, b), 1e-12 * std::max(1.0, e)) << b;
    const double mu2 = is_squarefree(b) ? 1.0 : 0.0;
    ASSERT_GE(e, t(b) * t(b) * mu2 - 1e-12) << b;
  }
  // Past the cached range the factorized path takes over.
  const EtaFunction small(t, 1000);
  for (std::uint64_t b : {1001u, 4096u, 7560u, 99991u}) {
    EXPECT_NEAR(small.value(b), eta(b), 1e-14 * std::max(1.0, eta(b)));
  }
}

TEST(Partition, StubCountsMatchClassification) {
  const auto stub = stub_table(1.0, 200);
  const auto p = partition_sums(stub, 1, 100, 5.0);
  const double thr = std::pow(100.0, 1.0 / 16.0);
  double A = 0, Al = 0, star = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    const bool big = static_cast<double>(smooth_part(n, 5.0)) > thr;
    const bool big_l = static_cast<double>(smooth_part(n + 1, 5.0)) > thr;
    A += big;
    Al += big_l;
    star += !big && !big_l;
  }
  EXPECT_EQ(p.S_total, 100.0);
  EXPECT_EQ(p.S_A, A);
  EXPECT_EQ(p.S_Al, Al);
  EXPECT_EQ(p.S_star, star);
  EXPECT_LE(p.S_total, p.S_A + p.S_Al + p.S_star);
}

TEST(Partition, LargeZBoundary) {
  // z >= x makes every number smooth: b = b_l = 1.
  const auto stub = stub_table(1.0, 200);
  EXPECT_EQ(partition_sums(stub, 1, 100, 1000.0).S_star, 0.0);
  EXPECT_EQ(partition_sums(stub, 1, 100, 1000.0, 1.0).S_star, 99.0);
}

TEST(Partition, DeltaInequalityAndTotals) {
  const auto& t = delta();
  const auto p = partition_sums(t, 1, 10000, 10.0);
  EXPECT_EQ(p.S_total, shifted_sum(t, 1, 10000));
  EXPECT_GE(p.S_A, 0.0);
  EXPECT_GE(p.S_Al, 0.0);
  EXPECT_GE(p.S_star, 0.0);
  EXPECT_LE(p.S_total, p.S_A + p.S_Al + p.S_star + 1e-9);
}

TEST(Partition, GcdSplitRecombines) {
  for (std::int64_t l : {1, 6, 12}) {
    const auto& t = delta();
    const auto parts = gcd_split(t, l, 20000, 7.0);
    double sum = 0.0;
    for (const auto& [v, s] : parts) {
      EXPECT_EQ(static_cast<std::uint64_t>(l) % v, 0u);
      sum += s;
    }
    const double star = partition_sums(t, l, 20000, 7.0).S_star;
    EXPECT_NEAR(sum, star, 1e-12 * star);
  }
  const auto stub = stub_table(1.0, 2000);
  const auto parts = gcd_split(stub, 6, 1000, 5.0, 0.5);
  double sum = 0.0;
  for (const auto& [v, s] : parts) sum += s;
  EXPECT_EQ(sum, partition_sums(stub, 6, 1000, 5.0, 0.5).S_star);
}

TEST(Sifting, TrivialSieve) {
  const EtaFunction eta(stub_table(1.0, 1000));
  EXPECT_EQ(sifting_sum(eta, 1, 1, 1, 500, 1.5), 500.0);
  // P_{6l}(3) is empty, so every b on the line a_l | ab + l counts.
  EXPECT_EQ(sifting_sum(eta, 1, 3, 1, 300, 3.0), 100.0);
}

TEST(Sifting, MatchesBruteForce) {
  const auto& t = delta();
  const EtaFunction eta(t, 100000);
  struct Case {
    std::uint64_t a, a_l;
    std::int64_t l;
    std::uint64_t x;
    double z;
  };
  for (const Case& c : {Case{1, 2, 1, 100, 5.0}, Case{2, 1, 1, 5000, 7.0},
                        Case{3, 4, 1, 20000, 11.0}, Case{1, 5, 2, 20000, 13.0},
                        Case{4, 9, -1, 20000, 5.0}}) {
    double want = 0.0;
    for (std::uint64_t b = 1; b <= c.x / c.a; ++b) {
      const std::int64_t m = static_cast<std::int64_t>(c.a * b) + c.l;
      if (m <= 0 || static_cast<std::uint64_t>(m) % c.a_l) continue;
      const std::uint64_t bl = static_cast<std::uint64_t>(m) / c.a_l;
      const std::uint64_t avoid = 6 * static_cast<std::uint64_t>(std::abs(c.l));
      if (!coprime_to_primes_upto(b, c.z, avoid)) continue;
      if (!coprime_to_primes_upto(bl, c.z, avoid)) continue;
      want += eta_oracle(t, b);
    }
    const double got = sifting_sum(eta, c.a, c.a_l, c.l, c.x, c.z);
    EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, want)) << c.a << " " << c.a_l;
  }
  EXPECT_THROW(sifting_sum(eta, 2, 4, 1, 100, 5.0), Error);
  EXPECT_THROW(sifting_sum(eta, 7, 1, 1, 100, 5.0), Error);
}

class ProgressionTest : public ::testing::Test {
 protected:
  const EigenvalueTable& t = delta();
  EtaFunction eta{t, 1000000};
  Calibration cal = calibrate(t, 1000000);
  double gamma = euler::gamma_u(t);
};

TEST_F(ProgressionTest, Unconstrained) {
  const auto r = progression_sum(eta, cal, gamma, 1, 1, 1, 1, 1, 20000);
  double want = 0.0;
  for (std::uint64_t c = 1; c <= 20000; ++c) want += eta(c);
  EXPECT_TRUE(r.solvable);
  EXPECT_NEAR(r.A, want, 1e-12 * want);
  EXPECT_EQ(r.error, r.A - r.main);
}

TEST_F(ProgressionTest, BruteForceClasses) {
  struct Case {
    std::uint64_t a, a_l, d, d_l;
    std::int64_t l;
  };
  for (const Case& c : {Case{1, 5, 1, 1, 1}, Case{1, 5, 2, 3, 1}, Case{2, 7, 3, 1, -4},
                        Case{1, 1, 5, 1, 3}}) {
    const std::uint64_t x = 30000;
    const std::uint64_t ad = c.a * c.d, q = c.a_l * c.d_l;
    double want = 0.0;
    for (std::uint64_t cc = 1; cc <= x / ad; ++cc) {
      const std::int64_t m = static_cast<std::int64_t>(ad * cc) + c.l;
      if (m > 0 && static_cast<std::uint64_t>(m) % q == 0) want += eta(c.d * cc);
    }
    const auto r = progression_sum(eta, cal, gamma, c.a, c.a_l, c.d, c.d_l, c.l, x);
    EXPECT_TRUE(r.solvable);
    EXPECT_EQ(r.modulus, q);
    EXPECT_NEAR(r.A, want, 1e-12 * std::max(1.0, want));
  }
}

TEST_F(ProgressionTest, InsolvableAndArgumentErrors) {
  const auto r = progression_sum(eta, cal, gamma, 1, 2, 1, 1, 2, 1000);
  EXPECT_FALSE(r.solvable);
  EXPECT_EQ(r.A, 0.0);
  EXPECT_THROW(progression_sum(eta, cal, gamma, 2, 4, 1, 1, 1, 1000), Error);
}

TEST_F(ProgressionTest, MainTermAgreement) {
  const auto r = progression_sum(eta, cal, gamma, 1, 5, 1, 1, 1, 100000);
  EXPECT_LT(std::abs(r.error) / r.main, 0.1);
}

TEST_F(ProgressionTest, ResiduesPartitionTheCoprimeTotal) {
  const std::uint64_t q = 7, x = 50000;
  double classes = 0.0;
  for (std::int64_t l = 1; l < static_cast<std::int64_t>(q); ++l) {
    classes += progression_sum(eta, cal, gamma, 1, q, 1, 1, l, x).A;
  }
  double total = 0.0;
  for (std::uint64_t c = 1; c <= x; ++c) {
    if (c % q) total += eta(c);
  }
  EXPECT_NEAR(classes, total, 1e-9 * total);
}

TEST(Decay, StubRowsAreFlat) {
  const auto stub = stub_table(1.0, 100001);
  const std::vector<std::uint64_t> xs = {100, 1000, 100000};
  for (const auto& r : theorem1_decay_table(stub, 1, xs)) {
    EXPECT_EQ(r.S_over_x, 1.0);
    EXPECT_NEAR(r.S_norm, std::pow(std::log(r.x), 1.0 / 7.0), 1e-15);
  }
}

TEST(Decay, SlopeRecoversPowerOfLog) {
  std::vector<DecayRow> rows;
  for (double x : {1e3, 1e4, 1e5, 1e6}) {
    DecayRow r;
    r.x = x;
    r.S_over_x = std::pow(std::log(x), -0.3);
    rows.push_back(r);
  }
  EXPECT_NEAR(decay_slope(rows), -0.3, 1e-12);
  EXPECT_THROW(decay_slope(std::span<const DecayRow>(rows.data(), 1)), Error);
}

TEST(Decay, DeltaDecreasing) {
  const std::vector<std::uint64_t> xs = {1000, 10000, 100000, 1000000};
  const auto rows = theorem1_decay_table(delta(), 1, xs);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].S_over_x, rows[i - 1].S_over_x);
  }
  EXPECT_LT(decay_slope(rows), 0.0);
}

TEST(Lemma13, StubRatioConstant) {
  const auto stub = stub_table(1.0, 200000);
  const auto cal = calibrate(stub, 100000);
  EXPECT_NEAR(cal.l_hat, euler::kZeta2, 1e-15);
  for (std::uint64_t x : {1000u, 10000u, 100000u}) {
    const auto r = lemma13_ratio(stub, cal, 1, x, 1.0);
    EXPECT_EQ(r.M, 1.0);
    EXPECT_NEAR(r.ratio, 1.0 / euler::kZeta2, 1e-15);
  }
}

TEST(SquareFull, EmptyWhenZSquaredTooLarge) {
  const auto r = square_full_remainder(delta(), 1, 1, 1, 100, 11.0);
  EXPECT_EQ(r.strict, 0.0);
  EXPECT_EQ(r.relaxed, 0.0);
  EXPECT_EQ(r.decomposed, 0.0);
}

TEST(SquareFull, StubCounts) {
  const auto stub = stub_table(1.0, 200);
  const auto r = square_full_remainder(stub, 1, 1, 1, 100, 3.0);
  EXPECT_EQ(r.relaxed, 6.0);  // 25, 49, 50, 75, 98, 100
  double strict = 0.0;
  for (std::uint64_t b = 1; b <= 100; ++b) {
    if (is_squarefree(b)) continue;
    if (coprime_to_primes_upto(b, 3.0) && coprime_to_primes_upto(b + 1, 3.0)) strict += 1;
  }
  EXPECT_EQ(r.strict, strict);
}

TEST(SquareFull, DeltaOrdering) {
  for (double z : {3.0, 5.0, 11.0}) {
    const auto r = square_full_remainder(delta(), 2, 3, 1, 200000, z);
    EXPECT_GE(r.relaxed, r.strict);
    EXPECT_GE(r.decomposed + 1e-12, r.strict);
    EXPECT_NEAR(r.normalized, r.strict * 6.0 * std::pow(z, 1.0 / 32.0) / 200000.0, 1e-15);
  }
}

TEST(Assembly, ComponentsConsistent) {
  const auto& t = delta();
  const EtaFunction eta(t, 1000000);
  const auto cal = calibrate(t, 1000000);
  const double g = euler::gamma_u(t);
  const auto s = sieve_assembly(eta, cal, g, 2, 3, 1, 100000, 13.0, 0.5);
  EXPECT_EQ(s.direct, sifting_sum(eta, 2, 3, 1, 100000, 13.0));
  EXPECT_GT(s.X, 0.0);
  EXPECT_GT(s.support1, 0u);
  EXPECT_GT(s.G, 0.0);
  EXPECT_GT(s.theorem_a.product, 0.0);
  EXPECT_NEAR(s.level, std::sqrt(100000.0), 1e-9);
}

}  // namespace
}  // namespace shiftsieve::shift
