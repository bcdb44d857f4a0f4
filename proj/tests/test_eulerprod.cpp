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
#include <complex>

#include "common.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/eulerprod.hpp"

namespace shiftsieve::euler {
namespace {

using testing::delta;
using testing::stub_table;

EigenvalueTable zero_table(std::uint64_t n) {
  return EigenvalueTable::from_prime_values(std::vector<double>(n + 1, 0.0), "zero",
                                            BoundMode::kKimSarnak);
}

TEST(PartialProduct, SmallCases) {
  const auto& t = delta();
  EXPECT_EQ(partial_sym_power(t, 2, 1.5).value, 1.0);
  const double l2 = t(2);
  EXPECT_NEAR(partial_sym_power(t, 1, 2).value, 1.0 / (1.0 - l2 / 2 + 0.25), 1e-14);
  const std::complex<double> disc = std::sqrt(std::complex<double>(l2 * l2 - 4.0));
  const std::complex<double> a = 0.5 * (l2 + disc), b = 0.5 * (l2 - disc);
  const double want = 1.0 / ((1.0 - a * a / 2.0) * 0.5 * (1.0 - b * b / 2.0)).real();
  EXPECT_NEAR(partial_sym_power(t, 2, 2).value, want, 1e-14);
}

TEST(PartialProduct, RankinSelbergLocalIdentity) {
  const auto& t = delta();
  double worst = 0.0;
  for (std::uint32_t p : t.primes()) {
    if (p > 100000) break;
    worst = std::max(worst, rs_local_identity_residual(t, p));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(MFactor, StubTables) {
  EXPECT_NEAR(M_factor(stub_table(1.0, 20000), 1e6, 1.0).M, 1.0, 1e-15);
  const auto z = zero_table(20000);
  const auto f = M_factor(z, 1e6, 1.0);
  double want = 1.0;
  for (std::uint32_t p : z.primes()) {
    if (p > f.z) break;
    want *= 1.0 - 1.0 / p;
  }
  EXPECT_NEAR(f.M, want, 1e-13);
}

TEST(MFactor, DeltaBelowOneAndMonotone) {
  const auto& t = delta();
  const auto f = M_factor(t, 1e6, 1.0);
  EXPECT_LT(f.M, 1.0);
  EXPECT_NEAR(f.z, 192.76355873314876, 1e-9);
  EXPECT_NEAR(f.M, 0.6672356948870369, 1e-12);
  double prev = 1.0;
  for (double z = 2; z < 5000; z *= 1.3) {
    const double m = m_product(t, z);
    EXPECT_LE(m, prev);
    prev = m;
  }
}

TEST(MFactor, DegenerateCutoff) {
  try {
    sieve_cutoff(10.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(Inequalities, Examples) {
  EXPECT_EQ(poly_inequality_margin(kKnownA, kKnownB, 1.0), 0.0);
  EXPECT_EQ(poly_inequality_margin(kKnownA, kKnownB, -1.0), 0.0);
  EXPECT_NEAR(poly_inequality_margin(kKnownA, kKnownB, 0.0), 13.0 / 36.0, 1e-15);
  EXPECT_NEAR(ems_inequality_margin(1.0), 0.0, 1e-15);
  EXPECT_NEAR(ems_inequality_margin(0.0), 8.0 / 18.0, 1e-15);
  EXPECT_NEAR(ems_inequality_margin(2.0), 0.0, 1e-14);
  EXPECT_THROW(ems_inequality_margin(2.5), Error);
}

TEST(Inequalities, GridAndPrimes) {
  for (int i = -40000; i <= 40000; ++i) {
    ASSERT_GE(poly_inequality_margin(kKnownA, kKnownB, i * 1e-4), -1e-12) << i;
  }
  EXPECT_GT(poly_inequality_margin(kKnownA, kKnownB, 1e3), 0.0);
  EXPECT_GT(poly_inequality_margin(kKnownA, kKnownB, -1e3), 0.0);
  for (int i = -20000; i <= 20000; ++i) {
    ASSERT_GE(ems_inequality_margin(i * 1e-4), -1e-12) << i;
  }
  for (std::uint32_t p : delta().primes()) {
    ASSERT_GE(poly_inequality_margin(kKnownA, kKnownB, delta()(p)), -1e-12) << p;
  }
}

TEST(AbScan, KnownPairAdmissible) {
  const auto c = evaluate_ab(kKnownA, kKnownB);
  EXPECT_TRUE(c.admissible);
  EXPECT_NEAR(c.saving, 1.0 / 6.0, 1e-15);
  const std::vector<double> bs = {kKnownB};
  const auto rows = ab_scan(bs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].admissible);
  EXPECT_LE(rows[0].a, kKnownA);
  EXPECT_LE(rows[0].saving, saving_ceiling());
  EXPECT_GT(rows[0].saving, 1.0 / 6.0);
  EXPECT_FALSE(evaluate_ab(-0.2, 0.0).admissible);
}

TEST(PowerResiduals, AllPrimesBuiltInAndLoaded) {
  const auto& t = delta();
  for (std::uint32_t p : t.primes()) {
    if (p > 100000) break;
    const auto r = hecke_power_residuals(t, p);
    ASSERT_LE(std::max({std::abs(r.r2), std::abs(r.r4), std::abs(r.r6)}), 1e-9) << p;
  }
  const auto loaded = load_eigenvalue_table(testing::data_path("delta_ap.txt"), 59);
  for (std::uint32_t p : loaded.primes()) {
    const auto r = hecke_power_residuals(loaded, p);
    EXPECT_LE(std::max({std::abs(r.r2), std::abs(r.r4), std::abs(r.r6)}), 1e-9) << p;
  }
}

TEST(Lemma41, MarginAndReport) {
  EXPECT_NEAR(lemma41_prime_margin(1.0), 0.0, 1e-15);
  EXPECT_NEAR(lemma41_prime_margin(-1.0), 0.0, 1e-15);
  const auto r = lemma41_check(delta(), 1e4);
  EXPECT_GE(r.min_prime_margin, -1e-12);
  EXPECT_NEAR(r.M, 0.5646981243869471, 1e-10);
  EXPECT_NEAR(r.bound, 0.7169483945832686, 1e-10);
}

TEST(GammaU, TailConvergence) {
  const auto& t = delta();
  const double g3 = gamma_u(t, 1000);
  const double g4 = gamma_u(t, 10000);
  EXPECT_LT(std::abs(g3 - g4), 1e-3);
  EXPECT_NEAR(g3, 0.7384099237296556, 1e-10);
  EXPECT_NEAR(gamma_u(t, 9999), 0.738493476070418, 1e-10);
  EXPECT_LE(std::abs(g3 - g4), 2 * gamma_u_tail_estimate(1000));
}

TEST(Theta, Structure) {
  const auto& t = delta();
  const double g = gamma_u(t);
  EXPECT_EQ(theta_factor(t, 1, g), g);
  EXPECT_NEAR(theta_factor(t, 2, g), g / (1.0 + t(2) * t(2) / 2.0), 1e-15);
  EXPECT_NEAR(theta_factor(t, 5, g), g * (1.0 - t(5) * t(5) / 5.0), 1e-15);
  // The definition convention only changes the p | 6 part.
  EXPECT_NEAR(theta_main(t, 6, g, EtaConvention::kDefinition),
              theta_factor(t, 6, g), 1e-15);
  EXPECT_NEAR(theta_main(t, 1, g, EtaConvention::kDefinition),
              g * eta_local_correction(t), 1e-15);
  EXPECT_EQ(theta_main(t, 35, g, EtaConvention::kPrintedProduct), theta_factor(t, 35, g));
}

TEST(FourthMoment, Cases) {
  EXPECT_EQ(fourth_moment_check(delta(), 1).sum, 1.0);
  EXPECT_EQ(fourth_moment_check(stub_table(1.0, 2000), 1234).sum, 1234.0);
  const auto r = fourth_moment_check(delta(), 100000);
  EXPECT_LT(r.ratio, 1.0);
}

}  // namespace
}  // namespace shiftsieve::euler
