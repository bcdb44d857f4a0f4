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
#include "shiftsieve/dirichlet.hpp"
#include "shiftsieve/error.hpp"

namespace shiftsieve::dirichlet {
namespace {

using testing::delta;
using testing::stub_table;

TEST(Characters, SmallModuli) {
  const auto one = characters_mod_q(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0](7), std::complex<double>(1.0));
  const auto three = characters_mod_q(3);
  ASSERT_EQ(three.size(), 2u);
  EXPECT_TRUE(three[0].principal);
  EXPECT_FALSE(three[1].principal);
  EXPECT_EQ(three[1](2), std::complex<double>(-1.0));
  EXPECT_EQ(three[1](3), std::complex<double>(0.0));
  EXPECT_EQ(characters_mod_q(5).size(), 4u);
}

TEST(Characters, GroupStructureUpTo50) {
  for (std::uint64_t q = 1; q <= 50; ++q) {
    const auto t = characters_mod_q(q);
    ASSERT_EQ(t.size(), euler_phi(q)) << q;
    EXPECT_LE(t.column_orthogonality_error(), 1e-12) << q;
    EXPECT_LE(t.row_orthogonality_error(), 1e-12) << q;
    for (const auto& chi : t.characters()) {
      for (std::uint64_t m = 0; m < q; ++m) {
        const bool unit = std::gcd(m, q) == 1;
        EXPECT_NEAR(std::abs(chi(m)), unit ? 1.0 : 0.0, 1e-14);
        for (std::uint64_t n = 0; n < q; ++n) {
          ASSERT_LE(std::abs(chi(m * n) - chi(m) * chi(n)), 1e-13) << q;
        }
      }
    }
  }
}

TEST(Characters, DistinctRows) {
  // Brute orthogonality matrix mod 5 and mod 8.
  for (std::uint64_t q : {5u, 8u, 24u}) {
    const auto t = characters_mod_q(q);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        std::complex<double> s = 0.0;
        for (std::uint64_t n = 0; n < q; ++n) s += t[i](n) * std::conj(t[j](n));
        EXPECT_NEAR(std::abs(s - (i == j ? double(t.phi()) : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Twisted, Examples) {
  const auto& t = delta();
  const shift::EtaFunction eta(t, 200000);
  double full = 0.0, odd = 0.0;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    full += eta(n);
    if (n % 2) odd += eta(n);
  }
  EXPECT_NEAR(twisted_eta_sum(eta, characters_mod_q(1)[0], 10000).real(), full, 1e-12 * full);
  const auto two = twisted_eta_sum(eta, characters_mod_q(2)[0], 10000);
  EXPECT_NEAR(two.real(), odd, 1e-12 * odd);
  EXPECT_EQ(two.imag(), 0.0);
  // Cancellation for the non-principal character mod 3.
  const auto chi = characters_mod_q(3)[1];
  const double twisted = std::abs(twisted_eta_sum(eta, chi, 100000));
  EXPECT_LT(twisted / std::pow(1e5, 0.75), 0.1);
}

TEST(Progression, StubCount) {
  const shift::EtaFunction eta(stub_table(1.0, 1000));
  const auto chars = characters_mod_q(4);
  const auto cal = shift::calibrate(eta.table(), 1000);
  const auto r = progression_eta_sum(eta, chars, 1, 100, cal, 1.0);
  EXPECT_EQ(r.direct, 25.0);
  EXPECT_NEAR(r.via_orthogonality, 25.0, 1e-12);
}

TEST(Progression, TrivialModulusMainTerm) {
  const auto& t = delta();
  const shift::EtaFunction eta(t, 1000000);
  const auto cal = shift::calibrate(t, 1000000);
  const double g = euler::gamma_u(t);
  const auto r = progression_eta_sum(eta, characters_mod_q(1), 1, 100000, cal, g);
  double full = 0.0;
  for (std::uint64_t n = 1; n <= 100000; ++n) full += eta(n);
  EXPECT_NEAR(r.direct, full, 1e-12 * full);
  const double theta = euler::theta_main(t, 1, g, euler::EtaConvention::kDefinition);
  EXPECT_NEAR(r.main, theta / euler::kZeta2 * cal.l_hat * 1e5, 1e-9 * r.main);
  EXPECT_LT(std::abs(r.direct - r.main) / r.main, 0.01);
}

TEST(Progression, OrthogonalityMatchesDirect) {
  const auto& t = delta();
  const shift::EtaFunction eta(t, 1000000);
  const auto cal = shift::calibrate(t, 1000000);
  const double g = euler::gamma_u(t);
  for (std::uint64_t q : {3u, 8u, 15u, 29u, 48u}) {
    const auto chars = characters_mod_q(q);
    const auto rows = progression_eta_sums(eta, chars, 200000, cal, g);
    const auto classes = residue_class_sums(eta, q, 200000);
    std::size_t i = 0;
    for (std::uint64_t m = 1; m < q || (q == 1 && m == 1); ++m) {
      if (std::gcd(m, q) != 1) continue;
      const auto& r = rows.at(i++);
      EXPECT_EQ(r.direct, classes[m]);
      EXPECT_LE(std::abs(r.via_orthogonality - r.direct), 1e-9 * r.direct) << q << " " << m;
      const auto one = progression_eta_sum(eta, chars, m, 200000, cal, g);
      EXPECT_EQ(one.direct, r.direct);
    }
    EXPECT_EQ(i, rows.size());
  }
}

TEST(Progression, ClassesPartitionTotal) {
  const shift::EtaFunction eta(delta(), 100000);
  for (std::uint64_t q : {1u, 6u, 35u}) {
    const auto s = residue_class_sums(eta, q, 100000);
    ASSERT_EQ(s.size(), q);
    double total = 0.0, sum = 0.0;
    for (std::uint64_t n = 1; n <= 100000; ++n) total += eta(n);
    for (double v : s) sum += v;
    EXPECT_NEAR(sum, total, 1e-9 * total);
  }
}

TEST(Progression, EquidistributionMod7) {
  const auto& t = delta();
  const shift::EtaFunction eta(t, 1000000);
  const auto s = residue_class_sums(eta, 7, 1000000);
  EXPECT_LT(equidistribution_spread(s, 7), 0.05);
  const std::vector<double> zeros(5, 0.0);
  EXPECT_THROW(equidistribution_spread(zeros, 5), Error);
}

TEST(SmoothStep, Shape) {
  EXPECT_EQ(smooth_step(-1.0), 0.0);
  EXPECT_EQ(smooth_step(0.0), 0.0);
  EXPECT_EQ(smooth_step(1.0), 1.0);
  EXPECT_EQ(smooth_step(2.0), 1.0);
  double prev = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double u = i / 200.0;
    const double s = smooth_step(u);
    EXPECT_GE(s, prev);
    EXPECT_NEAR(s + smooth_step(1.0 - u), 1.0, 1e-13);
    prev = s;
  }
}

TEST(Smoothed, ConstantCoefficients) {
  const std::vector<double> ones(400, 1.0);
  const auto r = smoothed_dyadic_sum(ones, 100, 10);
  EXPECT_EQ(r.sharp, 101.0);
  // A step with s(u) + s(1 - u) = 1 contributes (y - 1)/2 per side outside
  // [x, 2x] and (y + 1)/2 inside.
  EXPECT_NEAR(r.majorant, 101.0 + 9.0, 1e-12);
  EXPECT_NEAR(r.minorant, 101.0 - 11.0, 1e-12);
  const auto wide = smoothed_dyadic_sum(ones, 100, 100);
  EXPECT_LE(wide.minorant, wide.sharp);
  EXPECT_LE(wide.sharp, wide.majorant);
  EXPECT_NEAR(wide.majorant, 101.0 + 99.0, 1e-12);
}

TEST(Smoothed, Errors) {
  const std::vector<double> ones(400, 1.0);
  EXPECT_THROW(smoothed_dyadic_sum(std::span<const double>(ones.data(), 200), 100, 10), Error);
  std::vector<double> neg(400, 1.0);
  neg[150] = -1.0;
  try {
    smoothed_dyadic_sum(neg, 100, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(Smoothed, EtaSandwich) {
  const shift::EtaFunction eta(delta(), 300000);
  std::vector<double> a(300001, 0.0);
  for (std::uint64_t n = 1; n <= 300000; ++n) a[n] = eta(n);
  const double x = 1e5, y = std::pow(x, 0.75);
  const auto r = smoothed_dyadic_sum(a, x, y, 0.33);
  EXPECT_LE(r.minorant, r.sharp);
  EXPECT_LE(r.sharp, r.majorant);
  EXPECT_EQ(r.main, 0.33 * x);
  EXPECT_GT(r.error_bound, 0.0);
}

}  // namespace
}  // namespace shiftsieve::dirichlet
