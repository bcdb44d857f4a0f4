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
#include <sstream>

#include "common.hpp"
#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/hecke.hpp"
#include "shiftsieve/ntt.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve {
namespace {

using testing::data_path;
using testing::delta;

// Schoolbook expansion of q prod_{n < N} (1 - q^n)^24 in 256-bit integers.
std::vector<Int256> tau_oracle(std::size_t N) {
  std::vector<Int256> c(N, 0);
  c[0] = 1;
  for (std::size_t n = 1; n < N; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t k = N - 1; k >= n; --k) c[k] -= c[k - n];
    }
  }
  std::vector<Int256> tau(N + 1, 0);
  for (std::size_t k = 0; k < N; ++k) tau[k + 1] = c[k];
  return tau;
}

TEST(Tau, MatchesDirectConvolutionOracle) {
  const auto oracle = tau_oracle(200);
  const auto series = tau_series(200);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    EXPECT_EQ(series[n], oracle[n]) << "n=" << n;
  }
  EXPECT_EQ(series[2], Int256(-24));
  EXPECT_EQ(series[3], Int256(252));
}

TEST(Tau, MultiplicativeAndBounded) {
  const auto t = tau_series(3000);
  for (std::uint64_t m = 2; m <= 3000; ++m) {
    for (std::uint64_t n = m + 1; m * n <= 3000; ++n) {
      if (std::gcd(m, n) == 1) EXPECT_EQ(t[m * n], t[m] * t[n]);
    }
  }
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const double bound = static_cast<double>(divisor_count(n)) * std::pow(n, 5.5);
    EXPECT_LE(std::abs(t[n].convert_to<double>()), bound * (1 + 1e-12));
  }
}

TEST(Tau, IdenticalAcrossThreadCounts) {
  set_thread_count(1);
  const auto a = tau_series(1 << 16);
  set_thread_count(4);
  const auto b = tau_series(1 << 16);
  set_thread_count(1);
  EXPECT_EQ(a.coeffs, b.coeffs);
}

TEST(Ntt, MultiplyMatchesNaive) {
  std::vector<i128> a(300), b(257);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<i128>((i * 7919) % 2001) - 1000;
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<i128>((i * 104729) % 3001) - 1500;
  a[5] = static_cast<i128>(1) << 90;
  EXPECT_EQ(ntt::multiply(a, b, 500), ntt::multiply_naive(a, b, 500));
}

TEST(DeltaTable, SmallValues) {
  const auto t = build_delta_table(10);
  EXPECT_EQ(t(1), 1.0);
  EXPECT_NEAR(t(2), -0.5303300858899106, 1e-15);
  EXPECT_NEAR(t(3), 252.0 / std::pow(3.0, 5.5), 1e-15);
  EXPECT_NEAR(t(3), 0.598733, 1e-6);
  EXPECT_EQ(t.source(), "delta");
  EXPECT_EQ(t.bound_mode(), BoundMode::kDeligne);
}

TEST(DeltaTable, CapacityCeiling) {
  try {
    build_delta_table(kTauCeiling + 1);
    FAIL() << "expected capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
}

TEST(DeltaTable, HeckeAlgebraExhaustive) {
  const auto& t = delta();
  double worst = 0.0;
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    for (std::uint64_t n = 1; m * n <= 10000; ++n) {
      worst = std::max(worst, std::abs(hecke_relation_residual(t, m, n)));
    }
  }
  EXPECT_LE(worst, 1e-9);
  // lambda(6) and lambda(2) lambda(3) are rounded independently.
  EXPECT_LE(std::abs(hecke_relation_residual(t, 2, 3)), 4e-16);
  EXPECT_LT(std::abs(hecke_relation_residual(t, 2, 2)), 1e-9);
  EXPECT_LT(std::abs(hecke_relation_residual(t, 4, 6)), 1e-9);
}

TEST(DeltaTable, DeligneBound) {
  EXPECT_LE(bound_excess(delta()), 1e-9);
}

TEST(DeltaTable, ResidualRangeError) {
  const auto t = build_delta_table(100);
  EXPECT_THROW(hecke_relation_residual(t, 11, 10), Error);
}

TEST(LocalParams, Cases) {
  auto lp = local_params_from_value(2, 2.0);
  EXPECT_NEAR(lp.alpha.real(), 1.0, 1e-7);
  EXPECT_NEAR(lp.beta.real(), 1.0, 1e-7);
  lp = local_params_from_value(3, 0.0);
  EXPECT_NEAR(std::abs(lp.alpha - std::complex<double>(0, 1)) *
                  std::abs(lp.alpha - std::complex<double>(0, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(lp.alpha * lp.beta - 1.0), 0.0, 1e-12);
  const auto& t = delta();
  for (std::uint32_t p : {2u, 3u, 5u, 101u, 99991u}) {
    const auto q = local_params(t, p);
    EXPECT_NEAR(std::abs(q.alpha), 1.0, 1e-12);
    EXPECT_NEAR((q.alpha + q.beta).real(), t(p), 1e-12);
    EXPECT_NEAR(std::abs(q.alpha * q.beta - 1.0), 0.0, 1e-12);
  }
  EXPECT_THROW(local_params(t, 4), Error);
}

TEST(Loader, EchoesSinglePrime) {
  const auto t = load_eigenvalue_table(data_path("two_only.txt"), 2);
  EXPECT_EQ(t(2), -0.5);
  EXPECT_EQ(t.bound_mode(), BoundMode::kKimSarnak);
}

TEST(Loader, MissingPrimeNamed) {
  try {
    load_eigenvalue_table(data_path("two_only.txt"), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(Loader, ZeroCoefficientsFollowRecursion) {
  const auto t = load_eigenvalue_table(data_path("zeros.txt"), 8);
  EXPECT_EQ(t(4), -1.0);
  EXPECT_EQ(t(8), 0.0);
  EXPECT_EQ(t(6), 0.0);
}

TEST(Loader, MalformedLineReportsLineNumber) {
  try {
    load_eigenvalue_table(data_path("malformed.txt"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Loader, KimSarnakViolationRejected) {
  EXPECT_THROW(load_eigenvalue_table(data_path("ks_violation.txt"), 3), Error);
}

TEST(Loader, ApWeightTwelveReproducesDelta) {
  const auto t = load_eigenvalue_table(data_path("delta_ap.txt"), 59);
  const auto d = build_delta_table(59);
  for (std::uint64_t n = 1; n <= 59; ++n) EXPECT_NEAR(t(n), d(n), 1e-13) << n;
}

TEST(Loader, HeaderRequired) {
  std::istringstream in("2 0.5\n");
  EXPECT_THROW(parse_eigenvalue_table(in, 2), Error);
}

}  // namespace
}  // namespace shiftsieve
