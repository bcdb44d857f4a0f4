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


#include "shiftsieve/eulerprod.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::euler {

namespace {

// Number of table primes <= z.
std::size_t primes_through(const EigenvalueTable& table, double z) {
  const auto& pr = table.primes();
  if (z < 2.0) return 0;
  const double zc = std::min(z, static_cast<double>(table.limit()));
  // floor(zc) comparisons avoid off-by-one at prime z
  const auto lim = static_cast<std::uint64_t>(std::floor(zc));
  return static_cast<std::size_t>(
      std::upper_bound(pr.begin(), pr.end(), lim) - pr.begin());
}

void require_within(const EigenvalueTable& table, double z) {
  if (z > static_cast<double>(table.limit()) + 0.5) {
    fail(ErrorKind::kRange, "cutoff " + std::to_string(z) +
                                " exceeds table limit " +
                                std::to_string(table.limit()));
  }
}

// log of prod_{j=0}^m (1 - alpha^{m-j} beta^j / p)^{-1} at one prime.
double log_local_sym(const LocalParams& lp, int m) {
  const double inv_p = 1.0 / static_cast<double>(lp.p);
  std::complex<double> prod = 1.0;
  for (int j = 0; j <= m; ++j) {
    std::complex<double> t = 1.0;
    for (int i = 0; i < m - j; ++i) t *= lp.alpha;
    for (int i = 0; i < j; ++i) t *= lp.beta;
    prod *= 1.0 - t * inv_p;
  }
  if (std::abs(prod.imag()) > 1e-9 * std::max(1.0, std::abs(prod.real()))) {
    fail(ErrorKind::kConsistency,
         "local factor not real at p=" + std::to_string(lp.p));
  }
  if (!(prod.real() > 0.0)) {
    fail(ErrorKind::kSingularity,
         "vanishing local factor at p=" + std::to_string(lp.p));
  }
  return -std::log(prod.real());
}

double lambda_pk(const EigenvalueTable& table, std::uint64_t p, int k) {
  return table.lambda_prime_power(p, k);
}

}  // namespace

PartialEulerProduct partial_sym_power(const EigenvalueTable& table, int m,
                                      double z) {
  require(m >= 1 && m <= 8, ErrorKind::kArgument,
          "symmetric power must lie in 1..8");
  PartialEulerProduct out;
  out.power = m;
  out.cutoff = z;
  if (z < 2.0) return out;
  require_within(table, z);
  const auto& pr = table.primes();
  out.log_value = deterministic_sum(0, primes_through(table, z),
                                    [&](std::uint64_t i) {
                                      return log_local_sym(
                                          local_params(table, pr[i]), m);
                                    });
  out.value = std::exp(out.log_value);
  return out;
}

double sieve_cutoff(double x, double c) {
  require(x >= 16.0, ErrorKind::kDomain, "x must be >= 16");
  require(c > 0.0, ErrorKind::kArgument, "c must be positive");
  const double s = c * std::log(std::log(x));
  const double z = std::exp(std::log(x) / s);
  if (z < 2.0) fail(ErrorKind::kDegenerate, "cutoff z below 2");
  return z;
}

double m_product(const EigenvalueTable& table, double z) {
  if (z < 2.0) return 1.0;
  require_within(table, z);
  const auto& pr = table.primes();
  const double lg = deterministic_sum(
      0, primes_through(table, z), [&](std::uint64_t i) {
        const double p = pr[i];
        const double dev = 1.0 - std::abs(table(pr[i]));
        const double f = 1.0 - dev * dev / p;
        if (!(f > 0.0 && f <= 1.0)) {
          fail(ErrorKind::kDomain,
               "M factor outside (0,1] at p=" + std::to_string(pr[i]));
        }
        return std::log(f);
      });
  return std::exp(lg);
}

MainTermFactors M_factor(const EigenvalueTable& table, double x, double c) {
  MainTermFactors out;
  out.x = x;
  out.c = c;
  out.z = sieve_cutoff(x, c);
  out.M = m_product(table, out.z);
  out.gamma_u = gamma_u(table);
  out.theta = out.gamma_u;
  return out;
}

double poly_inequality_margin(double a, double b, double y) {
  const double t = y * y - 1.0;
  return 1.0 + 0.5 * t + a * t * t + b * t * t * t - std::abs(y);
}

double ems_inequality_margin(double y) {
  require(std::abs(y) <= 2.0, ErrorKind::kDomain, "|y| must be <= 2");
  const double y2 = y * y;
  return 17.0 / 18.0 + 11.0 / 18.0 * (y2 - 1.0) -
         1.0 / 18.0 * (y2 * y2 - 2.0) - std::abs(y);
}

double poly_min_margin(double a, double b) {
  // Even in y, so [0, 4] covers [-4, 4].
  double lo = std::min(poly_inequality_margin(a, b, 1e3),
                       poly_inequality_margin(a, b, -1e3));
  for (int i = 0; i <= 40000; ++i) {
    lo = std::min(lo, poly_inequality_margin(a, b, i * 1e-4));
  }
  return lo;
}

AbCandidate evaluate_ab(double a, double b) {
  AbCandidate c;
  c.a = a;
  c.b = b;
  c.saving = 0.0 - 2.0 * (a + b);  // no -0 in reports
  c.min_margin = poly_min_margin(a, b);
  c.admissible = c.min_margin >= -1e-12;
  return c;
}

std::vector<AbCandidate> ab_scan(std::span<const double> b_values) {
  std::vector<AbCandidate> rows;
  rows.reserve(b_values.size());
  for (double b : b_values) {
    // a >= (|y| - 1 - t/2 - b t^3) / t^2 for every y != +-1.
    double a_min = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40000; ++i) {
      const double y = i * 1e-4;
      const double t = y * y - 1.0;
      if (std::abs(t) < 1e-3) continue;
      a_min = std::max(a_min, (y - 1.0 - 0.5 * t - b * t * t * t) / (t * t));
    }
    for (double y : {10.0, 100.0, 1e3}) {
      const double t = y * y - 1.0;
      a_min = std::max(a_min, (y - 1.0 - 0.5 * t - b * t * t * t) / (t * t));
    }
    // The limit at |y| = 1 is -1/8; with b = 0 the limit y -> inf needs a >= 0.
    a_min = std::max(a_min, -0.125);
    if (b == 0.0) a_min = std::max(a_min, 0.0);
    rows.push_back(evaluate_ab(a_min, b));
  }
  return rows;
}

double saving_ceiling() {
  return 2.0 * (1.0 - 8.0 / (3.0 * std::numbers::pi));
}

PowerResiduals hecke_power_residuals(const EigenvalueTable& table,
                                     std::uint64_t p) {
  if (p > table.limit()) fail(ErrorKind::kRange, "prime beyond table limit");
  const double l = table(p);
  const double l2 = l * l;
  const double p2 = lambda_pk(table, p, 2);
  const double p4 = lambda_pk(table, p, 4);
  const double p6 = lambda_pk(table, p, 6);
  PowerResiduals r;
  r.r2 = l2 - 1.0 - p2;
  r.r4 = l2 * l2 - 2.0 - p4 - 3.0 * p2;
  r.r6 = l2 * l2 * l2 - 5.0 - p6 - 5.0 * p4 - 9.0 * p2;
  return r;
}

double lemma41_prime_margin(double y) {
  const double y2 = y * y;
  const double rhs = -3.0 / 18.0 + 11.0 / 18.0 * (y2 - 1.0) -
                     7.0 / 18.0 * (y2 * y2 - 2.0) +
                     1.0 / 18.0 * (y2 * y2 * y2 - 5.0);
  const double dev = 1.0 - std::abs(y);
  return rhs + dev * dev;
}

Lemma41Report lemma41_check(const EigenvalueTable& table, double z) {
  require(z >= 2.0, ErrorKind::kDomain, "z must be >= 2");
  require_within(table, z);
  Lemma41Report r;
  r.z = z;
  r.M = m_product(table, z);
  const double l2 = partial_sym_power(table, 2, z).log_value;
  const double l4 = partial_sym_power(table, 4, z).log_value;
  const double l6 = partial_sym_power(table, 6, z).log_value;
  r.bound = std::exp((l6 - l2 - 2.0 * l4 - 3.0 * std::log(std::log(z))) / 18.0);
  double lo = std::numeric_limits<double>::infinity();
  const auto& pr = table.primes();
  for (std::size_t i = 0, n = primes_through(table, z); i < n; ++i) {
    lo = std::min(lo, lemma41_prime_margin(table(pr[i])));
  }
  r.min_prime_margin = lo;
  return r;
}

double gamma_u(const EigenvalueTable& table, std::uint64_t prime_cutoff) {
  require_within(table, static_cast<double>(prime_cutoff));
  const auto& pr = table.primes();
  const double lg = deterministic_sum(
      0, primes_through(table, static_cast<double>(prime_cutoff)),
      [&](std::uint64_t i) {
        const double p = pr[i];
        const double l2 = table(pr[i]) * table(pr[i]);
        double f;
        if (pr[i] == 2 || pr[i] == 3) {
          const double num = p * p + p - (2.0 * p * p - p - 1.0) * l2 +
                             (p * p - p) * l2 * l2;
          f = 1.0 - num / (p * p * p * p * (1.0 + 1.0 / p));
        } else {
          const double den = 1.0 - l2 / p;
          if (!(den > 0.0)) {
            fail(ErrorKind::kSingularity,
                 "gamma_u pole at p=" + std::to_string(pr[i]));
          }
          f = 1.0 + (2.0 * p * l2 - p - 1.0) /
                        (p * p * p * den * (1.0 + 1.0 / p));
        }
        if (!(f > 0.0)) {
          fail(ErrorKind::kConsistency,
               "non-positive gamma_u factor at p=" + std::to_string(pr[i]));
        }
        return std::log(f);
      });
  const double g = std::exp(lg);
  const double lo = 3.0 / (5.0 * std::numbers::pi * std::numbers::pi);
  if (!(g > lo && g < 15.0)) {
    fail(ErrorKind::kConsistency,
         "gamma_u = " + std::to_string(g) + " outside (3/(5 pi^2), 15)");
  }
  return g;
}

double gamma_u(const EigenvalueTable& table) {
  return gamma_u(table, std::min<std::uint64_t>(kGammaCutoff, table.limit()));
}

double gamma_u_tail_estimate(std::uint64_t prime_cutoff) {
  const double c = std::max<double>(2.0, static_cast<double>(prime_cutoff));
  return 2.0 / (c * std::log(c));
}

double theta_factor(const EigenvalueTable& table, std::uint64_t q,
                    double gamma) {
  require(q >= 1, ErrorKind::kArgument, "q must be positive");
  double t = gamma;
  for (const auto& [p, k] : factor_trial(q)) {
    (void)k;
    const double pd = static_cast<double>(p);
    const double l2 = table.at(p) * table.at(p);
    if (p == 2 || p == 3) {
      t /= 1.0 + l2 / pd;
    } else {
      t *= 1.0 - l2 / pd;
    }
  }
  return t;
}

double theta_factor(const EigenvalueTable& table, std::uint64_t q) {
  return theta_factor(table, q, gamma_u(table));
}

double eta_local_correction(const EigenvalueTable& table) {
  double c = 1.0;
  for (std::uint64_t p : {2, 3}) {
    const double pd = static_cast<double>(p);
    const double l2 = table.at(p) * table.at(p);
    c *= (1.0 + l2 / (pd - 1.0)) / (1.0 + l2 / pd);
  }
  return c;
}

double theta_main(const EigenvalueTable& table, std::uint64_t q, double gamma,
                  EtaConvention convention) {
  const double printed = theta_factor(table, q, gamma);
  if (convention == EtaConvention::kPrintedProduct) return printed;
  // Swap the printed p | 6 factor for the one eta actually has; at p | q the
  // progression excludes p entirely, so nothing of p survives.
  double t = printed;
  for (std::uint64_t p : {2, 3}) {
    const double pd = static_cast<double>(p);
    const double l2 = table.at(p) * table.at(p);
    if (q % p == 0) continue;
    t *= (1.0 + l2 / (pd - 1.0)) / (1.0 + l2 / pd);
  }
  return t;
}

FourthMoment fourth_moment_check(const EigenvalueTable& table,
                                 std::uint64_t x) {
  require(x >= 1, ErrorKind::kArgument, "x must be positive");
  require_within(table, static_cast<double>(x));
  FourthMoment r;
  r.x = static_cast<double>(x);
  r.sum = deterministic_sum(1, x + 1, [&](std::uint64_t n) {
    const double v = table(n) * table(n);
    return v * v;
  });
  const double lx = std::log(r.x);
  const double l4 = partial_sym_power(table, 4, r.x).log_value;
  const double l2 = partial_sym_power(table, 2, r.x).log_value;
  r.bound = r.x * lx * lx * std::exp(l4 + 3.0 * l2);
  r.ratio = r.bound > 0.0 ? r.sum / r.bound
                          : std::numeric_limits<double>::infinity();
  return r;
}

double rs_local_identity_residual(const EigenvalueTable& table,
                                  std::uint64_t p) {
  const LocalParams lp = local_params(table, p);
  const double pd = static_cast<double>(p);
  const double lhs = std::exp(log_local_sym(lp, 2)) / (1.0 - 1.0 / pd);
  CompensatedSum<double> series;
  double pk = 1.0;
  for (int k = 0; k < 400; ++k) {
    const double lk = lp.power_sum(k).real();
    const double term = lk * lk / pk;
    series.add(term);
    if (k > 4 && std::abs(term) < 1e-18 * std::abs(series.value())) break;
    pk *= pd;
  }
  const double rhs = series.value() / (1.0 - 1.0 / (pd * pd));
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace shiftsieve::euler
