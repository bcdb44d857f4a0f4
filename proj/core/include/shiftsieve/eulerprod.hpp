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


// Partial symmetric-power Euler products, the M factor of the main term,
// the polynomial inequalities behind the log-power saving, and the local
// correction factors gamma_u and theta(q).

#ifndef SHIFTSIEVE_EULERPROD_HPP_
#define SHIFTSIEVE_EULERPROD_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "shiftsieve/hecke.hpp"

namespace shiftsieve::euler {

inline constexpr double kZeta2 = 1.6449340668482264;  // pi^2 / 6
inline constexpr std::uint64_t kGammaCutoff = 10000;
inline constexpr double kKnownA = -1.0 / 9.0;
inline constexpr double kKnownB = 1.0 / 36.0;

struct PartialEulerProduct {
  int power = 1;
  double cutoff = 0.0;
  double value = 1.0;
  double log_value = 0.0;
};

// prod_{p <= z} prod_{j=0}^m (1 - alpha^{m-j} beta^j / p)^{-1}.
PartialEulerProduct partial_sym_power(const EigenvalueTable& table, int m,
                                      double z);

struct MainTermFactors {
  double x = 0.0;
  double c = 1.0;
  double z = 0.0;
  double M = 1.0;
  double gamma_u = 1.0;
  double theta = 1.0;
  double zeta2 = kZeta2;
};

// z = x^{1 / (c log log x)}, M = prod_{p <= z} (1 - (1 - |lambda(p)|)^2 / p).
double sieve_cutoff(double x, double c);
double m_product(const EigenvalueTable& table, double z);
MainTermFactors M_factor(const EigenvalueTable& table, double x, double c);

// RHS(y) - |y| with RHS = 1 + (y^2-1)/2 + a (y^2-1)^2 + b (y^2-1)^3.
double poly_inequality_margin(double a, double b, double y);
// 17/18 + 11/18 (y^2-1) - 1/18 (y^4-2) - |y| for |y| <= 2.
double ems_inequality_margin(double y);

struct AbCandidate {
  double a = 0.0;
  double b = 0.0;
  double saving = 0.0;      // -2(a + b): the log z exponent gained
  double min_margin = 0.0;  // over the dense y grid
  bool admissible = false;
};

// Minimum of poly_inequality_margin over y in [-4, 4] step 1e-4 and +-1e3.
double poly_min_margin(double a, double b);
AbCandidate evaluate_ab(double a, double b);
// For each b, the smallest admissible a on the grid, then the saving.
std::vector<AbCandidate> ab_scan(std::span<const double> b_values);
// Sato-Tate ceiling 2(1 - 8/(3 pi)) for the saving.
double saving_ceiling();

struct PowerResiduals {
  double r2 = 0.0;
  double r4 = 0.0;
  double r6 = 0.0;
};

PowerResiduals hecke_power_residuals(const EigenvalueTable& table,
                                     std::uint64_t p);

// Per-prime polynomial form minus -(1 - |y|)^2; non-negative in theory.
double lemma41_prime_margin(double y);

struct Lemma41Report {
  double z = 0.0;
  double M = 1.0;
  double bound = 1.0;  // (L6 / (L2 L4^2 (log z)^3))^{1/18}
  double min_prime_margin = 0.0;
};

Lemma41Report lemma41_check(const EigenvalueTable& table, double z);

// Truncated product for gamma_u(1); consistency error outside
// (3/(5 pi^2), 15).
double gamma_u(const EigenvalueTable& table, std::uint64_t prime_cutoff);
double gamma_u(const EigenvalueTable& table);
// sum_{p > cutoff} 2/p^2, bounded by 2 / (cutoff log cutoff).
double gamma_u_tail_estimate(std::uint64_t prime_cutoff);

double theta_factor(const EigenvalueTable& table, std::uint64_t q,
                    double gamma);
double theta_factor(const EigenvalueTable& table, std::uint64_t q);

// eta(p^k) = lambda^2(p) for every k >= 1 at p | 6 makes the local factor of
// sum eta(n) n^{-s} equal 1 + lambda^2 / (p^s - 1), not 1 + lambda^2 / p^s as
// in the product gamma_u is built against. kDefinition follows eta itself;
// kPrintedProduct reproduces the printed factors.
enum class EtaConvention { kDefinition, kPrintedProduct };

// prod_{p | 6} (1 + lambda^2/(p-1)) / (1 + lambda^2/p).
double eta_local_correction(const EigenvalueTable& table);

// Main-term constant theta(q) under the requested convention; with
// kDefinition the p | 6 factors become (1 + lambda^2/(p-1)) for p not
// dividing q and 1 for p | q.
double theta_main(const EigenvalueTable& table, std::uint64_t q, double gamma,
                  EtaConvention convention);

struct FourthMoment {
  double x = 0.0;
  double sum = 0.0;
  double bound = 0.0;  // x (log x)^2 L4(x) L2(x)^3
  double ratio = 0.0;
};

FourthMoment fourth_moment_check(const EigenvalueTable& table,
                                 std::uint64_t x);

// |zeta_p(1) L_p(sym^2, 1) - zeta_p(2) sum_k lambda(p^k)^2 p^{-k}|, relative.
double rs_local_identity_residual(const EigenvalueTable& table,
                                  std::uint64_t p);

}  // namespace shiftsieve::euler

#endif  // SHIFTSIEVE_EULERPROD_HPP_
