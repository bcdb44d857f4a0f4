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


// Shifted convolution sums S_l(x) = sum_{n <= x} |lambda(n) lambda(n + l)|
// and the pieces of their sieve treatment: the smooth/rough factorization,
// the partition by the size of the smooth parts, the sifted eta-sums, sums
// in progressions and the square-full remainder.

#ifndef SHIFTSIEVE_SHIFTSUMS_HPP_
#define SHIFTSIEVE_SHIFTSUMS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "shiftsieve/eulerprod.hpp"
#include "shiftsieve/hecke.hpp"
#include "shiftsieve/sieveweights.hpp"

namespace shiftsieve::shift {

inline constexpr double kCutoffExponent = 1.0 / 16.0;
inline constexpr double kLevelExponent = 1.0 / 64.0;
inline constexpr double kDecayExponent = 1.0 / 7.0;
inline constexpr std::uint64_t kCalibrationLength = 10'000'000;

struct SmoothSplit {
  std::uint64_t n = 1;
  std::uint64_t a = 1;  // z-smooth part
  std::uint64_t b = 1;  // coprime to P(z)
};

SmoothSplit smooth_split(std::uint64_t n, double z);
SmoothSplit smooth_split(const Factorizer& f, std::uint64_t n, double z);

// sum_{n <= x} |lambda(n) lambda(n + l)|, with lambda(-m) = lambda(m).
double shifted_sum(const EigenvalueTable& table, std::int64_t ell,
                   std::uint64_t x);

// eta(p^k) = lambda^2(p) for p | 6 and lambda^{2k}(p) otherwise.
class EtaFunction {
 public:
  explicit EtaFunction(EigenvalueTable table);
  EtaFunction(EigenvalueTable table, std::uint64_t limit);

  const EigenvalueTable& table() const { return table_; }
  std::uint64_t limit() const { return limit_; }
  double operator()(std::uint64_t n) const { return (*values_)[n]; }
  double value(std::uint64_t n) const;

 private:
  EigenvalueTable table_;
  std::uint64_t limit_ = 0;
  std::shared_ptr<const std::vector<double>> values_;
};

double eta_value(const EtaFunction& eta, std::uint64_t n);

// L-hat = zeta(2) sum_{n <= X0} lambda^2(n) / X0 stands in for L(sym^2, 1).
struct Calibration {
  std::uint64_t x0 = 0;
  double lambda2_sum = 0.0;
  double l_hat = 0.0;
};

Calibration calibrate(const EigenvalueTable& table,
                      std::uint64_t x0 = kCalibrationLength);

struct PartitionSums {
  double x = 0.0;
  double z = 0.0;
  std::int64_t ell = 1;
  double cutoff = kCutoffExponent;
  double S_total = 0.0;
  double S_A = 0.0;     // a > x^cutoff
  double S_Al = 0.0;    // a_l > x^cutoff; overlaps S_A
  double S_star = 0.0;  // a, a_l <= x^cutoff
};

PartitionSums partition_sums(const EigenvalueTable& table, std::int64_t ell,
                             std::uint64_t x, double z,
                             double cutoff = kCutoffExponent);

// S_star split by v = gcd(a, a_l), which always divides l.
std::map<std::uint64_t, double> gcd_split(const EigenvalueTable& table,
                                          std::int64_t ell, std::uint64_t x,
                                          double z,
                                          double cutoff = kCutoffExponent);

// sum over b <= x/a with a_l | ab + l and (b b_l, P_{6l}(z)) = 1 of eta(b).
double sifting_sum(const EtaFunction& eta, std::uint64_t a, std::uint64_t a_l,
                   std::int64_t ell, std::uint64_t x, double z);

struct ProgressionSum {
  bool solvable = true;  // (l, a_l d_l) = 1
  double A = 0.0;
  double main = 0.0;
  double error = 0.0;
  std::uint64_t modulus = 1;  // a_l d_l
  std::uint64_t residue = 0;  // c = -l (ad)^{-1} mod a_l d_l
};

// A = sum_{c <= x/(ad), a_l d_l | adc + l} eta(dc) against the main term.
ProgressionSum progression_sum(const EtaFunction& eta, const Calibration& cal,
                               double gamma, std::uint64_t a,
                               std::uint64_t a_l, std::uint64_t d,
                               std::uint64_t d_l, std::int64_t ell,
                               std::uint64_t x,
                               euler::EtaConvention convention =
                                   euler::EtaConvention::kDefinition);

struct DecayRow {
  double x = 0.0;
  double S = 0.0;
  double S_over_x = 0.0;
  double S_norm = 0.0;  // S (log x)^{1/7} / x
};

std::vector<DecayRow> theorem1_decay_table(const EigenvalueTable& table,
                                           std::int64_t ell,
                                           std::span<const std::uint64_t> xs);

// Least-squares slope of log(S/x) against log log x.
double decay_slope(std::span<const DecayRow> rows);

struct Lemma13Ratio {
  double S = 0.0;
  double z = 0.0;
  double M = 1.0;
  double l_hat = 0.0;
  double ratio = 0.0;  // S / (x L-hat M)
};

Lemma13Ratio lemma13_ratio(const EigenvalueTable& table,
                           const Calibration& cal, std::int64_t ell,
                           std::uint64_t x, double c);

struct SquareFullRemainder {
  // b on the line with (b b_l, P(z)) = 1 and b not squarefree.
  double strict = 0.0;
  // b on the line with p^2 | b for some p > z; coprimality dropped.
  double relaxed = 0.0;
  // sum over square-full m in [z^2, x/a] coprime to P(z) of lambda^2(m)
  // times the squarefree b <= x/(am) on the line a_l | amb + l.
  double decomposed = 0.0;
  double normalized = 0.0;  // strict a a_l z^{1/32} / x
};

SquareFullRemainder square_full_remainder(const EigenvalueTable& table,
                                          std::uint64_t a, std::uint64_t a_l,
                                          std::int64_t ell, std::uint64_t x,
                                          double z);

// Direct sifted sum against X G'*G'' and X C V' V'' for one (a, a_l). X is
// the d = d_l = 1 progression main term, theta(a_l) L-hat x / (zeta(2) a
// phi(a_l)).
struct SieveAssembly {
  double direct = 0.0;
  double X = 0.0;
  double level = 0.0;
  double G = 0.0;
  sieve::TheoremABound theorem_a;
  std::size_t support1 = 0;
  std::size_t support2 = 0;
};

SieveAssembly sieve_assembly(const EtaFunction& eta, const Calibration& cal,
                             double gamma, std::uint64_t a, std::uint64_t a_l,
                             std::int64_t ell, std::uint64_t x, double z,
                             double level_exponent = kLevelExponent,
                             euler::EtaConvention convention =
                                 euler::EtaConvention::kDefinition);

}  // namespace shiftsieve::shift

#endif  // SHIFTSIEVE_SHIFTSUMS_HPP_
