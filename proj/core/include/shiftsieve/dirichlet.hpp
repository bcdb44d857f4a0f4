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


// Dirichlet characters, eta-sums twisted by them, sums in residue classes
// rebuilt by orthogonality, and the smoothed dyadic sandwich.

#ifndef SHIFTSIEVE_DIRICHLET_HPP_
#define SHIFTSIEVE_DIRICHLET_HPP_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "shiftsieve/eulerprod.hpp"
#include "shiftsieve/shiftsums.hpp"

namespace shiftsieve::dirichlet {

struct Character {
  std::uint64_t modulus = 1;
  std::vector<int> index;  // exponents on the generators
  bool principal = true;
  std::vector<std::complex<double>> values;  // values[n mod q]

  std::complex<double> operator()(std::uint64_t n) const {
    return values[n % modulus];
  }
};

class CharacterTable {
 public:
  explicit CharacterTable(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t phi() const { return phi_; }
  // Principal character first, then lexicographic in the generator exponents.
  const std::vector<Character>& characters() const { return chars_; }
  const Character& operator[](std::size_t i) const { return chars_[i]; }
  std::size_t size() const { return chars_.size(); }

  // max |sum_chi conj(chi(m)) chi(n) - phi(q) [n = m]| over coprime m, n,
  // and max |sum_n chi_i(n) conj(chi_j(n)) - phi(q) [i = j]|.
  double column_orthogonality_error() const;
  double row_orthogonality_error() const;

 private:
  std::uint64_t q_;
  std::uint64_t phi_;
  std::vector<Character> chars_;
};

CharacterTable characters_mod_q(std::uint64_t q);

// sum_{n <= x} chi(n) eta(n).
std::complex<double> twisted_eta_sum(const shift::EtaFunction& eta,
                                     const Character& chi, std::uint64_t x);

// sum_{n <= x, n = r mod q} eta(n) for every residue r, coprime or not.
std::vector<double> residue_class_sums(const shift::EtaFunction& eta,
                                       std::uint64_t q, std::uint64_t x);

struct ProgressionEtaSum {
  double direct = 0.0;
  double via_orthogonality = 0.0;
  double main = 0.0;
};

ProgressionEtaSum progression_eta_sum(
    const shift::EtaFunction& eta, const CharacterTable& chars,
    std::uint64_t m, std::uint64_t x, const shift::Calibration& cal,
    double gamma,
    euler::EtaConvention convention = euler::EtaConvention::kDefinition);

// Every reduced class at once, sharing the twisted sums.
std::vector<ProgressionEtaSum> progression_eta_sums(
    const shift::EtaFunction& eta, const CharacterTable& chars,
    std::uint64_t x, const shift::Calibration& cal, double gamma,
    euler::EtaConvention convention = euler::EtaConvention::kDefinition);

// max over reduced m of |A_m - mean| / mean.
double equidistribution_spread(std::span<const double> class_sums,
                               std::uint64_t q);

// C-infinity step: 0 for u <= 0, 1 for u >= 1, the normalized integral of
// exp(-1/(1-t^2)) in between.
double smooth_step(double u);

struct SmoothedSumResult {
  double sharp = 0.0;       // sum over x <= n <= 2x
  double majorant = 0.0;    // weight 1 on [x, 2x], support [x - y, 2x + y]
  double minorant = 0.0;    // weight <= 1, support [x, 2x]
  double main = 0.0;        // r x
  double error_bound = 0.0; // x^{3/4 + eps} Q^{1/2 + eps}
};

inline constexpr double kReportEpsilon = 0.01;

// coeffs[n] for n = 0..N with N >= 2x + y; coefficients must be >= 0.
SmoothedSumResult smoothed_dyadic_sum(std::span<const double> coeffs, double x,
                                      double y, double residue = 0.0,
                                      double Q = 1.0);

}  // namespace shiftsieve::dirichlet

#endif  // SHIFTSIEVE_DIRICHLET_HPP_
