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


// Linear (beta = 2) upper-bound sieve weights, the coupled bilinear form
// G' * G'' and the C V' V'' bound.

#ifndef SHIFTSIEVE_SIEVEWEIGHTS_HPP_
#define SHIFTSIEVE_SIEVEWEIGHTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "shiftsieve/hecke.hpp"

namespace shiftsieve::sieve {

struct SieveContext {
  double z = 2.0;
  std::vector<std::uint64_t> excluded;  // primes <= z removed from P(z)
  std::vector<std::uint64_t> primes;    // increasing

  // Product of the context primes when it fits in 64 bits.
  std::optional<std::uint64_t> product() const;
  bool contains(std::uint64_t p) const;
};

// Primes p <= z not dividing exclude_divisors_of.
SieveContext make_context(double z, std::uint64_t exclude_divisors_of = 1);
SieveContext context_from_primes(std::vector<std::uint64_t> primes);

struct WeightEntry {
  std::uint64_t d;
  int xi;
};

class SieveWeights {
 public:
  SieveWeights(SieveContext context, double level,
               std::vector<WeightEntry> support);

  const SieveContext& context() const { return context_; }
  double level() const { return level_; }
  // Sorted by d; entries with xi = 0 are not stored.
  const std::vector<WeightEntry>& support() const { return support_; }
  int xi(std::uint64_t d) const;

 private:
  SieveContext context_;
  double level_;
  std::vector<WeightEntry> support_;
  std::unordered_map<std::uint64_t, int> index_;
};

// Support D+ = {p1 > ... > pr : p1...p_{m-1} p_m^3 < D for odd m}, xi = mu.
SieveWeights linear_sieve_weights(const SieveContext& context, double level);

// sum_{d | (n, P)} xi_d - [(n, P) = 1]; non-negative for upper-bound weights.
std::int64_t upper_bound_residual(const SieveWeights& weights, std::uint64_t n);

// g(p) on context primes, 0 elsewhere, extended multiplicatively.
class DensityFunction {
 public:
  DensityFunction() = default;
  explicit DensityFunction(std::map<std::uint64_t, double> values);

  double at_prime(std::uint64_t p) const;
  double at(std::uint64_t d) const;  // squarefree d
  const std::map<std::uint64_t, double>& values() const { return values_; }

 private:
  std::map<std::uint64_t, double> values_;
};

DensityFunction constant_density(const SieveContext& context, double g);

// g'(p) = lambda^2(p)/p for p not dividing a_l, else 0.
DensityFunction density_g1(const EigenvalueTable& table,
                           const SieveContext& context, std::uint64_t a_l);
// g''(p) = h(p)/phi(p) for p not dividing a*a_l, 1/p for p | a_l with p not
// dividing a, 0 for p | a; h(p) = 1 - lambda^2(p)/p.
DensityFunction density_g2(const EigenvalueTable& table,
                           const SieveContext& context, std::uint64_t a,
                           std::uint64_t a_l);

// sum_{d1} xi'_{d1} g'(d1) sum_{(d2, d1) = 1} xi''_{d2} g''(d2).
double bilinear_G(const SieveWeights& w1, const SieveWeights& w2,
                  const DensityFunction& g1, const DensityFunction& g2);

struct TheoremABound {
  double C = 1.0;
  double V1 = 1.0;
  double V2 = 1.0;
  double product = 1.0;
};

TheoremABound theoremA_bound(const SieveContext& context,
                             const DensityFunction& g1,
                             const DensityFunction& g2, double level1,
                             double level2);

}  // namespace shiftsieve::sieve

#endif  // SHIFTSIEVE_SIEVEWEIGHTS_HPP_
