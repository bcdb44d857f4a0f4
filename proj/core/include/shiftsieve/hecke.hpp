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


// Hecke eigenvalue tables: exact generation for the weight-12 discriminant
// form, file ingestion, Hecke relations and Satake parameters.

#ifndef SHIFTSIEVE_HECKE_HPP_
#define SHIFTSIEVE_HECKE_HPP_

#include <complex>
#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/ntt.hpp"

namespace shiftsieve {

enum class BoundMode { kDeligne, kKimSarnak };

std::string_view to_string(BoundMode mode);

// Largest N accepted by build_delta_table / tau_series.
inline constexpr std::uint64_t kTauCeiling = std::uint64_t{1} << 24;

struct TauSeries {
  std::uint64_t limit = 0;
  std::vector<Int256> coeffs;  // coeffs[n] = tau(n), coeffs[0] = 0

  const Int256& operator[](std::uint64_t n) const { return coeffs[n]; }
};

// Exact tau(1..N) from the cube of Jacobi's eta^3 series squared three times.
TauSeries tau_series(std::uint64_t n);

class EigenvalueTable {
 public:
  EigenvalueTable() = default;

  // values[n] for n = 0..N; values[0] is ignored and stored as 0.
  static EigenvalueTable from_values(std::vector<double> values,
                                     std::string source, BoundMode mode);

  // Prime values only (prime_values[p] for prime p <= N, other slots
  // ignored); prime powers follow the Hecke recursion and composites follow
  // multiplicativity.
  static EigenvalueTable from_prime_values(std::vector<double> prime_values,
                                           std::string source, BoundMode mode);

  std::uint64_t limit() const { return limit_; }
  const std::string& source() const { return source_; }
  BoundMode bound_mode() const { return mode_; }

  double operator()(std::uint64_t n) const { return (*values_)[n]; }
  double at(std::uint64_t n) const;  // range-checked
  // lambda(|n|), with lambda(0) = 0.
  double at_abs(std::int64_t n) const;

  std::span<const double> values() const { return *values_; }
  const Factorizer& factorizer() const { return *factorizer_; }
  const std::vector<std::uint32_t>& primes() const { return *primes_; }

  // lambda(p^k), continued by the recursion past the table limit.
  double lambda_prime_power(std::uint64_t p, int k) const;

 private:
  std::uint64_t limit_ = 0;
  std::string source_;
  BoundMode mode_ = BoundMode::kDeligne;
  std::shared_ptr<const std::vector<double>> values_;
  std::shared_ptr<const Factorizer> factorizer_;
  std::shared_ptr<const std::vector<std::uint32_t>> primes_;
};

// lambda(n) = tau(n) / n^{11/2}. The exact integer is converted to long
// double and divided once; the cast to double is the only other rounding.
EigenvalueTable build_delta_table(std::uint64_t n);

// Text format:
//   # shiftsieve-eigen v1 kind=<ap|lambda> weight=<int|maass> label=<name>
//   <p> <value>
// kind=ap with integer weight w is divided by p^{(w-1)/2}.
EigenvalueTable load_eigenvalue_table(const std::string& path, std::uint64_t n);
EigenvalueTable parse_eigenvalue_table(std::istream& in, std::uint64_t n);

// Largest amount by which a prime value exceeds the table's bound mode
// (negative when every prime is inside the bound).
double bound_excess(const EigenvalueTable& table);

// lambda(m) lambda(n) - sum_{d | (m, n)} lambda(mn / d^2).
double hecke_relation_residual(const EigenvalueTable& table, std::uint64_t m,
                               std::uint64_t n);

struct LocalParams {
  std::uint64_t p = 0;
  std::complex<double> alpha;
  std::complex<double> beta;

  // sum_{j=0}^m alpha^{m-j} beta^j, which equals lambda(p^m).
  std::complex<double> power_sum(int m) const;
};

LocalParams local_params_from_value(std::uint64_t p, double lambda_p);
LocalParams local_params(const EigenvalueTable& table, std::uint64_t p);

}  // namespace shiftsieve

#endif  // SHIFTSIEVE_HECKE_HPP_
