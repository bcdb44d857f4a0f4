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


// Elementary arithmetic: prime lists, smallest-prime-factor tables and the
// usual multiplicative functions on small integers.

#ifndef SHIFTSIEVE_ARITH_HPP_
#define SHIFTSIEVE_ARITH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

namespace shiftsieve {

struct PrimePower {
  std::uint64_t p;
  int k;
};

using Factorization = std::vector<PrimePower>;

// All primes p <= n in increasing order.
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

bool is_prime(std::uint64_t n);

// Smallest-prime-factor table on [0, limit]; factors beyond the table fall
// back to trial division.
class Factorizer {
 public:
  explicit Factorizer(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  Factorization factor(std::uint64_t n) const;
  std::uint64_t smallest_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

Factorization factor_trial(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Inverse of a modulo m; throws kArgument when gcd(a, m) != 1.
std::uint64_t modinv(std::uint64_t a, std::uint64_t m);

// a mod m for signed a, result in [0, m).
std::uint64_t mod_signed(std::int64_t a, std::uint64_t m);

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

// Every prime factor of n is <= z.
bool is_smooth(std::uint64_t n, double z);

std::uint64_t radical(std::uint64_t n);

}  // namespace shiftsieve

#endif  // SHIFTSIEVE_ARITH_HPP_
