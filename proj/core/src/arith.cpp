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


#include "shiftsieve/arith.hpp"

#include <cmath>
#include <numeric>

#include "shiftsieve/error.hpp"

namespace shiftsieve {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  require(n < (std::uint64_t{1} << 32), ErrorKind::kCapacity,
          "prime list limit exceeds 2^32");
  // Odd-only sieve.
  const std::uint64_t half = (n - 1) / 2;  // index i <-> 2i+1, i >= 1
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) {
      composite[j] = true;
    }
  }
  out.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic base set for 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factor_trial(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    f.push_back({p, k});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

Factorizer::Factorizer(std::uint64_t limit) : limit_(limit) {
  require(limit < (std::uint64_t{1} << 32), ErrorKind::kCapacity,
          "factorizer limit exceeds 2^32");
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i]) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    if (i * i > limit) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      if (!spf_[j]) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint64_t Factorizer::smallest_factor(std::uint64_t n) const {
  if (n <= limit_) return spf_[n];
  if (n % 2 == 0) return 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return p;
  }
  return n;
}

bool Factorizer::is_prime(std::uint64_t n) const {
  if (n <= limit_) return n >= 2 && spf_[n] == n;
  return shiftsieve::is_prime(n);
}

Factorization Factorizer::factor(std::uint64_t n) const {
  if (n > limit_) return factor_trial(n);
  Factorization f;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    f.push_back({p, k});
  }
  return f;
}

std::uint64_t modinv(std::uint64_t a, std::uint64_t m) {
  require(m >= 1, ErrorKind::kArgument, "modulus must be positive");
  if (m == 1) return 0;
  std::int64_t t = 0;
  std::int64_t new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  require(r == 1, ErrorKind::kArgument, "value is not invertible modulo m");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_signed(std::int64_t a, std::uint64_t m) {
  const std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, k] : factor_trial(n)) phi = phi / p * (p - 1);
  return phi;
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (const auto& [p, k] : factor_trial(n)) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t d = 1;
  for (const auto& [p, k] : factor_trial(n)) d *= static_cast<std::uint64_t>(k + 1);
  return d;
}

bool is_squarefree(std::uint64_t n) { return mobius(n) != 0; }

bool is_smooth(std::uint64_t n, double z) {
  for (const auto& [p, k] : factor_trial(n)) {
    if (static_cast<double>(p) > z) return false;
  }
  return true;
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& [p, k] : factor_trial(n)) r *= p;
  return r;
}

}  // namespace shiftsieve
