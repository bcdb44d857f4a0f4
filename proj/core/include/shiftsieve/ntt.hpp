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


// Exact integer power-series products through a residue number system of
// 62-bit NTT primes, rebuilt coefficient-wise by Garner's algorithm.

#ifndef SHIFTSIEVE_NTT_HPP_
#define SHIFTSIEVE_NTT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace shiftsieve {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

using Int256 = boost::multiprecision::int256_t;

namespace ntt {

struct NttPrime {
  std::uint64_t p;
  std::uint64_t generator;
};

// Fixed channel set, all of the form k*2^26 + 1, ordered as used.
std::span<const NttPrime> primes();

inline constexpr int kMaxLog2Size = 26;

// Montgomery arithmetic modulo an odd p < 2^62 with R = 2^64.
class Montgomery {
 public:
  explicit Montgomery(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t one() const { return one_; }

  std::uint64_t reduce(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * pinv_;
    const std::uint64_t hi = static_cast<std::uint64_t>(t >> 64);
    const std::uint64_t mh =
        static_cast<std::uint64_t>((static_cast<u128>(m) * p_) >> 64);
    return hi >= mh ? hi - mh : hi - mh + p_;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<u128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t to_mont(std::uint64_t a) const { return mul(a % p_, r2_); }
  std::uint64_t from_mont(std::uint64_t a) const { return reduce(a); }
  std::uint64_t pow(std::uint64_t base_mont, std::uint64_t e) const;

 private:
  std::uint64_t p_;
  std::uint64_t pinv_;
  std::uint64_t r2_;
  std::uint64_t one_;
};

// In-place transforms of length n = 2^k over one channel on plain residues.
// forward() takes values in [0, p), leaves them in [0, 2p) and in
// bit-reversed order; inverse() takes that order with values below 4p and
// returns natural order in [0, 4p), unscaled by 1/n.
struct RootPair {
  std::uint64_t w;   // w^j
  std::uint64_t wq;  // floor(w^j 2^64 / p)
};

class Transform {
 public:
  Transform(const NttPrime& prime, std::size_t n);

  const Montgomery& field() const { return field_; }
  std::size_t size() const { return n_; }
  void forward(std::vector<std::uint64_t>& a) const;
  void inverse(std::vector<std::uint64_t>& a) const;

 private:
  Montgomery field_;
  std::size_t n_;
  std::vector<RootPair> roots_;  // j < n/2
};

// Smallest channel count whose modulus exceeds 8 * 2^log2_bound.
int channels_for(double log2_bound);

// log2 of a bound on every coefficient of a*b.
double product_log2_bound(std::span<const i128> a, std::span<const i128> b);

// Coefficients c_k = sum_{i+j=k} a_i b_j for k < len, exact.
std::vector<Int256> multiply(std::span<const i128> a, std::span<const i128> b,
                             std::size_t len);

// Truncated square whose coefficients must fit in 126 bits; larger bounds
// raise a capacity error.
std::vector<i128> square_narrow(std::span<const i128> a, std::size_t len);

// Truncated square delivered coefficient by coefficient. sink(k, c_k) may
// run concurrently for distinct k.
void square_stream(std::span<const i128> a, std::size_t len,
                   const std::function<void(std::size_t, const Int256&)>& sink);

Int256 widen(i128 v);

// Schoolbook product used as a test oracle.
std::vector<Int256> multiply_naive(std::span<const i128> a,
                                   std::span<const i128> b, std::size_t len);

}  // namespace ntt
}  // namespace shiftsieve

#endif  // SHIFTSIEVE_NTT_HPP_
