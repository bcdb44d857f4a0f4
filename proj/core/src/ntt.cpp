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


#include "shiftsieve/ntt.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::ntt {

namespace {

constexpr std::array<NttPrime, 6> kPrimes = {{
    {4611686017554972673ULL, 5},
    {4611686015004835841ULL, 3},
    {4611686009971671041ULL, 6},
    {4611686007555751937ULL, 3},
    {4611686007488643073ULL, 5},
    {4611686007085989889ULL, 22},
}};

using boost::multiprecision::uint256_t;

std::uint64_t residue(i128 v, std::uint64_t p) {
  i128 r = v % static_cast<i128>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

long double abs_ld(i128 v) {
  return v < 0 ? -static_cast<long double>(v) : static_cast<long double>(v);
}

std::size_t transform_size(std::size_t la, std::size_t lb) {
  std::size_t need = la + lb - 1;
  std::size_t n = 1;
  while (n < need) n <<= 1;
  require(n <= (std::size_t{1} << kMaxLog2Size), ErrorKind::kCapacity,
          "series length exceeds the NTT size ceiling");
  return std::max<std::size_t>(n, 2);
}

// Residues of the truncated product, one vector per channel.
std::vector<std::vector<std::uint64_t>> channel_products(
    std::span<const i128> a, std::span<const i128> b, bool square,
    std::size_t len, int channels) {
  const std::size_t la = std::min(a.size(), len);
  const std::size_t lb = std::min(b.size(), len);
  std::vector<std::vector<std::uint64_t>> out(channels);
  if (la == 0 || lb == 0) {
    for (auto& c : out) c.assign(len, 0);
    return out;
  }
  const std::size_t n = transform_size(la, lb);
  for (int c = 0; c < channels; ++c) {
    const Transform t(kPrimes[c], n);
    const Montgomery& f = t.field();
    const std::uint64_t p = f.modulus();
    std::vector<std::uint64_t> fa(n, 0);
    for (std::size_t i = 0; i < la; ++i) fa[i] = residue(a[i], p);
    t.forward(fa);
    // Montgomery products introduce 1/R, removed with the 1/n scale below.
    if (square) {
      for (auto& v : fa) v = f.mul(v, v);
    } else {
      std::vector<std::uint64_t> fb(n, 0);
      for (std::size_t i = 0; i < lb; ++i) fb[i] = residue(b[i], p);
      t.forward(fb);
      for (std::size_t i = 0; i < n; ++i) fa[i] = f.mul(fa[i], fb[i]);
    }
    t.inverse(fa);
    const std::uint64_t scale = f.to_mont(f.to_mont(modinv(n % p, p)));
    std::vector<std::uint64_t>& dst = out[c];
    dst.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      dst[i] = i < n ? f.mul(fa[i], scale) : 0;
    }
  }
  return out;
}

class Garner {
 public:
  explicit Garner(int k) : k_(k) {
    for (int i = 0; i < k; ++i) fields_.emplace_back(kPrimes[i].p);
    for (int i = 0; i < k; ++i) {
      std::vector<std::uint64_t> row;
      for (int j = 0; j < i; ++j) {
        const std::uint64_t pi = kPrimes[i].p;
        row.push_back(fields_[i].to_mont(modinv(kPrimes[j].p % pi, pi)));
      }
      inv_.push_back(row);
    }
    u128 w = 1;
    uint256_t big = 1;
    for (int i = 0; i < k; ++i) {
      weight_narrow_.push_back(w);
      weight_wide_.push_back(big);
      w *= kPrimes[i].p;
      big *= kPrimes[i].p;
    }
    modulus_narrow_ = w;
    modulus_wide_ = big;
  }

  // Mixed-radix digits of the residue vector; returns true if the balanced
  // representative is negative.
  bool digits(const std::vector<std::vector<std::uint64_t>>& res,
              std::size_t idx, std::uint64_t* d) const {
    for (int i = 0; i < k_; ++i) {
      const std::uint64_t pi = kPrimes[i].p;
      std::uint64_t t = res[i][idx];
      for (int j = 0; j < i; ++j) {
        std::uint64_t dj = d[j];
        if (dj >= pi) dj -= pi;
        t = fields_[i].mul(fields_[i].sub(t, dj), inv_[i][j]);
      }
      d[i] = t;
    }
    // value / modulus, dominated by the top digit.
    long double frac = 0.0L;
    for (int i = 0; i < k_; ++i) {
      frac = (frac + static_cast<long double>(d[i])) /
             static_cast<long double>(kPrimes[i].p);
    }
    return frac > 0.5L;
  }

  i128 narrow(const std::vector<std::vector<std::uint64_t>>& res,
              std::size_t idx) const {
    std::uint64_t d[kPrimes.size()];
    const bool neg = digits(res, idx, d);
    u128 acc = 0;
    for (int i = 0; i < k_; ++i) acc += weight_narrow_[i] * d[i];
    if (neg) acc -= modulus_narrow_;
    return static_cast<i128>(acc);
  }

  Int256 wide(const std::vector<std::vector<std::uint64_t>>& res,
              std::size_t idx) const {
    std::uint64_t d[kPrimes.size()];
    const bool neg = digits(res, idx, d);
    uint256_t acc = 0;
    for (int i = 0; i < k_; ++i) acc += weight_wide_[i] * d[i];
    if (neg) return -static_cast<Int256>(modulus_wide_ - acc);
    return static_cast<Int256>(acc);
  }

 private:
  int k_;
  std::vector<Montgomery> fields_;
  std::vector<std::vector<std::uint64_t>> inv_;
  std::vector<u128> weight_narrow_;
  std::vector<uint256_t> weight_wide_;
  u128 modulus_narrow_ = 0;
  uint256_t modulus_wide_;
};

constexpr std::uint64_t kGarnerBlock = std::uint64_t{1} << 16;

}  // namespace

std::span<const NttPrime> primes() { return kPrimes; }

Montgomery::Montgomery(std::uint64_t p) : p_(p) {
  require((p & 1) && p < (std::uint64_t{1} << 62), ErrorKind::kArgument,
          "Montgomery modulus must be odd and below 2^62");
  std::uint64_t x = p;  // p * p == 1 mod 8
  for (int i = 0; i < 5; ++i) x *= 2 - p * x;
  pinv_ = x;
  const std::uint64_t r = (0 - p) % p;  // 2^64 mod p
  r2_ = mulmod(r, r, p);
  one_ = r;
}

std::uint64_t Montgomery::pow(std::uint64_t base, std::uint64_t e) const {
  std::uint64_t r = one_;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

namespace {

// Levels whose butterflies stay inside blocks of this many words are run
// block by block so the working set stays in cache.
constexpr std::size_t kCacheBlock = std::size_t{1} << 13;

// a * w mod p in [0, 2p) for any a < 2^64, given wq = floor(w 2^64 / p).
inline std::uint64_t mul_shoup(std::uint64_t a, std::uint64_t w,
                               std::uint64_t wq, std::uint64_t p) {
  const std::uint64_t q =
      static_cast<std::uint64_t>((static_cast<u128>(a) * wq) >> 64);
  return a * w - q * p;
}

// Gentleman-Sande level; values stay in [0, 2p).
void dif_level(const RootPair* __restrict roots, std::uint64_t p,
               std::uint64_t* __restrict a, std::size_t n,
               std::size_t len, std::size_t step) {
  const std::uint64_t p2 = 2 * p;
  for (std::size_t s = 0; s < n; s += 2 * len) {
    std::uint64_t* lo = a + s;
    std::uint64_t* hi = lo + len;
    for (std::size_t j = 0; j < len; ++j) {
      const std::uint64_t u = lo[j];
      const std::uint64_t v = hi[j];
      std::uint64_t x = u + v;
      x -= (x >= p2) ? p2 : 0;
      lo[j] = x;
      const RootPair& r = roots[j * step];
      hi[j] = mul_shoup(u - v + p2, r.w, r.wq, p);
    }
  }
}

// Cooley-Tukey level with inverse roots; values stay in [0, 4p). Uses
// w^{-j} = -w^{len-j} for a root of order 2*len.
void dit_level(const RootPair* __restrict roots, std::uint64_t p,
               std::uint64_t* __restrict a, std::size_t n,
               std::size_t len, std::size_t step) {
  const std::uint64_t p2 = 2 * p;
  for (std::size_t s = 0; s < n; s += 2 * len) {
    std::uint64_t* lo = a + s;
    std::uint64_t* hi = lo + len;
    {
      std::uint64_t u = lo[0];
      u -= (u >= p2) ? p2 : 0;
      std::uint64_t v = hi[0];
      v -= (v >= p2) ? p2 : 0;
      lo[0] = u + v;
      hi[0] = u - v + p2;
    }
    for (std::size_t j = 1; j < len; ++j) {
      std::uint64_t u = lo[j];
      u -= (u >= p2) ? p2 : 0;
      const RootPair& r = roots[(len - j) * step];
      const std::uint64_t t = mul_shoup(hi[j], r.w, r.wq, p);
      lo[j] = u - t + p2;
      hi[j] = u + t;
    }
  }
}

// Two Gentleman-Sande levels (len, len/2) fused so each word is loaded once.
void dif_level2(const RootPair* __restrict roots, std::uint64_t p,
                std::uint64_t* __restrict a, std::size_t n, std::size_t len,
                std::size_t step) {
  const std::uint64_t p2 = 2 * p;
  const std::size_t h = len / 2;
  for (std::size_t s = 0; s < n; s += 2 * len) {
    std::uint64_t* a0 = a + s;
    std::uint64_t* a1 = a0 + h;
    std::uint64_t* a2 = a0 + len;
    std::uint64_t* a3 = a2 + h;
    for (std::size_t j = 0; j < h; ++j) {
      const RootPair& r0 = roots[j * step];
      const RootPair& r1 = roots[(j + h) * step];
      const RootPair& r2 = roots[j * 2 * step];
      const std::uint64_t x0 = a0[j], x1 = a1[j], x2 = a2[j], x3 = a3[j];
      std::uint64_t y0 = x0 + x2;
      y0 -= (y0 >= p2) ? p2 : 0;
      std::uint64_t y1 = x1 + x3;
      y1 -= (y1 >= p2) ? p2 : 0;
      const std::uint64_t y2 = mul_shoup(x0 - x2 + p2, r0.w, r0.wq, p);
      const std::uint64_t y3 = mul_shoup(x1 - x3 + p2, r1.w, r1.wq, p);
      std::uint64_t z0 = y0 + y1;
      z0 -= (z0 >= p2) ? p2 : 0;
      std::uint64_t z2 = y2 + y3;
      z2 -= (z2 >= p2) ? p2 : 0;
      a0[j] = z0;
      a1[j] = mul_shoup(y0 - y1 + p2, r2.w, r2.wq, p);
      a2[j] = z2;
      a3[j] = mul_shoup(y2 - y3 + p2, r2.w, r2.wq, p);
    }
  }
}

// Two Cooley-Tukey levels (len, 2 len) fused.
void dit_level2(const RootPair* __restrict roots, std::uint64_t p,
                std::uint64_t* __restrict a, std::size_t n, std::size_t len,
                std::size_t step) {
  const std::uint64_t p2 = 2 * p;
  const std::size_t l = len;
  for (std::size_t s = 0; s < n; s += 4 * l) {
    std::uint64_t* a0 = a + s;
    std::uint64_t* a1 = a0 + l;
    std::uint64_t* a2 = a1 + l;
    std::uint64_t* a3 = a2 + l;
    for (std::size_t j = 0; j < l; ++j) {
      std::uint64_t x0 = a0[j];
      x0 -= (x0 >= p2) ? p2 : 0;
      std::uint64_t x2 = a2[j];
      x2 -= (x2 >= p2) ? p2 : 0;
      std::uint64_t t1, t3;
      if (j == 0) {
        t1 = a1[0];
        t1 -= (t1 >= p2) ? p2 : 0;
        t3 = a3[0];
        t3 -= (t3 >= p2) ? p2 : 0;
        // w^0 = 1: x + t and x - t.
        const std::uint64_t y0 = x0 + t1, y1 = x0 - t1 + p2;
        const std::uint64_t y2 = x2 + t3, y3 = x2 - t3 + p2;
        std::uint64_t u0 = y0 - ((y0 >= p2) ? p2 : 0);
        std::uint64_t u2 = y2 - ((y2 >= p2) ? p2 : 0);
        a0[0] = u0 + u2;
        a2[0] = u0 - u2 + p2;
        std::uint64_t u1 = y1 - ((y1 >= p2) ? p2 : 0);
        const RootPair& rb = roots[l * (step / 2)];  // w_{4l}^{l}
        const std::uint64_t t = mul_shoup(y3, rb.w, rb.wq, p);
        a1[0] = u1 - t + p2;
        a3[0] = u1 + t;
        continue;
      }
      const RootPair& ra = roots[(l - j) * step];
      t1 = mul_shoup(a1[j], ra.w, ra.wq, p);
      t3 = mul_shoup(a3[j], ra.w, ra.wq, p);
      // Inner level: twiddle w_{2l}^{-j} = -w_{2l}^{l-j}.
      const std::uint64_t y0 = x0 - t1 + p2, y1 = x0 + t1;
      const std::uint64_t y2 = x2 - t3 + p2, y3 = x2 + t3;
      // Outer level: w_{4l}^{-j} = -w_{4l}^{2l-j}, w_{4l}^{-(j+l)} =
      // -w_{4l}^{l-j}.
      std::uint64_t u0 = y0 - ((y0 >= p2) ? p2 : 0);
      const RootPair& rc = roots[(2 * l - j) * (step / 2)];
      const std::uint64_t tc = mul_shoup(y2, rc.w, rc.wq, p);
      a0[j] = u0 - tc + p2;
      a2[j] = u0 + tc;
      std::uint64_t u1 = y1 - ((y1 >= p2) ? p2 : 0);
      const RootPair& rd = roots[(l - j) * (step / 2)];
      const std::uint64_t td = mul_shoup(y3, rd.w, rd.wq, p);
      a1[j] = u1 - td + p2;
      a3[j] = u1 + td;
    }
  }
}

}  // namespace

Transform::Transform(const NttPrime& prime, std::size_t n)
    : field_(prime.p), n_(n) {
  require(n >= 2 && (n & (n - 1)) == 0, ErrorKind::kArgument,
          "transform size must be a power of two");
  require((prime.p - 1) % n == 0, ErrorKind::kCapacity,
          "transform size exceeds the prime's two-adic order");
  const std::uint64_t p = prime.p;
  const std::uint64_t w =
      field_.pow(field_.to_mont(prime.generator), (p - 1) / n);
  roots_.resize(n / 2);
  std::uint64_t cur = field_.one();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const std::uint64_t plain = field_.from_mont(cur);
    roots_[j] = {plain,
                 static_cast<std::uint64_t>((static_cast<u128>(plain) << 64) / p)};
    cur = field_.mul(cur, w);
  }
}

void Transform::forward(std::vector<std::uint64_t>& a) const {
  const std::uint64_t p = field_.modulus();
  const std::size_t block = std::min(n_, kCacheBlock);
  std::size_t len = n_ / 2;
  std::size_t step = 1;
  for (; 2 * len > block; len >>= 1, step <<= 1) {
    if (len / 2 >= block / 2 && len >= 2) {
      dif_level2(roots_.data(), p, a.data(), n_, len, step);
      len >>= 1;
      step <<= 1;
    } else {
      dif_level(roots_.data(), p, a.data(), n_, len, step);
    }
  }
  for (std::size_t b = 0; b < n_; b += block) {
    for (std::size_t l = len, st = step; l >= 1; l >>= 1, st <<= 1) {
      dif_level(roots_.data(), p, a.data() + b, block, l, st);
    }
  }
}

void Transform::inverse(std::vector<std::uint64_t>& a) const {
  const std::uint64_t p = field_.modulus();
  const std::size_t block = std::min(n_, kCacheBlock);
  for (std::size_t b = 0; b < n_; b += block) {
    for (std::size_t l = 1, st = n_ / 2; l < block; l <<= 1, st >>= 1) {
      dit_level(roots_.data(), p, a.data() + b, block, l, st);
    }
  }
  std::size_t l = block;
  std::size_t st = n_ / (2 * block);
  while (l < n_) {
    if (2 * l < n_) {
      dit_level2(roots_.data(), p, a.data(), n_, l, st);
      l <<= 2;
      st >>= 2;
    } else {
      dit_level(roots_.data(), p, a.data(), n_, l, st);
      l <<= 1;
      st >>= 1;
    }
  }
}

int channels_for(double log2_bound) {
  double bits = 0.0;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    bits += std::log2(static_cast<double>(kPrimes[i].p));
    if (bits > log2_bound + 3.0) return static_cast<int>(i + 1);
  }
  fail(ErrorKind::kCapacity, "coefficient bound exceeds the residue system");
}

double product_log2_bound(std::span<const i128> a, std::span<const i128> b) {
  long double l1a = 0, l1b = 0, ma = 0, mb = 0;
  for (i128 v : a) {
    l1a += abs_ld(v);
    ma = std::max(ma, abs_ld(v));
  }
  for (i128 v : b) {
    l1b += abs_ld(v);
    mb = std::max(mb, abs_ld(v));
  }
  const long double bound = std::min(l1a * mb, l1b * ma);
  if (bound < 1.0L) return 0.0;
  return static_cast<double>(std::log2(bound));
}

std::vector<Int256> multiply(std::span<const i128> a, std::span<const i128> b,
                             std::size_t len) {
  const std::span<const i128> ta = a.first(std::min(a.size(), len));
  const std::span<const i128> tb = b.first(std::min(b.size(), len));
  const int k = channels_for(product_log2_bound(ta, tb));
  require(k <= 4, ErrorKind::kCapacity,
          "product coefficients exceed 256-bit reconstruction");
  const auto res = channel_products(ta, tb, false, len, k);
  const Garner g(k);
  std::vector<Int256> out(len);
  for_each_block(0, len, kGarnerBlock,
                 [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t i = lo; i < hi; ++i) out[i] = g.wide(res, i);
                 });
  return out;
}

std::vector<i128> square_narrow(std::span<const i128> a, std::size_t len) {
  const std::span<const i128> ta = a.first(std::min(a.size(), len));
  const double bound = product_log2_bound(ta, ta);
  require(bound <= 125.0, ErrorKind::kCapacity,
          "square coefficients exceed 126 bits");
  const int k = channels_for(bound);
  const auto res = channel_products(ta, ta, true, len, k);
  const Garner g(k);
  std::vector<i128> out(len);
  for_each_block(0, len, kGarnerBlock,
                 [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t i = lo; i < hi; ++i) {
                     out[i] = g.narrow(res, i);
                   }
                 });
  return out;
}

void square_stream(std::span<const i128> a, std::size_t len,
                   const std::function<void(std::size_t, const Int256&)>& sink) {
  const std::span<const i128> ta = a.first(std::min(a.size(), len));
  const int k = channels_for(product_log2_bound(ta, ta));
  require(k <= 4, ErrorKind::kCapacity,
          "square coefficients exceed 256-bit reconstruction");
  const auto res = channel_products(ta, ta, true, len, k);
  const Garner g(k);
  for_each_block(0, len, kGarnerBlock,
                 [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t i = lo; i < hi; ++i) sink(i, g.wide(res, i));
                 });
}

Int256 widen(i128 v) {
  const bool neg = v < 0;
  const u128 mag = neg ? static_cast<u128>(0) - static_cast<u128>(v)
                       : static_cast<u128>(v);
  Int256 r = static_cast<Int256>(static_cast<std::uint64_t>(mag >> 64));
  r <<= 64;
  r += static_cast<std::uint64_t>(mag);
  return neg ? -r : r;
}

std::vector<Int256> multiply_naive(std::span<const i128> a,
                                   std::span<const i128> b, std::size_t len) {
  std::vector<Int256> out(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    const Int256 ai = widen(a[i]);
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (b[j] != 0) out[i + j] += ai * widen(b[j]);
    }
  }
  return out;
}

}  // namespace shiftsieve::ntt
