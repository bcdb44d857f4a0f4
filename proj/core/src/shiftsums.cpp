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


#include "shiftsieve/shiftsums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::shift {

namespace {

std::uint64_t abs_ell(std::int64_t ell) {
  require(ell != 0, ErrorKind::kArgument, "shift must be non-zero");
  return static_cast<std::uint64_t>(ell < 0 ? -ell : ell);
}

// Products of the given primes, each below 2^63, for batched gcd tests.
class PrimeProductChunks {
 public:
  explicit PrimeProductChunks(const std::vector<std::uint64_t>& primes) {
    std::uint64_t cur = 1;
    for (std::uint64_t p : primes) {
      if (cur > (std::uint64_t{1} << 63) / p) {
        chunks_.push_back(cur);
        cur = 1;
      }
      cur *= p;
    }
    if (cur > 1) chunks_.push_back(cur);
  }
  bool coprime(std::uint64_t n) const {
    for (std::uint64_t c : chunks_) {
      if (std::gcd(c, n) != 1) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> chunks_;
};

std::vector<std::uint64_t> sifting_primes(double z, std::uint64_t avoid) {
  std::vector<std::uint64_t> out;
  if (z < 2.0) return out;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(z))) {
    if (avoid % p != 0) out.push_back(p);
  }
  return out;
}

bool smooth_to(const Factorizer& f, std::uint64_t n, double z) {
  return smooth_split(f, n, z).b == 1;
}

struct SplitTerm {
  std::uint64_t a;
  std::uint64_t a_l;
  double weight;  // |lambda(n) lambda(n + l)|
};

// Calls visit(block, term) for n in [1, x] with non-zero n + l.
template <typename Visit>
void for_each_split(const EigenvalueTable& table, std::int64_t ell,
                    std::uint64_t x, double z, Visit&& visit) {
  const Factorizer& f = table.factorizer();
  for_each_block(1, x + 1, kReductionBlock,
                 [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t n = lo; n < hi; ++n) {
                     const std::int64_t m = static_cast<std::int64_t>(n) + ell;
                     if (m == 0) continue;
                     const std::uint64_t um =
                         static_cast<std::uint64_t>(m < 0 ? -m : m);
                     SplitTerm t;
                     t.a = smooth_split(f, n, z).a;
                     t.a_l = smooth_split(f, um, z).a;
                     t.weight = std::abs(table(n) * table(um));
                     visit(b, t);
                   }
                 });
}

void check_shift_range(const EigenvalueTable& table, std::int64_t ell,
                       std::uint64_t x) {
  const std::uint64_t l = abs_ell(ell);
  const std::uint64_t need = ell > 0 ? x + l : std::max(x, l);
  if (need > table.limit()) {
    fail(ErrorKind::kRange, "table limit " + std::to_string(table.limit()) +
                                " below required " + std::to_string(need));
  }
}

}  // namespace

SmoothSplit smooth_split(const Factorizer& f, std::uint64_t n, double z) {
  require(n >= 1, ErrorKind::kArgument, "n must be positive");
  SmoothSplit s;
  s.n = n;
  std::uint64_t rest = n;
  std::uint64_t a = 1;
  while (rest > 1) {
    const std::uint64_t p = f.smallest_factor(rest);
    if (static_cast<double>(p) > z) break;
    while (rest % p == 0) {
      rest /= p;
      a *= p;
    }
  }
  s.a = a;
  s.b = rest;
  return s;
}

SmoothSplit smooth_split(std::uint64_t n, double z) {
  require(n >= 1, ErrorKind::kArgument, "n must be positive");
  SmoothSplit s;
  s.n = n;
  for (const auto& [p, k] : factor_trial(n)) {
    if (static_cast<double>(p) > z) continue;
    for (int i = 0; i < k; ++i) s.a *= p;
  }
  s.b = n / s.a;
  return s;
}

double shifted_sum(const EigenvalueTable& table, std::int64_t ell,
                   std::uint64_t x) {
  check_shift_range(table, ell, x);
  if (ell > 0) {
    const auto l = static_cast<std::uint64_t>(ell);
    return deterministic_sum(1, x + 1, [&](std::uint64_t n) {
      return std::abs(table(n) * table(n + l));
    });
  }
  return deterministic_sum(1, x + 1, [&](std::uint64_t n) {
    return std::abs(table(n) * table.at_abs(static_cast<std::int64_t>(n) + ell));
  });
}

EtaFunction::EtaFunction(EigenvalueTable table)
    : EtaFunction(table, table.limit()) {}

EtaFunction::EtaFunction(EigenvalueTable table, std::uint64_t limit)
    : table_(std::move(table)), limit_(limit) {
  if (limit_ > table_.limit()) {
    fail(ErrorKind::kRange, "eta limit exceeds table limit");
  }
  auto v = std::make_shared<std::vector<double>>(limit_ + 1, 0.0);
  auto& e = *v;
  if (limit_ >= 1) e[1] = 1.0;
  const Factorizer& f = table_.factorizer();
  for (std::uint64_t n = 2; n <= limit_; ++n) {
    const std::uint64_t p = f.smallest_factor(n);
    const std::uint64_t m = n / p;
    const double lp = table_(p);
    // At p = 2, 3 only the first power carries lambda^2(p).
    e[n] = e[m] * ((p <= 3 && m % p == 0) ? 1.0 : lp * lp);
  }
  values_ = std::move(v);
}

double EtaFunction::value(std::uint64_t n) const {
  require(n >= 1, ErrorKind::kArgument, "eta needs n >= 1");
  if (n <= limit_) return (*values_)[n];
  double out = 1.0;
  for (const auto& [p, k] : table_.factorizer().factor(n)) {
    const double lp = table_.at(p);
    if (p <= 3) {
      out *= lp * lp;
    } else {
      for (int i = 0; i < k; ++i) out *= lp * lp;
    }
  }
  return out;
}

double eta_value(const EtaFunction& eta, std::uint64_t n) {
  return eta.value(n);
}

Calibration calibrate(const EigenvalueTable& table, std::uint64_t x0) {
  Calibration c;
  c.x0 = std::min<std::uint64_t>(x0, table.limit());
  require(c.x0 >= 1, ErrorKind::kDegenerate, "calibration length is zero");
  c.lambda2_sum = deterministic_sum(1, c.x0 + 1, [&](std::uint64_t n) {
    return table(n) * table(n);
  });
  c.l_hat = euler::kZeta2 * c.lambda2_sum / static_cast<double>(c.x0);
  return c;
}

PartitionSums partition_sums(const EigenvalueTable& table, std::int64_t ell,
                             std::uint64_t x, double z, double cutoff) {
  check_shift_range(table, ell, x);
  require(cutoff > 0.0 && cutoff <= 1.0, ErrorKind::kArgument,
          "cutoff exponent must lie in (0, 1]");
  PartitionSums out;
  out.x = static_cast<double>(x);
  out.z = z;
  out.ell = ell;
  out.cutoff = cutoff;
  const double thr = std::pow(out.x, cutoff);
  std::vector<std::array<CompensatedSum<double>, 4>> acc(
      block_count(1, x + 1, kReductionBlock));
  for_each_split(table, ell, x, z,
                 [&](std::size_t b, const SplitTerm& t) {
                   const bool big_a = static_cast<double>(t.a) > thr;
                   const bool big_al = static_cast<double>(t.a_l) > thr;
                   acc[b][0].add(t.weight);
                   if (big_a) acc[b][1].add(t.weight);
                   if (big_al) acc[b][2].add(t.weight);
                   if (!big_a && !big_al) acc[b][3].add(t.weight);
                 });
  std::array<std::vector<double>, 4> parts;
  for (auto& p : parts) p.reserve(acc.size());
  for (const auto& a : acc) {
    for (int i = 0; i < 4; ++i) parts[i].push_back(a[i].value());
  }
  out.S_total = pairwise_sum(std::span<const double>(parts[0]));
  out.S_A = pairwise_sum(std::span<const double>(parts[1]));
  out.S_Al = pairwise_sum(std::span<const double>(parts[2]));
  out.S_star = pairwise_sum(std::span<const double>(parts[3]));
  return out;
}

std::map<std::uint64_t, double> gcd_split(const EigenvalueTable& table,
                                          std::int64_t ell, std::uint64_t x,
                                          double z, double cutoff) {
  check_shift_range(table, ell, x);
  const std::uint64_t l = abs_ell(ell);
  const double thr = std::pow(static_cast<double>(x), cutoff);
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t v = 1; v <= l; ++v) {
    if (l % v == 0) divisors.push_back(v);
  }
  const std::size_t nb = block_count(1, x + 1, kReductionBlock);
  std::vector<std::vector<CompensatedSum<double>>> acc(
      nb, std::vector<CompensatedSum<double>>(divisors.size()));
  for_each_split(table, ell, x, z, [&](std::size_t b, const SplitTerm& t) {
    if (static_cast<double>(t.a) > thr || static_cast<double>(t.a_l) > thr) {
      return;
    }
    const std::uint64_t v = std::gcd(t.a, t.a_l);
    const auto it = std::lower_bound(divisors.begin(), divisors.end(), v);
    if (it == divisors.end() || *it != v) {
      fail(ErrorKind::kConsistency, "gcd(a, a_l) does not divide the shift");
    }
    acc[b][static_cast<std::size_t>(it - divisors.begin())].add(t.weight);
  });
  std::map<std::uint64_t, double> out;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    std::vector<double> parts(nb);
    for (std::size_t b = 0; b < nb; ++b) parts[b] = acc[b][i].value();
    out[divisors[i]] = pairwise_sum(std::span<const double>(parts));
  }
  return out;
}

double sifting_sum(const EtaFunction& eta, std::uint64_t a, std::uint64_t a_l,
                   std::int64_t ell, std::uint64_t x, double z) {
  const std::uint64_t l = abs_ell(ell);
  require(a >= 1 && a_l >= 1, ErrorKind::kArgument,
          "a and a_l must be positive");
  require(std::gcd(a, a_l) == 1, ErrorKind::kArgument,
          "a and a_l must be coprime");
  const Factorizer& f = eta.table().factorizer();
  require(smooth_to(f, a, z) && smooth_to(f, a_l, z), ErrorKind::kArgument,
          "a and a_l must be z-smooth");
  const std::uint64_t bmax = x / a;
  if (bmax > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  const PrimeProductChunks sieve(sifting_primes(z, 6 * l));
  return deterministic_sum(1, bmax + 1, [&](std::uint64_t b) {
    const std::int64_t m = static_cast<std::int64_t>(a * b) + ell;
    if (m <= 0) return 0.0;
    const auto um = static_cast<std::uint64_t>(m);
    if (um % a_l != 0) return 0.0;
    if (!sieve.coprime(b) || !sieve.coprime(um / a_l)) return 0.0;
    return eta(b);
  });
}

ProgressionSum progression_sum(const EtaFunction& eta, const Calibration& cal,
                               double gamma, std::uint64_t a,
                               std::uint64_t a_l, std::uint64_t d,
                               std::uint64_t d_l, std::int64_t ell,
                               std::uint64_t x,
                               euler::EtaConvention convention) {
  const std::uint64_t l = abs_ell(ell);
  require(a >= 1 && a_l >= 1 && d >= 1 && d_l >= 1, ErrorKind::kArgument,
          "a, a_l, d, d_l must be positive");
  ProgressionSum out;
  const std::uint64_t ad = a * d;
  const std::uint64_t q = a_l * d_l;
  out.modulus = q;
  require(std::gcd(ad, q) == 1, ErrorKind::kArgument,
          "(ad, a_l d_l) must be 1");
  // A residue sharing a factor with the modulus falls outside the reduced
  // classes the main term describes.
  if (std::gcd(l, q) != 1) {
    out.solvable = false;
    return out;
  }
  const std::uint64_t cmax = x / ad;
  if (cmax * d > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  out.residue =
      q == 1 ? 0 : mulmod(mod_signed(-ell, q), modinv(ad % q, q), q);
  const std::uint64_t first = out.residue == 0 ? q : out.residue;
  const std::uint64_t count = cmax >= first ? (cmax - first) / q + 1 : 0;
  out.A = deterministic_sum(0, count, [&](std::uint64_t k) {
    const std::uint64_t c = first + k * q;
    if (static_cast<std::int64_t>(ad * c) + ell <= 0) return 0.0;
    return eta(d * c);
  });
  const EigenvalueTable& t = eta.table();
  const double theta = euler::theta_main(t, q, gamma, convention);
  const double ld = t.at(d);
  out.main = theta / euler::kZeta2 * cal.l_hat * ld * ld /
             static_cast<double>(euler_phi(q)) * static_cast<double>(x) /
             static_cast<double>(ad);
  out.error = out.A - out.main;
  return out;
}

std::vector<DecayRow> theorem1_decay_table(const EigenvalueTable& table,
                                           std::int64_t ell,
                                           std::span<const std::uint64_t> xs) {
  std::vector<DecayRow> rows;
  rows.reserve(xs.size());
  for (std::uint64_t x : xs) {
    require(x >= 2, ErrorKind::kArgument, "decay grid needs x >= 2");
    DecayRow r;
    r.x = static_cast<double>(x);
    r.S = shifted_sum(table, ell, x);
    r.S_over_x = r.S / r.x;
    r.S_norm = r.S_over_x * std::pow(std::log(r.x), kDecayExponent);
    rows.push_back(r);
  }
  return rows;
}

double decay_slope(std::span<const DecayRow> rows) {
  require(rows.size() >= 2, ErrorKind::kDegenerate, "slope needs two rows");
  const double n = static_cast<double>(rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    require(r.x > std::exp(1.0) && r.S_over_x > 0.0, ErrorKind::kDomain,
            "slope needs x > e and positive sums");
    const double u = std::log(std::log(r.x));
    const double v = std::log(r.S_over_x);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
  }
  const double den = n * sxx - sx * sx;
  require(den > 0.0, ErrorKind::kDegenerate, "x grid has no spread");
  return (n * sxy - sx * sy) / den;
}

Lemma13Ratio lemma13_ratio(const EigenvalueTable& table,
                           const Calibration& cal, std::int64_t ell,
                           std::uint64_t x, double c) {
  Lemma13Ratio r;
  r.S = shifted_sum(table, ell, x);
  r.z = euler::sieve_cutoff(static_cast<double>(x), c);
  r.M = euler::m_product(table, r.z);
  r.l_hat = cal.l_hat;
  r.ratio = r.S / (static_cast<double>(x) * r.l_hat * r.M);
  return r;
}

SquareFullRemainder square_full_remainder(const EigenvalueTable& table,
                                          std::uint64_t a, std::uint64_t a_l,
                                          std::int64_t ell, std::uint64_t x,
                                          double z) {
  abs_ell(ell);
  require(a >= 1 && a_l >= 1, ErrorKind::kArgument,
          "a and a_l must be positive");
  require(std::gcd(a, a_l) == 1, ErrorKind::kArgument,
          "a and a_l must be coprime");
  const std::uint64_t bmax = x / a;
  if (bmax > table.limit()) fail(ErrorKind::kRange, "table too short");
  const Factorizer& f = table.factorizer();
  const PrimeProductChunks sieve(sifting_primes(z, 1));
  auto on_line = [&](std::uint64_t am_b) {
    const std::int64_t m = static_cast<std::int64_t>(am_b) + ell;
    return m > 0 && static_cast<std::uint64_t>(m) % a_l == 0;
  };

  const std::size_t nb = block_count(1, bmax + 1, kReductionBlock);
  std::vector<std::array<CompensatedSum<double>, 2>> acc(nb);
  for_each_block(1, bmax + 1, kReductionBlock,
                 [&](std::size_t blk, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t b = lo; b < hi; ++b) {
                     if (!on_line(a * b)) continue;
                     bool square = false;
                     bool big_square = false;
                     for (const auto& [p, k] : f.factor(b)) {
                       if (k >= 2) {
                         square = true;
                         if (static_cast<double>(p) > z) big_square = true;
                       }
                     }
                     if (!square) continue;
                     const double w = table(b) * table(b);
                     if (big_square) acc[blk][1].add(w);
                     const auto bl =
                         static_cast<std::uint64_t>(
                             static_cast<std::int64_t>(a * b) + ell) / a_l;
                     if (sieve.coprime(b) && sieve.coprime(bl)) {
                       acc[blk][0].add(w);
                     }
                   }
                 });
  std::vector<double> strict(nb), relaxed(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    strict[i] = acc[i][0].value();
    relaxed[i] = acc[i][1].value();
  }
  SquareFullRemainder out;
  out.strict = pairwise_sum(std::span<const double>(strict));
  out.relaxed = pairwise_sum(std::span<const double>(relaxed));

  // Square-full m built from primes > z, then the squarefree cofactors.
  std::vector<std::uint64_t> big_primes;
  for (std::uint32_t p : table.primes()) {
    if (static_cast<double>(p) <= z) continue;
    if (static_cast<std::uint64_t>(p) * p > bmax) break;
    big_primes.push_back(p);
  }
  std::vector<std::uint64_t> ms;
  auto dfs = [&](auto&& self, std::size_t start, std::uint64_t m) -> void {
    if (m > 1) ms.push_back(m);
    for (std::size_t i = start; i < big_primes.size(); ++i) {
      const std::uint64_t p = big_primes[i];
      if (m > bmax / (p * p)) break;
      for (std::uint64_t pk = p * p; m <= bmax / pk; pk *= p) {
        self(self, i + 1, m * pk);
        if (pk > bmax / p) break;
      }
    }
  };
  dfs(dfs, 0, 1);
  std::sort(ms.begin(), ms.end());
  CompensatedSum<double> dec;
  for (std::uint64_t m : ms) {
    if (static_cast<double>(m) < z * z) continue;
    const std::uint64_t cmax = bmax / m;
    CompensatedSum<double> inner;
    for (std::uint64_t b = 1; b <= cmax; ++b) {
      if (!on_line(a * m * b)) continue;
      if (!is_squarefree(b)) continue;
      inner.add(table(b) * table(b));
    }
    dec.add(table(m) * table(m) * inner.value());
  }
  out.decomposed = dec.value();
  out.normalized = out.strict * static_cast<double>(a * a_l) *
                   std::pow(z, 1.0 / 32.0) / static_cast<double>(x);
  return out;
}

SieveAssembly sieve_assembly(const EtaFunction& eta, const Calibration& cal,
                             double gamma, std::uint64_t a, std::uint64_t a_l,
                             std::int64_t ell, std::uint64_t x, double z,
                             double level_exponent,
                             euler::EtaConvention convention) {
  const std::uint64_t l = abs_ell(ell);
  SieveAssembly out;
  out.direct = sifting_sum(eta, a, a_l, ell, x, z);
  const EigenvalueTable& t = eta.table();
  out.X = euler::theta_main(t, a_l, gamma, convention) / euler::kZeta2 *
          cal.l_hat * static_cast<double>(x) /
          (static_cast<double>(a) * static_cast<double>(euler_phi(a_l)));
  out.level = std::pow(static_cast<double>(x), level_exponent);
  const sieve::SieveContext ctx = sieve::make_context(std::max(z, 2.0), 6 * l);
  const auto w = sieve::linear_sieve_weights(ctx, out.level);
  const auto g1 = sieve::density_g1(t, ctx, a_l);
  const auto g2 = sieve::density_g2(t, ctx, a, a_l);
  out.G = sieve::bilinear_G(w, w, g1, g2);
  out.theorem_a = sieve::theoremA_bound(ctx, g1, g2, out.level, out.level);
  out.support1 = w.support().size();
  out.support2 = w.support().size();
  return out;
}

}  // namespace shiftsieve::shift
