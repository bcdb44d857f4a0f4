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


#include "shiftsieve/smoothnum.hpp"

#include <algorithm>
#include <cmath>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::smooth {

namespace {

void check_domain(double x, double z) {
  require(std::isfinite(x) && x >= 1.0, ErrorKind::kDomain, "x must be >= 1");
  require(std::isfinite(z) && z >= 2.0, ErrorKind::kDomain, "z must be >= 2");
}

std::uint64_t floor_u64(double x) {
  return static_cast<std::uint64_t>(std::floor(x));
}

std::vector<std::uint32_t> primes_to(double z, std::uint64_t cap) {
  const std::uint64_t zz =
      std::min<std::uint64_t>(floor_u64(std::min(z, 4.0e9)), cap);
  return primes_up_to(zz);
}

// Count of n <= x built from primes[0..k].
std::uint64_t phi_rec(std::uint64_t x, const std::vector<std::uint32_t>& pr,
                      std::size_t k) {
  if (k == 0) {
    std::uint64_t c = 1;
    for (std::uint64_t v = 2; v <= x; v *= 2) ++c;
    return c;
  }
  std::uint64_t total = 0;
  for (std::uint64_t y = x; y >= 1; y /= pr[k]) {
    total += phi_rec(y, pr, k - 1);
  }
  return total;
}

void tail_rec(std::uint64_t a, std::uint64_t x, std::uint64_t lo,
              const std::vector<std::uint32_t>& pr, std::size_t start,
              CompensatedSum<double>& acc) {
  if (a > lo) acc.add(1.0 / static_cast<double>(a));
  for (std::size_t i = start; i < pr.size(); ++i) {
    if (a > x / pr[i]) break;
    tail_rec(a * pr[i], x, lo, pr, i, acc);
  }
}

}  // namespace

std::uint64_t smooth_count(double x, double z) {
  check_domain(x, z);
  const std::uint64_t xi = floor_u64(x);
  if (z >= x) return xi;
  const auto pr = primes_to(z, xi);
  if (pr.empty()) return 1;
  return phi_rec(xi, pr, pr.size() - 1);
}

double rankin_alpha_bound(double x, double z, double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::kArgument,
          "alpha must lie in (0, 1]");
  check_domain(x, z);
  double log_sum = alpha * std::log(x);
  for (std::uint32_t p : primes_to(z, ~std::uint64_t{0} >> 1)) {
    log_sum -= std::log1p(-std::pow(static_cast<double>(p), -alpha));
  }
  return std::exp(log_sum);
}

double rankin_asymptotic(double x, double z) {
  check_domain(x, z);
  return x * std::log(z) * std::exp(-std::log(x) / std::log(z));
}

std::vector<std::uint64_t> rough_count_table(std::uint64_t xmax, double z) {
  require(z >= 2.0, ErrorKind::kDomain, "z must be >= 2");
  const auto pr = primes_to(z, std::max<std::uint64_t>(xmax, 2));
  std::vector<char> rough(xmax + 1, 1);
  for (std::uint32_t p : pr) {
    for (std::uint64_t m = p; m <= xmax; m += p) rough[m] = 0;
  }
  std::vector<std::uint64_t> counts(xmax + 1, 0);
  for (std::uint64_t m = 1; m <= xmax; ++m) {
    counts[m] = counts[m - 1] + static_cast<std::uint64_t>(rough[m]);
  }
  return counts;
}

RoughCount rough_count(double x, double z) {
  check_domain(x, z);
  const std::uint64_t xi = floor_u64(x);
  const auto pr = primes_to(z, ~std::uint64_t{0} >> 1);
  RoughCount out;
  // Segmented marking; segment counts are integers so the order is moot.
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 16;
  const std::size_t segments = block_count(1, xi + 1, kSegment);
  std::vector<std::uint64_t> part(segments, 0);
  for_each_block(1, xi + 1, kSegment,
                 [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                   std::vector<char> rough(hi - lo, 1);
                   for (std::uint32_t p : pr) {
                     if (p >= hi) break;
                     std::uint64_t m = (lo + p - 1) / p * p;
                     for (; m < hi; m += p) rough[m - lo] = 0;
                   }
                   std::uint64_t c = 0;
                   for (char r : rough) c += static_cast<std::uint64_t>(r);
                   part[b] = c;
                 });
  for (std::uint64_t c : part) out.count += c;
  double log_main = std::log(x);
  for (std::uint32_t p : pr) log_main += std::log1p(-1.0 / p);
  out.main = std::exp(log_main);
  out.legendre_bound = std::ldexp(1.0, static_cast<int>(pr.size()));
  return out;
}

double smooth_reciprocal_tail(double x, double z, double cutoff) {
  check_domain(x, z);
  require(cutoff >= 0.0 && cutoff < 1.0, ErrorKind::kArgument,
          "cutoff must lie in [0, 1)");
  const std::uint64_t xi = floor_u64(x);
  const double lo_real = std::pow(x, cutoff);
  const std::uint64_t lo = floor_u64(lo_real);
  const auto pr = primes_to(z, xi);
  CompensatedSum<double> acc;
  tail_rec(1, xi, lo, pr, 0, acc);
  return acc.value();
}

}  // namespace shiftsieve::smooth
