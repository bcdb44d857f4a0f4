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


#include "shiftsieve/sieveweights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::sieve {

namespace {

constexpr long double kMaxProduct = 4.0e18L;

void enumerate_support(const std::vector<std::uint64_t>& desc, double level,
                       std::size_t start, std::uint64_t prod, int r, int sign,
                       std::vector<WeightEntry>& out) {
  for (std::size_t i = start; i < desc.size(); ++i) {
    const std::uint64_t q = desc[i];
    const int m = r + 1;
    if (m % 2 == 1) {
      const long double lhs = static_cast<long double>(prod) * q * q * q;
      if (!(lhs < static_cast<long double>(level))) continue;
    }
    const std::uint64_t d = prod * q;
    out.push_back({d, -sign});
    enumerate_support(desc, level, i + 1, d, m, -sign, out);
  }
}

// Prime indices of a squarefree d composed of the given primes.
std::uint64_t mask_of(std::uint64_t d, const std::vector<std::uint64_t>& pr) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < pr.size() && d > 1; ++i) {
    if (d % pr[i] == 0) {
      mask |= std::uint64_t{1} << i;
      d /= pr[i];
    }
  }
  return mask;
}

std::vector<std::uint64_t> active_primes(const SieveWeights& w1,
                                         const SieveWeights& w2) {
  std::vector<std::uint64_t> out;
  for (const SieveWeights* w : {&w1, &w2}) {
    for (const auto& e : w->support()) {
      std::uint64_t d = e.d;
      for (std::uint64_t p : w->context().primes) {
        if (d == 1) break;
        if (d % p == 0) {
          out.push_back(p);
          d /= p;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<std::uint64_t> SieveContext::product() const {
  std::uint64_t prod = 1;
  for (std::uint64_t p : primes) {
    if (prod > std::numeric_limits<std::uint64_t>::max() / p) return std::nullopt;
    prod *= p;
  }
  return prod;
}

bool SieveContext::contains(std::uint64_t p) const {
  return std::binary_search(primes.begin(), primes.end(), p);
}

SieveContext make_context(double z, std::uint64_t exclude_divisors_of) {
  require(std::isfinite(z) && z >= 2.0, ErrorKind::kDomain, "z must be >= 2");
  require(exclude_divisors_of >= 1, ErrorKind::kArgument,
          "exclusion argument must be positive");
  SieveContext ctx;
  ctx.z = z;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint64_t>(z))) {
    if (exclude_divisors_of % p == 0) {
      ctx.excluded.push_back(p);
    } else {
      ctx.primes.push_back(p);
    }
  }
  return ctx;
}

SieveContext context_from_primes(std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::uint64_t p : primes) {
    require(is_prime(p), ErrorKind::kArgument, "context entries must be prime");
  }
  SieveContext ctx;
  ctx.z = primes.empty() ? 2.0 : static_cast<double>(primes.back());
  ctx.primes = std::move(primes);
  return ctx;
}

SieveWeights::SieveWeights(SieveContext context, double level,
                           std::vector<WeightEntry> support)
    : context_(std::move(context)), level_(level), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.d < b.d; });
  for (const auto& e : support_) index_[e.d] = e.xi;
}

int SieveWeights::xi(std::uint64_t d) const {
  const auto it = index_.find(d);
  return it == index_.end() ? 0 : it->second;
}

SieveWeights linear_sieve_weights(const SieveContext& context, double level) {
  require(level > 1.0, ErrorKind::kArgument, "sieve level must exceed 1");
  require(level <= static_cast<double>(kMaxProduct), ErrorKind::kCapacity,
          "sieve level exceeds 64-bit support");
  std::vector<std::uint64_t> desc(context.primes.rbegin(),
                                  context.primes.rend());
  std::vector<WeightEntry> support{{1, 1}};
  enumerate_support(desc, level, 0, 1, 0, 1, support);
  return SieveWeights(context, level, std::move(support));
}

std::int64_t upper_bound_residual(const SieveWeights& weights,
                                  std::uint64_t n) {
  require(n >= 1, ErrorKind::kArgument, "n must be positive");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t p : weights.context().primes) {
    if (p > n) break;
    if (n % p == 0) divs.push_back(p);
  }
  require(divs.size() < 63, ErrorKind::kCapacity, "too many prime divisors");
  std::int64_t sum = 0;
  const std::uint64_t subsets = std::uint64_t{1} << divs.size();
  for (std::uint64_t s = 0; s < subsets; ++s) {
    std::uint64_t d = 1;
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (s >> i & 1) d *= divs[i];
    }
    sum += weights.xi(d);
  }
  return sum - (divs.empty() ? 1 : 0);
}

DensityFunction::DensityFunction(std::map<std::uint64_t, double> values)
    : values_(std::move(values)) {}

double DensityFunction::at_prime(std::uint64_t p) const {
  const auto it = values_.find(p);
  return it == values_.end() ? 0.0 : it->second;
}

double DensityFunction::at(std::uint64_t d) const {
  double g = 1.0;
  for (const auto& [p, k] : factor_trial(d)) {
    if (k > 1) return 0.0;
    g *= at_prime(p);
  }
  return g;
}

DensityFunction constant_density(const SieveContext& context, double g) {
  std::map<std::uint64_t, double> v;
  for (std::uint64_t p : context.primes) v[p] = g;
  return DensityFunction(std::move(v));
}

DensityFunction density_g1(const EigenvalueTable& table,
                           const SieveContext& context, std::uint64_t a_l) {
  std::map<std::uint64_t, double> v;
  for (std::uint64_t p : context.primes) {
    const double lp = table.at(p);
    v[p] = (a_l % p == 0) ? 0.0 : lp * lp / static_cast<double>(p);
  }
  return DensityFunction(std::move(v));
}

DensityFunction density_g2(const EigenvalueTable& table,
                           const SieveContext& context, std::uint64_t a,
                           std::uint64_t a_l) {
  std::map<std::uint64_t, double> v;
  for (std::uint64_t p : context.primes) {
    const double pd = static_cast<double>(p);
    if (a % p == 0) {
      v[p] = 0.0;
    } else if (a_l % p == 0) {
      v[p] = 1.0 / pd;
    } else {
      const double lp = table.at(p);
      v[p] = (1.0 - lp * lp / pd) / (pd - 1.0);
    }
  }
  return DensityFunction(std::move(v));
}

double bilinear_G(const SieveWeights& w1, const SieveWeights& w2,
                  const DensityFunction& g1, const DensityFunction& g2) {
  const auto active = active_primes(w1, w2);
  CompensatedSum<double> total;
  if (active.size() <= 20) {
    // Subset sums over prime masks: B[T] = sum_{mask(d2) subset of T}.
    const std::size_t full = std::size_t{1} << active.size();
    std::vector<double> b(full, 0.0);
    for (const auto& e : w2.support()) {
      b[mask_of(e.d, active)] += e.xi * g2.at(e.d);
    }
    for (std::size_t bit = 0; bit < active.size(); ++bit) {
      for (std::size_t m = 0; m < full; ++m) {
        if (m >> bit & 1) b[m] += b[m ^ (std::size_t{1} << bit)];
      }
    }
    for (const auto& e : w1.support()) {
      const std::size_t comp = (full - 1) & ~mask_of(e.d, active);
      total.add(e.xi * g1.at(e.d) * b[comp]);
    }
    return total.value();
  }
  for (const auto& e1 : w1.support()) {
    CompensatedSum<double> inner;
    for (const auto& e2 : w2.support()) {
      if (std::gcd(e1.d, e2.d) == 1) inner.add(e2.xi * g2.at(e2.d));
    }
    total.add(e1.xi * g1.at(e1.d) * inner.value());
  }
  return total.value();
}

TheoremABound theoremA_bound(const SieveContext& context,
                             const DensityFunction& g1,
                             const DensityFunction& g2, double level1,
                             double level2) {
  CompensatedSum<double> log_c, log_v1, log_v2;
  for (std::uint64_t p : context.primes) {
    const double a = g1.at_prime(p);
    const double b = g2.at_prime(p);
    for (double g : {a, b}) {
      if (g == 1.0) {
        fail(ErrorKind::kSingularity,
             "density equals 1 at prime " + std::to_string(p));
      }
      require(g >= 0.0 && g < 1.0, ErrorKind::kDomain,
              "density must lie in [0, 1)");
    }
    const double pd = static_cast<double>(p);
    log_c.add(std::log1p(a * b / ((1.0 - a) * (1.0 - b))));
    if (pd < level1) log_v1.add(std::log1p(-a));
    if (pd < level2) log_v2.add(std::log1p(-b));
  }
  TheoremABound out;
  out.C = std::exp(log_c.value());
  out.V1 = std::exp(log_v1.value());
  out.V2 = std::exp(log_v2.value());
  out.product = out.C * out.V1 * out.V2;
  return out;
}

}  // namespace shiftsieve::sieve
