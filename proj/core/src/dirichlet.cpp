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


#include "shiftsieve/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "shiftsieve/arith.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"
#include "shiftsieve/special.hpp"

namespace shiftsieve::dirichlet {

namespace {

// One cyclic factor of (Z/qZ)^*: residues mod `modulus` map to a discrete
// log in [0, order).
struct CyclicFactor {
  std::uint64_t modulus;
  std::uint64_t order;
  std::vector<std::int64_t> dlog;  // -1 off the subgroup
};

std::uint64_t primitive_root_prime(std::uint64_t p) {
  if (p == 2) return 1;
  const auto fac = factor_trial(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [r, k] : fac) {
      (void)k;
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorKind::kConsistency, "no primitive root");
}

// Discrete logs of powers of g modulo m, subgroup of the given order.
std::vector<std::int64_t> log_table(std::uint64_t g, std::uint64_t order,
                                    std::uint64_t m) {
  std::vector<std::int64_t> t(m, -1);
  std::uint64_t v = 1 % m;
  for (std::uint64_t e = 0; e < order; ++e) {
    t[v] = static_cast<std::int64_t>(e);
    v = v * g % m;
  }
  return t;
}

// Factors and, per factor, a map from residue mod q to its exponent.
struct Decomposition {
  std::vector<std::uint64_t> orders;
  std::vector<std::vector<std::int64_t>> exps;  // exps[f][n mod q]
};

Decomposition decompose(std::uint64_t q) {
  Decomposition d;
  std::vector<CyclicFactor> factors;
  for (const auto& [p, k] : factor_trial(q)) {
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (p == 2) {
      if (k == 1) continue;  // trivial group
      // -1 generates the sign part.
      factors.push_back({pk, 2, std::vector<std::int64_t>(pk, -1)});
      if (k >= 3) {
        const std::uint64_t ord5 = pk / 4;
        auto lg5 = log_table(5, ord5, pk);
        std::vector<std::int64_t> sign(pk, -1), five(pk, -1);
        for (std::uint64_t n = 1; n < pk; n += 2) {
          if (lg5[n] >= 0) {
            sign[n] = 0;
            five[n] = lg5[n];
          } else {
            sign[n] = 1;
            five[n] = lg5[pk - n];
          }
        }
        factors.back().dlog = std::move(sign);
        factors.push_back({pk, ord5, std::move(five)});
      } else {
        factors.back().dlog[1] = 0;
        factors.back().dlog[3] = 1;
      }
      continue;
    }
    std::uint64_t g = primitive_root_prime(p);
    if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    const std::uint64_t order = pk / p * (p - 1);
    factors.push_back({pk, order, log_table(g % pk, order, pk)});
  }
  for (const auto& f : factors) {
    d.orders.push_back(f.order);
    std::vector<std::int64_t> e(q, -1);
    for (std::uint64_t n = 0; n < q; ++n) e[n] = f.dlog[n % f.modulus];
    d.exps.push_back(std::move(e));
  }
  return d;
}

}  // namespace

CharacterTable::CharacterTable(std::uint64_t q) : q_(q), phi_(0) {
  require(q >= 1, ErrorKind::kArgument, "modulus must be positive");
  phi_ = euler_phi(q);
  const Decomposition d = decompose(q);
  std::uint64_t lcm = 1;
  for (std::uint64_t o : d.orders) lcm = std::lcm(lcm, o);
  std::vector<std::complex<double>> roots(lcm);
  for (std::uint64_t k = 0; k < lcm; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(lcm);
    roots[k] = {std::cos(ang), std::sin(ang)};
  }
  // Exact values where the angle is a multiple of pi/2.
  for (std::uint64_t k = 0; k < lcm; ++k) {
    if ((4 * k) % lcm == 0) {
      switch ((4 * k) / lcm) {
        case 0: roots[k] = {1, 0}; break;
        case 1: roots[k] = {0, 1}; break;
        case 2: roots[k] = {-1, 0}; break;
        default: roots[k] = {0, -1}; break;
      }
    }
  }
  std::vector<int> idx(d.orders.size(), 0);
  for (;;) {
    Character chi;
    chi.modulus = q;
    chi.index = idx;
    chi.principal =
        std::all_of(idx.begin(), idx.end(), [](int v) { return v == 0; });
    chi.values.assign(q, {0.0, 0.0});
    for (std::uint64_t n = 0; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      std::uint64_t num = 0;
      for (std::size_t f = 0; f < d.orders.size(); ++f) {
        const auto e = static_cast<std::uint64_t>(d.exps[f][n]);
        num = (num + static_cast<std::uint64_t>(idx[f]) * e % d.orders[f] *
                         (lcm / d.orders[f])) %
              lcm;
      }
      chi.values[n] = roots[num];
    }
    chars_.push_back(std::move(chi));
    std::size_t f = 0;
    while (f < idx.size()) {
      if (static_cast<std::uint64_t>(++idx[f]) < d.orders[f]) break;
      idx[f] = 0;
      ++f;
    }
    if (f == idx.size()) break;
  }
  if (chars_.size() != phi_) {
    fail(ErrorKind::kConsistency, "character count differs from phi(q)");
  }
}

double CharacterTable::column_orthogonality_error() const {
  double err = 0.0;
  for (std::uint64_t m = 0; m < q_; ++m) {
    if (std::gcd(m, q_) != 1) continue;
    for (std::uint64_t n = 0; n < q_; ++n) {
      std::complex<double> s = 0.0;
      for (const auto& chi : chars_) s += std::conj(chi.values[m]) * chi.values[n];
      const double want = (n == m) ? static_cast<double>(phi_) : 0.0;
      err = std::max(err, std::abs(s - want));
    }
  }
  return err;
}

double CharacterTable::row_orthogonality_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    for (std::size_t j = 0; j < chars_.size(); ++j) {
      std::complex<double> s = 0.0;
      for (std::uint64_t n = 0; n < q_; ++n) {
        s += chars_[i].values[n] * std::conj(chars_[j].values[n]);
      }
      const double want = (i == j) ? static_cast<double>(phi_) : 0.0;
      err = std::max(err, std::abs(s - want));
    }
  }
  return err;
}

CharacterTable characters_mod_q(std::uint64_t q) { return CharacterTable(q); }

std::complex<double> twisted_eta_sum(const shift::EtaFunction& eta,
                                     const Character& chi, std::uint64_t x) {
  if (x > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  return deterministic_complex_sum(1, x + 1, [&](std::uint64_t n) {
    return chi(n) * eta(n);
  });
}

std::vector<double> residue_class_sums(const shift::EtaFunction& eta,
                                       std::uint64_t q, std::uint64_t x) {
  require(q >= 1, ErrorKind::kArgument, "modulus must be positive");
  if (x > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  std::vector<double> out(q, 0.0);
  for (std::uint64_t r = 0; r < q; ++r) {
    const std::uint64_t first = r == 0 ? q : r;
    const std::uint64_t count = x >= first ? (x - first) / q + 1 : 0;
    out[r] = deterministic_sum(0, count, [&](std::uint64_t k) {
      return eta(first + k * q);
    });
  }
  return out;
}

namespace {

double progression_main(const shift::EtaFunction& eta, std::uint64_t q,
                        std::uint64_t x, const shift::Calibration& cal,
                        double gamma, euler::EtaConvention convention) {
  const double theta = euler::theta_main(eta.table(), q, gamma, convention);
  return theta / euler::kZeta2 * cal.l_hat * static_cast<double>(x) /
         static_cast<double>(euler_phi(q));
}

}  // namespace

ProgressionEtaSum progression_eta_sum(const shift::EtaFunction& eta,
                                      const CharacterTable& chars,
                                      std::uint64_t m, std::uint64_t x,
                                      const shift::Calibration& cal,
                                      double gamma,
                                      euler::EtaConvention convention) {
  const std::uint64_t q = chars.modulus();
  require(std::gcd(m, q) == 1, ErrorKind::kArgument, "(m, q) must be 1");
  if (x > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  ProgressionEtaSum out;
  const std::uint64_t r = m % q;
  const std::uint64_t first = r == 0 ? q : r;
  const std::uint64_t count = x >= first ? (x - first) / q + 1 : 0;
  out.direct = deterministic_sum(0, count, [&](std::uint64_t k) {
    return eta(first + k * q);
  });
  CompensatedSum<std::complex<double>> acc;
  for (const auto& chi : chars.characters()) {
    acc.add(std::conj(chi(m)) * twisted_eta_sum(eta, chi, x));
  }
  out.via_orthogonality = acc.value().real() / static_cast<double>(q == 0 ? 1 : chars.phi());
  out.main = progression_main(eta, q, x, cal, gamma, convention);
  return out;
}

std::vector<ProgressionEtaSum> progression_eta_sums(
    const shift::EtaFunction& eta, const CharacterTable& chars,
    std::uint64_t x, const shift::Calibration& cal, double gamma,
    euler::EtaConvention convention) {
  const std::uint64_t q = chars.modulus();
  if (x > eta.limit()) fail(ErrorKind::kRange, "eta table too short");
  std::vector<std::complex<double>> twisted;
  twisted.reserve(chars.size());
  for (const auto& chi : chars.characters()) {
    twisted.push_back(twisted_eta_sum(eta, chi, x));
  }
  const std::vector<double> direct = residue_class_sums(eta, q, x);
  const double main = progression_main(eta, q, x, cal, gamma, convention);
  std::vector<ProgressionEtaSum> out;
  for (std::uint64_t m = 0; m < q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    ProgressionEtaSum p;
    p.direct = direct[m];
    CompensatedSum<std::complex<double>> acc;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      acc.add(std::conj(chars[i](m)) * twisted[i]);
    }
    p.via_orthogonality = acc.value().real() / static_cast<double>(chars.phi());
    p.main = main;
    out.push_back(p);
  }
  return out;
}

double equidistribution_spread(std::span<const double> class_sums,
                               std::uint64_t q) {
  require(class_sums.size() == q, ErrorKind::kArgument,
          "one sum per residue expected");
  CompensatedSum<double> total;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    total.add(class_sums[m]);
    ++count;
  }
  const double mean = total.value() / static_cast<double>(count);
  require(mean > 0.0, ErrorKind::kDegenerate, "class sums vanish");
  double spread = 0.0;
  for (std::uint64_t m = 0; m < q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    spread = std::max(spread, std::abs(class_sums[m] - mean) / mean);
  }
  return spread;
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  auto bump = [](double t) {
    const double d = 1.0 - t * t;
    return d <= 0.0 ? 0.0 : std::exp(-1.0 / d);
  };
  static const double total = special::integrate(bump, -1.0, 1.0, 8, 32);
  // Integrate from the nearer end for accuracy near 0 and 1.
  const double t = 2.0 * u - 1.0;
  if (t <= 0.0) return special::integrate(bump, -1.0, t, 4, 32) / total;
  return 1.0 - special::integrate(bump, t, 1.0, 4, 32) / total;
}

SmoothedSumResult smoothed_dyadic_sum(std::span<const double> coeffs, double x,
                                      double y, double residue, double Q) {
  require(y >= 1.0 && y <= x, ErrorKind::kDomain, "need 1 <= y <= x");
  const double hi_edge = 2.0 * x + y;
  if (static_cast<double>(coeffs.size()) <= std::floor(hi_edge)) {
    fail(ErrorKind::kRange, "coefficient stream shorter than 2x + y");
  }
  const auto lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(x - y)));
  const auto hi = static_cast<std::uint64_t>(std::floor(hi_edge));
  CompensatedSum<double> sharp, major, minor;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double a = coeffs[n];
    require(a >= 0.0, ErrorKind::kDomain, "coefficients must be non-negative");
    const double t = static_cast<double>(n);
    const bool inside = t >= x && t <= 2.0 * x;
    if (inside) sharp.add(a);
    const double h = smooth_step((t - (x - y)) / y) * smooth_step((hi_edge - t) / y);
    major.add(inside ? a : h * a);
    if (inside) {
      const double g = smooth_step((t - x) / y) * smooth_step((2.0 * x - t) / y);
      minor.add(g * a);
    }
  }
  SmoothedSumResult r;
  r.sharp = sharp.value();
  r.majorant = major.value();
  r.minorant = minor.value();
  r.main = residue * x;
  r.error_bound = std::pow(x, 0.75 + kReportEpsilon) *
                  std::pow(Q, 0.5 + kReportEpsilon);
  return r;
}

}  // namespace shiftsieve::dirichlet
