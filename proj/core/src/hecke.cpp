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


#include "shiftsieve/hecke.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "shiftsieve/error.hpp"

namespace shiftsieve {

namespace {

// prod_{n>=1} (1 - q^n)^6 to length len, from the sparse Jacobi series for
// the cube: coefficient (-1)^k (2k+1) at q^{k(k+1)/2}.
std::vector<i128> eta6_series(std::size_t len) {
  std::vector<std::pair<std::size_t, std::int64_t>> cube;
  for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k) {
    const std::int64_t c = static_cast<std::int64_t>(2 * k + 1);
    cube.emplace_back(k * (k + 1) / 2, (k % 2) ? -c : c);
  }
  std::vector<i128> out(len, 0);
  for (const auto& [ei, ci] : cube) {
    for (const auto& [ej, cj] : cube) {
      if (ei + ej >= len) break;
      out[ei + ej] += static_cast<i128>(ci) * cj;
    }
  }
  return out;
}

// Calls sink(n, tau(n)) for n = 1..N.
void for_each_tau(std::uint64_t n,
                  const std::function<void(std::uint64_t, const Int256&)>& sink) {
  require(n >= 1, ErrorKind::kArgument, "tau limit must be positive");
  if (n > kTauCeiling) {
    fail(ErrorKind::kCapacity, "table limit " + std::to_string(n) +
                                   " exceeds ceiling " +
                                   std::to_string(kTauCeiling));
  }
  const std::size_t len = static_cast<std::size_t>(n);
  std::vector<i128> e12;
  {
    const std::vector<i128> e6 = eta6_series(len);
    e12 = ntt::square_narrow(e6, len);
  }
  ntt::square_stream(e12, len, [&](std::size_t k, const Int256& c) {
    sink(static_cast<std::uint64_t>(k) + 1, c);
  });
}

std::shared_ptr<const Factorizer> shared_factorizer(std::uint64_t n) {
  return std::make_shared<const Factorizer>(std::max<std::uint64_t>(n, 1));
}

double prime_bound(const EigenvalueTable& t, std::uint64_t p) {
  if (t.bound_mode() == BoundMode::kDeligne) return 2.0;
  return 2.0 * std::pow(static_cast<double>(p), 7.0 / 64.0);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string normalize_minus(std::string s) {
  // Accept U+2212 as a sign.
  const std::string uminus = "\xE2\x88\x92";
  for (auto pos = s.find(uminus); pos != std::string::npos;
       pos = s.find(uminus, pos)) {
    s.replace(pos, uminus.size(), "-");
  }
  return s;
}

}  // namespace

std::string_view to_string(BoundMode mode) {
  return mode == BoundMode::kDeligne ? "deligne" : "kim-sarnak";
}

TauSeries tau_series(std::uint64_t n) {
  TauSeries out;
  out.limit = n;
  out.coeffs.assign(static_cast<std::size_t>(n) + 1, 0);
  for_each_tau(n, [&](std::uint64_t k, const Int256& c) { out.coeffs[k] = c; });
  return out;
}

EigenvalueTable EigenvalueTable::from_values(std::vector<double> values,
                                             std::string source,
                                             BoundMode mode) {
  require(values.size() >= 2, ErrorKind::kArgument,
          "eigenvalue table needs at least lambda(1)");
  EigenvalueTable t;
  t.limit_ = values.size() - 1;
  values[0] = 0.0;
  t.source_ = std::move(source);
  t.mode_ = mode;
  t.values_ = std::make_shared<const std::vector<double>>(std::move(values));
  t.factorizer_ = shared_factorizer(t.limit_);
  t.primes_ = std::make_shared<const std::vector<std::uint32_t>>(
      primes_up_to(t.limit_));
  return t;
}

EigenvalueTable EigenvalueTable::from_prime_values(
    std::vector<double> prime_values, std::string source, BoundMode mode) {
  require(prime_values.size() >= 2, ErrorKind::kArgument,
          "eigenvalue table needs at least lambda(1)");
  const std::uint64_t n = prime_values.size() - 1;
  auto fac = shared_factorizer(n);
  std::vector<double> v(n + 1, 0.0);
  v[1] = 1.0;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const std::uint64_t p = fac->smallest_factor(m);
    std::uint64_t q = p;  // p-part of m
    std::uint64_t rest = m / p;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
    }
    if (rest > 1) {
      v[m] = v[q] * v[rest];
    } else if (q == p) {
      v[m] = prime_values[p];
    } else {
      v[m] = v[p] * v[q / p] - v[q / (p * p)];
    }
  }
  EigenvalueTable t;
  t.limit_ = n;
  t.source_ = std::move(source);
  t.mode_ = mode;
  t.values_ = std::make_shared<const std::vector<double>>(std::move(v));
  t.factorizer_ = std::move(fac);
  t.primes_ =
      std::make_shared<const std::vector<std::uint32_t>>(primes_up_to(n));
  return t;
}

double EigenvalueTable::at(std::uint64_t n) const {
  if (n > limit_) {
    fail(ErrorKind::kRange, "index " + std::to_string(n) +
                                " beyond table limit " + std::to_string(limit_));
  }
  return (*values_)[n];
}

double EigenvalueTable::at_abs(std::int64_t n) const {
  const std::uint64_t m =
      static_cast<std::uint64_t>(n < 0 ? -static_cast<i128>(n) : n);
  if (m == 0) return 0.0;
  return at(m);
}

double EigenvalueTable::lambda_prime_power(std::uint64_t p, int k) const {
  require(k >= 0, ErrorKind::kArgument, "prime power exponent must be >= 0");
  if (k == 0) return 1.0;
  const double lp = at(p);
  double prev = 1.0;  // lambda(p^0)
  double cur = lp;    // lambda(p^1)
  std::uint64_t pk = p;
  for (int j = 1; j < k; ++j) {
    const bool fits = pk <= limit_ / p;
    pk = fits ? pk * p : std::numeric_limits<std::uint64_t>::max();
    const double next = fits ? (*values_)[pk] : lp * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

EigenvalueTable build_delta_table(std::uint64_t n) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  for_each_tau(n, [&](std::uint64_t k, const Int256& tau) {
    const long double num = tau.convert_to<long double>();
    const long double den = std::pow(static_cast<long double>(k), 5.5L);
    v[k] = static_cast<double>(num / den);
  });
  return EigenvalueTable::from_values(std::move(v), "delta",
                                      BoundMode::kDeligne);
}

EigenvalueTable parse_eigenvalue_table(std::istream& in, std::uint64_t n) {
  require(n >= 1, ErrorKind::kArgument, "table limit must be positive");
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::string kind, weight, label;
  std::map<std::uint64_t, double> entries;
  Factorizer fac(std::max<std::uint64_t>(n, 1));
  auto parse_error = [&](const std::string& what) {
    fail(ErrorKind::kParse, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = normalize_minus(line);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_header) {
      std::istringstream hs(t);
      std::string hash, magic, version;
      hs >> hash >> magic >> version;
      if (hash != "#" || magic != "shiftsieve-eigen" || version != "v1") {
        parse_error("expected header '# shiftsieve-eigen v1 ...'");
      }
      std::string kv;
      while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) parse_error("bad header field '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "kind") kind = val;
        else if (key == "weight") weight = val;
        else if (key == "label") label = val;
        else parse_error("unknown header key '" + key + "'");
      }
      if (kind != "ap" && kind != "lambda") parse_error("kind must be ap or lambda");
      if (weight.empty()) parse_error("missing weight");
      if (weight != "maass") {
        for (char c : weight) {
          if (c < '0' || c > '9') parse_error("weight must be an integer or maass");
        }
      }
      have_header = true;
      continue;
    }
    if (t[0] == '#') continue;
    const std::string body = trim(t.substr(0, t.find('#')));
    std::istringstream ls(body);
    std::string ptok, vtok, extra;
    ls >> ptok >> vtok;
    if (ptok.empty() || vtok.empty() || (ls >> extra)) {
      parse_error("expected '<prime> <value>'");
    }
    std::uint64_t p = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      if (ptok[0] == '-' || ptok[0] == '+') parse_error("prime must be positive");
      p = std::stoull(ptok, &used);
      if (used != ptok.size()) parse_error("bad prime '" + ptok + "'");
      value = std::stod(vtok, &used);
      if (used != vtok.size()) parse_error("bad value '" + vtok + "'");
    } catch (const std::logic_error&) {
      parse_error("malformed number");
    }
    if (!std::isfinite(value)) parse_error("value must be finite");
    if (!(p <= n ? fac.is_prime(p) : is_prime(p))) {
      parse_error(std::to_string(p) + " is not prime");
    }
    if (entries.count(p)) parse_error("duplicate prime " + std::to_string(p));
    if (kind == "ap" && weight != "maass") {
      const double w = std::stod(weight);
      value /= std::pow(static_cast<double>(p), (w - 1.0) / 2.0);
    }
    entries[p] = value;
  }
  if (!have_header) {
    fail(ErrorKind::kFormat, "missing shiftsieve-eigen header");
  }
  std::vector<double> pv(n + 1, 0.0);
  for (std::uint32_t p : primes_up_to(n)) {
    const auto it = entries.find(p);
    if (it == entries.end()) {
      fail(ErrorKind::kFormat, "prime " + std::to_string(p) + " missing");
    }
    pv[p] = it->second;
  }
  auto table = EigenvalueTable::from_prime_values(
      std::move(pv), "file:" + (label.empty() ? std::string("unnamed") : label),
      BoundMode::kKimSarnak);
  for (std::uint32_t p : table.primes()) {
    if (std::abs(table(p)) > prime_bound(table, p) + 1e-9) {
      fail(ErrorKind::kDomain, "prime " + std::to_string(p) +
                                   " violates the Kim-Sarnak bound");
    }
  }
  return table;
}

EigenvalueTable load_eigenvalue_table(const std::string& path,
                                      std::uint64_t n) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "cannot open eigenvalue file " + path);
  return parse_eigenvalue_table(in, n);
}

double bound_excess(const EigenvalueTable& table) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint32_t p : table.primes()) {
    worst = std::max(worst, std::abs(table(p)) - prime_bound(table, p));
  }
  return worst;
}

double hecke_relation_residual(const EigenvalueTable& table, std::uint64_t m,
                               std::uint64_t n) {
  require(m >= 1 && n >= 1, ErrorKind::kArgument, "indices must be positive");
  if (m > table.limit() / n) {
    fail(ErrorKind::kRange, "m*n exceeds table limit");
  }
  const std::uint64_t g = std::gcd(m, n);
  const std::uint64_t mn = m * n;
  double sum = 0.0;
  for (std::uint64_t d = 1; d * d <= g; ++d) {
    if (g % d) continue;
    sum += table(mn / (d * d));
    const std::uint64_t e = g / d;
    if (e != d) sum += table(mn / (e * e));
  }
  return table(m) * table(n) - sum;
}

std::complex<double> LocalParams::power_sum(int m) const {
  std::complex<double> s = 0.0;
  for (int j = 0; j <= m; ++j) s += std::pow(alpha, m - j) * std::pow(beta, j);
  return s;
}

LocalParams local_params_from_value(std::uint64_t p, double lp) {
  LocalParams out;
  out.p = p;
  const double disc = lp * lp - 4.0;
  if (disc <= 0.0) {
    const double im = std::sqrt(-disc) / 2.0;
    out.alpha = {lp / 2.0, im};
    out.beta = {lp / 2.0, -im};
  } else {
    // Larger root first; the other from alpha * beta = 1.
    const double a = (lp + std::copysign(std::sqrt(disc), lp)) / 2.0;
    out.alpha = a;
    out.beta = 1.0 / a;
  }
  return out;
}

LocalParams local_params(const EigenvalueTable& table, std::uint64_t p) {
  if (p > table.limit()) fail(ErrorKind::kRange, "prime beyond table limit");
  if (!table.factorizer().is_prime(p)) {
    fail(ErrorKind::kArgument, std::to_string(p) + " is not prime");
  }
  return local_params_from_value(p, table(p));
}

}  // namespace shiftsieve
