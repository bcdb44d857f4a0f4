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


#include "shiftsieve/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"

namespace shiftsieve::special {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

std::complex<double> log_gamma_right(std::complex<double> z) {
  // Gamma(z) = sqrt(2 pi) t^{z - 1/2} e^{-t} A(z), t = z + g - 1/2.
  const std::complex<double> zm = z - 1.0;
  std::complex<double> a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    a += kLanczos[k] / (zm + static_cast<double>(k));
  }
  const std::complex<double> t = zm + kG + 0.5;
  return kHalfLog2Pi + (zm + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    const std::complex<double> s = std::sin(std::numbers::pi * z);
    if (std::abs(s) == 0.0) fail(ErrorKind::kSingularity, "Gamma pole");
    return std::log(std::numbers::pi) - std::log(s) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

std::complex<double> gamma(std::complex<double> z) {
  return std::exp(log_gamma(z));
}

double log_abs_gamma_imag_sq(double r) {
  require(r > 0.0, ErrorKind::kDomain, "r must be positive");
  const double pr = std::numbers::pi * r;
  // log sinh(pr) = pr + log((1 - e^{-2pr}) / 2)
  return std::log(std::numbers::pi / r) - pr - std::log1p(-std::exp(-2 * pr)) +
         std::log(2.0);
}

double log_abs_gamma_half_imag_sq(double r) {
  const double pr = std::numbers::pi * std::abs(r);
  return std::log(std::numbers::pi) - pr - std::log1p(std::exp(-2 * pr)) +
         std::log(2.0);
}

const QuadratureRule& gauss_legendre(int n) {
  require(n >= 1 && n <= 512, ErrorKind::kArgument,
          "Gauss-Legendre order must lie in 1..512");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
  require(panels >= 1, ErrorKind::kArgument, "need at least one panel");
  const QuadratureRule& q = gauss_legendre(order);
  const double h = (b - a) / panels;
  CompensatedSum<double> acc;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      acc.add(q.weights[i] * f(mid + 0.5 * h * q.nodes[i]));
    }
  }
  return 0.5 * h * acc.value();
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int panels, int order) {
  require(panels >= 1, ErrorKind::kArgument, "need at least one panel");
  const QuadratureRule& q = gauss_legendre(order);
  const double h = (b - a) / panels;
  CompensatedSum<std::complex<double>> acc;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      acc.add(q.weights[i] * f(mid + 0.5 * h * q.nodes[i]));
    }
  }
  return 0.5 * h * acc.value();
}

}  // namespace shiftsieve::special
