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


#include "shiftsieve/bessel.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "shiftsieve/error.hpp"
#include "shiftsieve/parallel.hpp"
#include "shiftsieve/special.hpp"

namespace shiftsieve::bessel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxLevels = 12;

// Step for the log-variable trapezoid rule in the Mellin integrals.
constexpr double kMellinStep = 0.05;

double integrand(double r, double y, double t) {
  const double s = std::sinh(0.5 * t);
  return std::exp(-2.0 * y * s * s) * std::cos(r * t);
}

}  // namespace

double truncation(double y, double eps) {
  const double x = std::log(1.0 / eps) / y;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double bessel_K_imag_scaled(double r, double y, double eps) {
  require(y > 0.0, ErrorKind::kDomain, "K_ir(y) needs y > 0");
  require(r >= 0.0, ErrorKind::kDomain, "K_ir(y) needs r >= 0");
  require(eps > 1e-14 && eps < 1e-4, ErrorKind::kDomain,
          "epsilon must lie in (1e-14, 1e-4)");
  const double T = truncation(y, eps);
  double h = std::min({0.5, 2.0 * kPi / (r + 10.0), 1.0 / std::sqrt(y)});
  auto n = static_cast<std::uint64_t>(std::ceil(T / h));
  n = std::max<std::uint64_t>(n, 8);
  h = T / static_cast<double>(n);

  double sum = 0.5;  // f(0) / 2
  double abs_sum = 0.5;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double f = integrand(r, y, static_cast<double>(k) * h);
    sum += f;
    abs_sum += std::abs(f);
  }
  double prev = h * sum;
  for (int level = 0; level < kMaxLevels; ++level) {
    for (std::uint64_t k = 0; k < n; ++k) {
      const double f = integrand(r, y, (static_cast<double>(k) + 0.5) * h);
      sum += f;
      abs_sum += std::abs(f);
    }
    n *= 2;
    h *= 0.5;
    const double cur = h * sum;
    const double floor = 64.0 * DBL_EPSILON * abs_sum * h;
    if (std::abs(cur - prev) <= std::max(eps, floor)) return cur;
    prev = cur;
  }
  fail(ErrorKind::kConsistency, "K_ir quadrature did not converge");
}

double bessel_K_imag(double r, double y, double eps) {
  const double s = bessel_K_imag_scaled(r, y, eps);
  return s * std::exp(-y);
}

std::complex<double> mellin_closed_form(double mu, double nu,
                                        std::complex<double> s) {
  using special::log_gamma;
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> lg = (s - 3.0) * std::log(2.0) - log_gamma(s);
  for (double a : {1.0, -1.0}) {
    for (double b : {1.0, -1.0}) {
      lg += log_gamma(0.5 * (s + i * (a * mu + b * nu)));
    }
  }
  return std::exp(lg);
}

namespace {

// int_0^inf K_{i mu}(y) K_{i nu}(y) y^{s-1} dy with y = e^u.
std::complex<double> mellin_numeric(double mu, double nu,
                                    std::complex<double> s) {
  const double sigma = s.real();
  // Lower cut: e^{sigma u} (1 + u^2) / sigma below 1e-13.
  double u_min = -10.0;
  for (int it = 0; it < 40; ++it) {
    u_min = (std::log(1e-13 * sigma) - std::log(1.0 + u_min * u_min)) / sigma;
  }
  const double u_max = std::log(40.0 + 2.0 * std::abs(s));
  const auto n = static_cast<std::uint64_t>(
      std::ceil((u_max - u_min) / kMellinStep));
  const double h = (u_max - u_min) / static_cast<double>(n);
  const bool same = mu == nu;
  return h * deterministic_complex_sum(0, n + 1, [&](std::uint64_t k) {
           const double u = u_min + static_cast<double>(k) * h;
           const double y = std::exp(u);
           const double a = bessel_K_imag_scaled(mu, y);
           const double b = same ? a : bessel_K_imag_scaled(nu, y);
           const double w = (k == 0 || k == n) ? 0.5 : 1.0;
           return w * a * b * std::exp(s * u - 2.0 * y);
         });
}

}  // namespace

MellinCheck mellin_gamma_check(double mu, double nu, std::complex<double> s) {
  require(s.real() > 0.0, ErrorKind::kDomain, "Mellin check needs Re s > 0");
  MellinCheck out;
  out.numeric = mellin_numeric(mu, nu, s);
  out.closed_form = mellin_closed_form(mu, nu, s);
  out.rel_err = std::abs(out.numeric - out.closed_form) / std::abs(out.closed_form);
  return out;
}

TestFunction::TestFunction(double lo, double hi, double amplitude)
    : lo_(lo), hi_(hi), amplitude_(amplitude) {
  require(lo > 0.0 && hi > lo, ErrorKind::kArgument,
          "test function support must be 0 < lo < hi");
}

double TestFunction::operator()(double y) const {
  if (amplitude_ == 0.0 || y <= lo_ || y >= hi_) return 0.0;
  const double t = (2.0 * y - lo_ - hi_) / (hi_ - lo_);
  return amplitude_ * std::exp(-1.0 / (1.0 - t * t));
}

std::complex<double> TestFunction::mellin(std::complex<double> s) const {
  if (amplitude_ == 0.0) return 0.0;
  const int panels =
      64 + static_cast<int>(std::ceil(4.0 * std::abs(s.imag()) *
                                      std::log(hi_ / lo_)));
  return special::integrate_complex(
      [&](double y) { return (*this)(y) * std::exp((s - 1.0) * std::log(y)); },
      lo_, hi_, panels);
}

double TestFunction::decay_constant(double sigma_lo, double sigma_hi,
                                    double t_max, int samples) const {
  require(samples >= 2, ErrorKind::kArgument, "need at least two samples");
  double c = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double sigma =
        sigma_lo + (sigma_hi - sigma_lo) * i / static_cast<double>(samples - 1);
    for (int j = 0; j < samples; ++j) {
      const double t = t_max * j / static_cast<double>(samples - 1);
      const std::complex<double> s(sigma, t);
      const double one = 1.0 + std::abs(s);
      c = std::max(c, std::abs(mellin(s)) * one * one);
    }
  }
  return c;
}

SquareIntegral weighted_square_integral(const TestFunction& g, double w,
                                        double r) {
  require(w > 0.0, ErrorKind::kDomain, "w must be positive");
  require(r > 0.0, ErrorKind::kDomain, "r must be positive");
  SquareIntegral out;
  if (g.amplitude() == 0.0) return out;
  const int panels = std::max(
      32, 8 * static_cast<int>(std::ceil((r + 1.0) * std::log(g.hi() / g.lo()))) +
              static_cast<int>(std::ceil(2.0 * w * (g.hi() - g.lo()))));
  out.I = special::integrate(
      [&](double y) {
        const double k = bessel_K_imag(r, w * y);
        return g(y) * k * k / y;
      },
      g.lo(), g.hi(), panels);
  if (out.I > 0.0) out.normalized = std::exp(std::log(out.I) + std::log(r) + kPi * r);
  return out;
}

ResidueCheck residue_formula_check(const TestFunction& g, double r) {
  require(r >= 2.0, ErrorKind::kDomain, "residue check needs r >= 2");
  ResidueCheck out;
  out.integral = weighted_square_integral(g, 1.0, r).I;
  out.main = 0.5 * std::exp(special::log_abs_gamma_imag_sq(r)) *
             g.mellin(0.0).real();
  out.difference = std::abs(out.integral - out.main);
  out.normalized = out.difference > 0.0
                       ? std::exp(std::log(out.difference) + 2.0 * std::log(r) + kPi * r)
                       : 0.0;
  out.relative = out.main != 0.0 ? out.difference / std::abs(out.main) : 0.0;
  return out;
}

double residue_formula_error(const TestFunction& g, double r) {
  return residue_formula_check(g, r).normalized;
}

double kernel_shifted_sum(const EigenvalueTable& table, double X, double r,
                          std::int64_t ell, const TestFunction& h,
                          const TestFunction& g,
                          const std::function<double(double)>& weight) {
  require(X > 0.0, ErrorKind::kDomain, "X must be positive");
  require(r > 0.0, ErrorKind::kDomain, "r must be positive");
  if (h.amplitude() == 0.0 || g.amplitude() == 0.0) return 0.0;
  const double scale = r * X;
  const auto n_max = static_cast<std::int64_t>(std::floor(h.hi() * scale));
  const std::uint64_t need =
      static_cast<std::uint64_t>(n_max) + static_cast<std::uint64_t>(std::llabs(ell));
  if (need > table.limit()) {
    fail(ErrorKind::kRange, "eigenvalue table shorter than the kernel support");
  }
  const double y_lo = g.lo() / X;
  const double y_hi = g.hi() / X;
  // Candidate n in [-n_max, n_max]; h has no mass at 0.
  const std::uint64_t count = static_cast<std::uint64_t>(2 * n_max + 1);
  std::vector<double> terms(count, 0.0);
  parallel_for(count, [&](std::size_t k) {
    const std::int64_t n = static_cast<std::int64_t>(k) - n_max;
    const std::int64_t m = n + ell;
    const double an = static_cast<double>(std::llabs(n));
    const double am = static_cast<double>(std::llabs(m));
    const double hh = h(an / scale) * h(am / scale);
    if (hh == 0.0) return;
    const double coeff = hh * table.at_abs(n) * table.at_abs(m);
    if (coeff == 0.0) return;
    const double integral = special::integrate(
        [&](double y) {
          const double a = 2.0 * kPi * an * y;
          const double b = 2.0 * kPi * am * y;
          const double kk = bessel_K_imag_scaled(r, a) *
                            bessel_K_imag_scaled(r, b) * std::exp(-(a + b));
          const double wy = weight ? weight(y) : 1.0;
          return wy * g(X * y) * kk / y;
        },
        y_lo, y_hi, 32);
    terms[k] = coeff * integral;
  });
  return pairwise_sum(std::span<const double>(terms));
}

BoundCheck uniform_bound_check(std::span<const double> rs,
                               std::span<const double> ys) {
  BoundCheck out;
  for (double r : rs) {
    const double gamma_half = std::exp(0.5 * special::log_abs_gamma_half_imag_sq(r));
    for (double y : ys) {
      const double c =
          std::abs(bessel_K_imag(r, y)) * y * y / (gamma_half * (1.0 + r * r));
      ++out.points;
      if (c > out.max_constant) {
        out.max_constant = c;
        out.at_r = r;
        out.at_y = y;
      }
    }
  }
  return out;
}

BoundCheck asymptotic_check(std::span<const double> rs,
                            std::span<const double> multiples) {
  BoundCheck out;
  for (double r : rs) {
    for (double m : multiples) {
      require(m >= 1.0, ErrorKind::kDomain, "asymptotic check needs y >= 1 + r^2");
      const double y = m * (1.0 + r * r);
      const double ratio = bessel_K_imag_scaled(r, y) * std::sqrt(2.0 * y / kPi);
      const double c = std::abs(ratio - 1.0) * y / (1.0 + r * r);
      ++out.points;
      if (c > out.max_constant) {
        out.max_constant = c;
        out.at_r = r;
        out.at_y = y;
      }
    }
  }
  return out;
}

MomentRow square_moment(double r, double sigma) {
  require(sigma > 0.0 && sigma <= 1.5, ErrorKind::kDomain,
          "sigma must lie in (0, 3/2]");
  require(r > 0.0, ErrorKind::kDomain, "r must be positive");
  MomentRow out;
  out.r = r;
  out.sigma = sigma;
  out.value = mellin_numeric(r, r, sigma).real();
  out.normalized = out.value > 0.0
                       ? std::exp(std::log(out.value) + (1.0 - sigma) * std::log(r) + kPi * r)
                       : 0.0;
  return out;
}

}  // namespace shiftsieve::bessel
