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


// K-Bessel functions of imaginary order and the integral bounds built on
// them: Mellin transform of K_mu K_nu, weighted square integrals, the
// residue main term and a stand-in shifted-sum kernel.

#ifndef SHIFTSIEVE_BESSEL_HPP_
#define SHIFTSIEVE_BESSEL_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shiftsieve/hecke.hpp"

namespace shiftsieve::bessel {

inline constexpr double kDefaultEpsilon = 1e-13;

// Truncation point T with e^{-y (cosh T - 1)} = eps.
double truncation(double y, double eps = kDefaultEpsilon);

// e^y K_{ir}(y) = int_0^inf e^{-y (cosh t - 1)} cos(r t) dt by the
// trapezoid rule, halving the step until two levels agree to eps.
// y > 0, r >= 0, eps in (1e-14, 1e-4).
double bessel_K_imag_scaled(double r, double y, double eps = kDefaultEpsilon);

// K_{ir}(y). Underflows to 0 once e^{-y} does (y above about 745).
double bessel_K_imag(double r, double y, double eps = kDefaultEpsilon);

struct MellinCheck {
  std::complex<double> numeric;
  std::complex<double> closed_form;
  double rel_err = 0.0;
};

// 2^{s-3} / Gamma(s) * prod Gamma((s +- i mu +- i nu) / 2).
std::complex<double> mellin_closed_form(double mu, double nu,
                                        std::complex<double> s);

// int_0^inf K_{i mu}(y) K_{i nu}(y) y^{s-1} dy against the closed form.
// Re s <= 0 is a domain error.
MellinCheck mellin_gamma_check(double mu, double nu, std::complex<double> s);

// Scaled bump exp(-1 / (1 - t^2)) with t mapping [lo, hi] onto [-1, 1].
// amplitude 0 gives the zero function.
class TestFunction {
 public:
  TestFunction(double lo, double hi, double amplitude = 1.0);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double amplitude() const { return amplitude_; }
  double operator()(double y) const;

  // G(s) = int g(y) y^{s-1} dy.
  std::complex<double> mellin(std::complex<double> s) const;

  // max |G(s)| (1 + |s|)^2 over a sigma x t grid.
  double decay_constant(double sigma_lo, double sigma_hi, double t_max,
                        int samples = 16) const;

 private:
  double lo_;
  double hi_;
  double amplitude_;
};

struct SquareIntegral {
  double I = 0.0;
  double normalized = 0.0;  // r e^{pi r} I
};

// int g(y) K_{ir}(w y)^2 dy / y. w > 0, r > 0.
SquareIntegral weighted_square_integral(const TestFunction& g, double w,
                                        double r);

struct ResidueCheck {
  double integral = 0.0;
  double main = 0.0;        // (1/2) Gamma(ir) Gamma(-ir) G(0)
  double difference = 0.0;  // |integral - main|
  double normalized = 0.0;  // difference r^2 e^{pi r}
  double relative = 0.0;    // difference / main
};

// r >= 2.
ResidueCheck residue_formula_check(const TestFunction& g, double r);
double residue_formula_error(const TestFunction& g, double r);

// sum over n in Z of h(|n| / rX) h(|n + l| / rX) lambda(n) lambda(n + l)
//   * int weight(y) g(X y) K_{ir}(2 pi |n| y) K_{ir}(2 pi |n + l| y) dy / y
// with lambda(-m) = lambda(m). An empty weight means weight 1.
double kernel_shifted_sum(const EigenvalueTable& table, double X, double r,
                          std::int64_t ell, const TestFunction& h,
                          const TestFunction& g,
                          const std::function<double(double)>& weight = {});

struct BoundCheck {
  double max_constant = 0.0;
  double at_r = 0.0;
  double at_y = 0.0;
  std::size_t points = 0;
};

// max |K_{ir}(y)| y^2 / (|Gamma(1/2 + ir)| (1 + r^2)).
BoundCheck uniform_bound_check(std::span<const double> rs,
                               std::span<const double> ys);

// max |e^y K_{ir}(y) / sqrt(pi / 2y) - 1| y / (1 + r^2) over
// y = m (1 + r^2) for each multiple m >= 1.
BoundCheck asymptotic_check(std::span<const double> rs,
                            std::span<const double> multiples);

struct MomentRow {
  double r = 0.0;
  double sigma = 0.0;
  double value = 0.0;       // int K_{ir}(y)^2 y^{sigma-1} dy
  double normalized = 0.0;  // value r^{1-sigma} e^{pi r}
};

// 0 < sigma <= 3/2.
MomentRow square_moment(double r, double sigma);

}  // namespace shiftsieve::bessel

#endif  // SHIFTSIEVE_BESSEL_HPP_
