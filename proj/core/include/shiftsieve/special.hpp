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


// Complex log-gamma and fixed quadrature rules.

#ifndef SHIFTSIEVE_SPECIAL_HPP_
#define SHIFTSIEVE_SPECIAL_HPP_

#include <complex>
#include <functional>
#include <vector>

namespace shiftsieve::special {

// log Gamma(z) on the principal branch (continuous along horizontal lines
// for Re z > 0). Lanczos g = 7, nine terms, reflection for Re z < 1/2.
std::complex<double> log_gamma(std::complex<double> z);
std::complex<double> gamma(std::complex<double> z);

// |Gamma(i r)|^2 = pi / (r sinh(pi r)) and |Gamma(1/2 + i r)|^2 =
// pi / cosh(pi r), returned as logarithms to survive large r.
double log_abs_gamma_imag_sq(double r);
double log_abs_gamma_half_imag_sq(double r);

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule, cached per n.
const QuadratureRule& gauss_legendre(int n);

// Composite Gauss-Legendre over [a, b] with the given number of panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order = 16);
std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int panels, int order = 16);

}  // namespace shiftsieve::special

#endif  // SHIFTSIEVE_SPECIAL_HPP_
