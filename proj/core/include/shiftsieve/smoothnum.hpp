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


// Smooth and rough integer counts and Rankin's majorant.

#ifndef SHIFTSIEVE_SMOOTHNUM_HPP_
#define SHIFTSIEVE_SMOOTHNUM_HPP_

#include <cstdint>
#include <vector>

namespace shiftsieve::smooth {

// Phi(x, z): n <= x with every prime factor <= z.
std::uint64_t smooth_count(double x, double z);

// x^alpha * prod_{p <= z} (1 - p^{-alpha})^{-1}, an upper bound for Phi(x, z).
double rankin_alpha_bound(double x, double z, double alpha);

// x log z exp(-log x / log z); reported only, its constant is unspecified.
double rankin_asymptotic(double x, double z);

struct RoughCount {
  std::uint64_t count = 0;     // n <= x coprime to P(z)
  double main = 0.0;           // x prod_{p <= z} (1 - 1/p)
  double legendre_bound = 0.0; // 2^{pi(z)}
};

RoughCount rough_count(double x, double z);

// counts[m] = #{n <= m : (n, P(z)) = 1} for m = 0..xmax.
std::vector<std::uint64_t> rough_count_table(std::uint64_t xmax, double z);

// sum of 1/a over z-smooth a with x^cutoff < a <= x. cutoff = 0 is accepted
// and gives the sum over 1 < a <= x.
double smooth_reciprocal_tail(double x, double z, double cutoff);

}  // namespace shiftsieve::smooth

#endif  // SHIFTSIEVE_SMOOTHNUM_HPP_
