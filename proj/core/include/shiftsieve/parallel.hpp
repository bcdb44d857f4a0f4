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

// Deterministic parallel loops and reductions.
//
// Work is always cut into blocks whose boundaries depend only on the problem
// size, never on the number of threads. Each block is reduced sequentially
// and block results are combined in index order, so every reduction in the
// library is bit-identical for any thread count.

#ifndef SHIFTSIEVE_PARALLEL_HPP_
#define SHIFTSIEVE_PARALLEL_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace shiftsieve {

// Number of worker threads used by library loops. Defaults to 1.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs task(i) for i in [0, n_tasks). Tasks must write to disjoint state.
void parallel_for(std::size_t n_tasks,
                  const std::function<void(std::size_t)>& task);

// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

// Pairwise combination of an ordered list of partial sums.
double pairwise_sum(std::span<const double> parts);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> parts);

inline constexpr std::size_t kReductionBlock = std::size_t{1} << 14;

// Sum of term(i) for i in [first, last) in fixed blocks of kReductionBlock.
double deterministic_sum(std::uint64_t first, std::uint64_t last,
                         const std::function<double(std::uint64_t)>& term);
std::complex<double> deterministic_complex_sum(
    std::uint64_t first, std::uint64_t last,
    const std::function<std::complex<double>(std::uint64_t)>& term);

// Block-wise reduction where each block fills a caller-defined accumulator.
// block(b, lo, hi) processes indices [lo, hi) of block b.
void for_each_block(std::uint64_t first, std::uint64_t last,
                    std::uint64_t block_size,
                    const std::function<void(std::size_t, std::uint64_t,
                                             std::uint64_t)>& block);

inline std::size_t block_count(std::uint64_t first, std::uint64_t last,
                               std::uint64_t block_size) {
  if (last <= first) return 0;
  return static_cast<std::size_t>((last - first + block_size - 1) / block_size);
}

}  // namespace shiftsieve

#endif  // SHIFTSIEVE_PARALLEL_HPP_
