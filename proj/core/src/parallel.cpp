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

#include "shiftsieve/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>


namespace shiftsieve {

namespace {

std::atomic<unsigned> g_threads{1};

template <typename T>
T pairwise(std::span<const T> parts) {
  if (parts.empty()) return T{};
  if (parts.size() == 1) return parts[0];
  if (parts.size() == 2) return parts[0] + parts[1];
  const std::size_t mid = parts.size() / 2;
  return pairwise(parts.subspan(0, mid)) + pairwise(parts.subspan(mid));
}

}  // namespace

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

unsigned thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n_tasks,
                  const std::function<void(std::size_t)>& task) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), n_tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n_tasks);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

double pairwise_sum(std::span<const double> parts) { return pairwise(parts); }

std::complex<double> pairwise_sum(
    std::span<const std::complex<double>> parts) {
  return pairwise(parts);
}

void for_each_block(std::uint64_t first, std::uint64_t last,
                    std::uint64_t block_size,
                    const std::function<void(std::size_t, std::uint64_t,
                                             std::uint64_t)>& block) {
  const std::size_t n = block_count(first, last, block_size);
  parallel_for(n, [&](std::size_t b) {
    const std::uint64_t lo = first + b * block_size;
    const std::uint64_t hi = std::min(last, lo + block_size);
    block(b, lo, hi);
  });
}

double deterministic_sum(std::uint64_t first, std::uint64_t last,
                         const std::function<double(std::uint64_t)>& term) {
  std::vector<double> parts(block_count(first, last, kReductionBlock));
  for_each_block(first, last, kReductionBlock,
                 [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                   CompensatedSum<double> acc;
                   for (std::uint64_t i = lo; i < hi; ++i) acc.add(term(i));
                   parts[b] = acc.value();
                 });
  return pairwise_sum(std::span<const double>(parts));
}

std::complex<double> deterministic_complex_sum(
    std::uint64_t first, std::uint64_t last,
    const std::function<std::complex<double>(std::uint64_t)>& term) {
  std::vector<std::complex<double>> parts(
      block_count(first, last, kReductionBlock));
  for_each_block(first, last, kReductionBlock,
                 [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                   CompensatedSum<std::complex<double>> acc;
                   for (std::uint64_t i = lo; i < hi; ++i) acc.add(term(i));
                   parts[b] = acc.value();
                 });
  return pairwise_sum(std::span<const std::complex<double>>(parts));
}

}  // namespace shiftsieve
