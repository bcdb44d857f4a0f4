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


#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "cli.hpp"
#include "common.hpp"
#include "shiftsieve/bessel.hpp"
#include "shiftsieve/dirichlet.hpp"
#include "shiftsieve/parallel.hpp"
#include "shiftsieve/shiftsums.hpp"

namespace shiftsieve {
namespace {

namespace fs = std::filesystem;

// Evaluates f at 1 and 8 threads and requires identical bits.
template <typename F>
void same_bits(F f) {
  set_thread_count(1);
  const auto a = f();
  set_thread_count(8);
  const auto b = f();
  set_thread_count(1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i]), std::bit_cast<std::uint64_t>(b[i])) << i;
  }
}

TEST(Determinism, Reductions) {
  same_bits([] {
    return std::vector<double>{
        deterministic_sum(0, 1000000, [](std::uint64_t i) { return 1.0 / (1.0 + i); })};
  });
  const auto& t = testing::delta();
  same_bits([&] {
    const auto p = shift::partition_sums(t, 1, 300000, 13.0);
    return std::vector<double>{shift::shifted_sum(t, 1, 300000), shift::shifted_sum(t, -2, 300000),
                               p.S_A, p.S_Al, p.S_star};
  });
  same_bits([&] {
    const shift::EtaFunction eta(t, 1000000);
    return dirichlet::residue_class_sums(eta, 11, 1000000);
  });
  same_bits([&] {
    return std::vector<double>{bessel::kernel_shifted_sum(
        t, 5, 10, 1, bessel::TestFunction(0.5, 1.5), bessel::TestFunction(1, 2))};
  });
  same_bits([&] {
    std::vector<double> out;
    const auto s = tau_series(1 << 16);
    for (std::uint64_t n = 1; n <= s.limit; n += 997) out.push_back(static_cast<double>(s[n]));
    return out;
  });
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Determinism, Theorem1FilesAcrossThreadCounts) {
  const fs::path base = fs::temp_directory_path() / "shiftsieve_det";
  fs::remove_all(base);
  for (const char* th : {"1", "8"}) {
    std::ostringstream out, err;
    const int code = cli::run({"experiment", "theorem1", "--x", "1000,10000,50000", "--threads", th,
                               "--out", (base / th).string()},
                              out, err);
    ASSERT_EQ(code, 0) << err.str();
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(base / "1")) {
    const auto other = base / "8" / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
    ++files;
  }
  EXPECT_EQ(files, 5u);
  fs::remove_all(base);
}

}  // namespace
}  // namespace shiftsieve
