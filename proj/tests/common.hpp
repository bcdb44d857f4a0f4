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


#ifndef SHIFTSIEVE_TESTS_COMMON_HPP_
#define SHIFTSIEVE_TESTS_COMMON_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "shiftsieve/hecke.hpp"

namespace shiftsieve::testing {

// One Delta table per test binary, built on first use.
inline const EigenvalueTable& delta(std::uint64_t n = 1000003) {
  static const EigenvalueTable t = build_delta_table(n);
  if (t.limit() < n) throw std::runtime_error("shared delta table too short");
  return t;
}

inline EigenvalueTable stub_table(double value, std::uint64_t n) {
  std::vector<double> v(n + 1, value);
  v[0] = 0.0;
  v[1] = 1.0;
  return EigenvalueTable::from_values(std::move(v), "stub", BoundMode::kKimSarnak);
}

// Test data directory, injected by CMake.
inline std::string data_path(const std::string& name) {
  return std::string(SHIFTSIEVE_TEST_DATA) + "/" + name;
}

}  // namespace shiftsieve::testing

#endif  // SHIFTSIEVE_TESTS_COMMON_HPP_
