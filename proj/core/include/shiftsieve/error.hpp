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

#ifndef SHIFTSIEVE_ERROR_HPP_
#define SHIFTSIEVE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftsieve {

enum class ErrorKind {
  kArgument,     // caller passed a value outside the documented domain
  kDomain,       // a real argument lies outside the region of validity
  kRange,        // an index runs past the end of a table
  kCapacity,     // request exceeds an implementation ceiling
  kDegenerate,   // parameters collapse to an empty or meaningless range
  kFormat,       // structurally valid input missing required content
  kParse,        // malformed input text
  kSingularity,  // a formula hits a pole
  kConsistency,  // an internal cross-check failed
  kConfig,       // CLI or config-file error
};

std::string_view to_string(ErrorKind kind);

// Process exit code for the CLI: 2 config, 3 range/capacity, 4 consistency.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const char* message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace shiftsieve

#endif  // SHIFTSIEVE_ERROR_HPP_
