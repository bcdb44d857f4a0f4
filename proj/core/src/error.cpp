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

#include "shiftsieve/error.hpp"

namespace shiftsieve {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kDegenerate: return "degenerate-range";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSingularity: return "singularity";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRange:
    case ErrorKind::kCapacity:
    case ErrorKind::kDegenerate:
      return 3;
    case ErrorKind::kConsistency:
    case ErrorKind::kSingularity:
      return 4;
    default:
      return 2;
  }
}

}  // namespace shiftsieve
