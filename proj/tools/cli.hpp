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


// Batch runner behind the `shiftsieve` executable. Kept as a library so
// tests can drive it in-process.

#ifndef SHIFTSIEVE_TOOLS_CLI_HPP_
#define SHIFTSIEVE_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace shiftsieve::cli {

// args excludes the program name. Returns the process exit code:
// 0 ok, 2 config/argument, 3 range/capacity, 4 consistency.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace shiftsieve::cli

#endif  // SHIFTSIEVE_TOOLS_CLI_HPP_
