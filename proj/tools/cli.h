// Copyright 2026 The fmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMC_TOOLS_CLI_H_
#define FMC_TOOLS_CLI_H_

#include <ostream>

namespace fmc::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidArgument = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitFormat = 5;
inline constexpr int kExitCorrupt = 6;
inline constexpr int kExitNumerical = 7;
inline constexpr int kExitInternal = 70;

// Runs one command. Results go to `out`, a one-line diagnostic to `err`.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace fmc::cli

#endif  // FMC_TOOLS_CLI_H_
