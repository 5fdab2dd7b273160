// Copyright 2026 The Tempo Authors
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

#ifndef TEMPO_TOOLS_CLI_H_
#define TEMPO_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace tempo::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUnverified = 3;

// Runs the command line `args` (args[0] is the program name). Results go to
// files under --out and, for the JSON-producing subcommands, to `out`;
// diagnostics go to `err`. Returns the exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tempo::cli

#endif  // TEMPO_TOOLS_CLI_H_
