// Copyright 2026 The Regroup Authors
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

#ifndef REGROUP_TOOLS_CLI_H_
#define REGROUP_TOOLS_CLI_H_

#include <iosfwd>

namespace regroup {

// Exit codes of the regroup tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCounterexample = 1,
  kExitInputError = 2,
  kExitInternalError = 3,
};

// Entry point with injectable streams so tests can drive it in-process.
int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace regroup

#endif  // REGROUP_TOOLS_CLI_H_
