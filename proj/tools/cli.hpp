// Copyright 2026 The resmatch Authors
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

#ifndef RESMATCH_TOOLS_CLI_HPP_
#define RESMATCH_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace resmatch::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,   // an audit, comparison or property did not hold
  kInput = 2,  // usage or input error
};

// Runs one command line, without the program name. Machine-readable output
// goes to `out`, summaries and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resmatch::cli

#endif  // RESMATCH_TOOLS_CLI_HPP_
