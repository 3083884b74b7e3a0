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

#ifndef RESMATCH_MARKET_IO_HPP_
#define RESMATCH_MARKET_IO_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/market.hpp"
#include "resmatch/mechanism.hpp"

namespace resmatch {

// Line-oriented market and assignment files. The grammar is documented in
// docs/file-formats.md. Parse failures throw InputError carrying the source
// name, line and field.

Market parse_market(std::string_view text, std::string_view source = "<market>");
Market load_market(const std::string& path);
std::string serialize_market(const Market& market);

// Outcome of a mechanism as written to disk.
struct AssignmentFile {
  std::string mechanism;
  std::size_t outer_iterations = 0;  // L
  std::size_t da_steps = 0;
  std::vector<CapacityVector> final_capacities;
  std::vector<std::size_t> choice_iterations;  // N_s
  Assignment assignment;
};

AssignmentFile make_assignment_file(MechanismKind kind, const MechanismRun& run);

// With `trace`, the run's per-iteration capacities and per-step holds are
// appended as `trace` records, which parse_assignment skips.
std::string serialize_assignment(const Market& market, const AssignmentFile& file,
                                 const MechanismRun* trace = nullptr);
AssignmentFile parse_assignment(std::string_view text, const Market& market,
                                std::string_view source = "<assignment>");
AssignmentFile load_assignment(const std::string& path, const Market& market);

std::string read_file(const std::string& path);

}  // namespace resmatch

#endif  // RESMATCH_MARKET_IO_HPP_
