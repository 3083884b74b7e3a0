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

#ifndef RESMATCH_MECHANISM_HPP_
#define RESMATCH_MECHANISM_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/choice.hpp"
#include "resmatch/market.hpp"

namespace resmatch {

enum class MechanismKind {
  kDaIndia,     // one DA pass with C^IN at the initial capacities
  kMultiRunDa,  // DA re-run with vacant de-reservable seats reverted
  kDaBt,        // one DA pass with C^BT
};

std::string_view mechanism_name(MechanismKind kind);
std::optional<MechanismKind> parse_mechanism(std::string_view name);

// What happened at one institution in one DA step.
struct DaStep {
  std::size_t run = 1;   // outer iteration (multi-run DA), 1 otherwise
  std::size_t step = 0;  // DA step within the run, from 1
  InstitutionId institution;
  std::vector<ApplicantId> proposers;
  std::vector<ApplicantId> held;
  std::vector<ApplicantId> rejected;
};

struct MechanismRun {
  Assignment outcome;
  // DA steps summed over all runs.
  std::size_t da_steps = 0;
  // Capacity profile used by each DA run (q^l per institution). A single
  // entry for one-pass mechanisms.
  std::vector<std::vector<CapacityVector>> outer_iterations;
  // Per institution: capacities of the terminal choice (q^N_s or q^L_s) and
  // the number of choice iterations in it (N_s).
  std::vector<CapacityVector> final_capacities;
  std::vector<std::size_t> choice_iterations;
  std::vector<DaStep> trace;

  std::size_t last_iteration() const { return outer_iterations.size(); }  // L
};

// Applicant-proposing deferred acceptance with batch proposals. Each
// institution holds rule(held ∪ proposers) at its capacities; tags in the
// outcome come from each institution's last choice.
MechanismRun deferred_acceptance(const Market& market, const ChoiceRule& rule,
                                 std::span<const CapacityVector> capacities);
MechanismRun deferred_acceptance(const Market& market, const ChoiceRule& rule);

MechanismRun multi_run_da(const Market& market);
MechanismRun da_bt(const Market& market);

MechanismRun run_mechanism(MechanismKind kind, const Market& market);

}  // namespace resmatch

#endif  // RESMATCH_MECHANISM_HPP_
