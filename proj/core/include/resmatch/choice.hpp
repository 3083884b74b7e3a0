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

#ifndef RESMATCH_CHOICE_HPP_
#define RESMATCH_CHOICE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/market.hpp"

namespace resmatch {

// One run of the India Reserves rule inside a choice procedure.
struct ChoiceIteration {
  CapacityVector capacities;  // q^n
  int vacancies = 0;          // τ^n, vacant seats over de-reservable categories
};

struct ChoiceResult {
  // Open holders best first, then each reserved category in scheme order.
  std::vector<Holder> chosen;
  CapacityVector final_capacities;  // q^N
  std::vector<ChoiceIteration> iterations;

  std::size_t last_iteration() const { return iterations.size(); }  // N
  bool contains(ApplicantId i) const;
  std::vector<ApplicantId> chosen_applicants() const;  // sorted by id
  std::size_t count(CategoryId c) const;
};

// A single institution's selection procedure. `applicants` is treated as a
// set: order and duplicates are ignored.
using ChoiceRule = std::function<ChoiceResult(
    const Market& market, InstitutionId institution,
    std::span<const ApplicantId> applicants, const CapacityVector& capacities)>;

// ≻_s^r: acceptable members of reserved category r in ≻_s order, best
// first. Everyone else is unacceptable for r. Throws DomainError if r is
// not reserved.
std::vector<ApplicantId> restricted_merit_order(const Market& market,
                                                InstitutionId institution,
                                                CategoryId reserved);

// q-responsive selection: the min(k, |acceptable|) best applicants under
// `order`, best first.
std::vector<ApplicantId> choose_open(std::span<const ApplicantId> applicants,
                                     int capacity, const MeritOrder& order);

// C^IN: open seats by merit, then each reserved category from the rest by
// restricted merit. One iteration record, no de-reservation.
ChoiceResult choose_india(const Market& market, InstitutionId institution,
                          std::span<const ApplicantId> applicants,
                          const CapacityVector& capacities);

// C^BT: repeats C^IN, moving every vacant de-reservable seat to open after
// each run, until a run leaves no de-reservable vacancy.
ChoiceResult choose_backward_transfers(const Market& market,
                                       InstitutionId institution,
                                       std::span<const ApplicantId> applicants,
                                       const CapacityVector& capacities);

// Test fixture for the literal "revert to general category" reading: C^IN,
// then each vacant de-reservable seat goes to the best remaining applicant
// who is GC-effective. Those holders keep the de-reservable tag.
ChoiceResult choose_thakur_literal(const Market& market,
                                   InstitutionId institution,
                                   std::span<const ApplicantId> applicants,
                                   const CapacityVector& capacities);

// Closed-form stopping test for C^BT: `candidate` is the final capacity
// vector iff
//   (1) |(C^o(A, cand^o) \ C^o(A, init^o)) \ A^D| = τ^1, or
//   (2) cand^o = init^o + Σ_d init^d,
// where D ranges over de-reservable categories and A^D are the acceptable
// applicants effective in one of them.
bool bt_termination_check(const Market& market, InstitutionId institution,
                          std::span<const ApplicantId> applicants,
                          const CapacityVector& initial,
                          const CapacityVector& candidate, int initial_vacancies);

}  // namespace resmatch

#endif  // RESMATCH_CHOICE_HPP_
