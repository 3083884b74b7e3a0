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

#ifndef RESMATCH_AUDIT_HPP_
#define RESMATCH_AUDIT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/choice.hpp"
#include "resmatch/market.hpp"

namespace resmatch {

enum class Axiom {
  kFeasibility,
  kIndividualRationality,
  kMeritocracy,
  kNonWastefulness,
  kOpenFirst,
  kStability,
  kOverAndAbove,
  kWithinCategoryFairness,
  kQuotaFilling,
  kSpiritOfAffirmativeAction,
  kSubstitutability,
  kSizeMonotonicity,
  kImprovement,
};

std::string_view axiom_name(Axiom axiom);
std::optional<Axiom> parse_axiom(std::string_view name);

// One violated fact. Fields that do not apply to the axiom stay empty.
struct Witness {
  std::optional<ApplicantId> applicant;
  std::optional<InstitutionId> institution;
  std::optional<CategoryId> category;
  std::optional<ApplicantId> competitor;
  std::vector<ApplicantId> context;  // applicant set, for choice-rule axioms
  std::string clause;
  std::string text;
};

struct AuditReport {
  Axiom axiom;
  std::vector<Witness> witnesses;
  // Set when a check could not be exhaustive.
  bool sampled = false;

  bool passed() const { return witnesses.empty(); }
};

AuditReport check_individual_rationality(const Assignment& assignment,
                                         const Market& market);

// For every (i, s) with s P_i μ(i) and i acceptable at s: every open holder
// at s, and every t(i) holder when t(i) is reserved, ranks above i.
AuditReport check_meritocracy(const Assignment& assignment,
                              const Market& market);

// For every (i, s) with s P_i μ(i) and i acceptable at s: the t(i) seats are
// full when t(i) is reserved, and open plus de-reservable tags fill
// q^o + Σ_d q^d.
AuditReport check_non_wastefulness(const Assignment& assignment,
                                   const Market& market);

// Per institution, against initial capacities:
//   (i)   open plus de-reservable tags = min(|η(s)|, q^o + Σ_d q^d);
//   (ii)  every open holder ranks above every reserved-tag holder;
//   (iii) retagging an open holder into a non-de-reservable reserved
//         category within its capacity breaks (i) or (ii);
//   (iv)  no reserved tag is held while initial open seats are empty.
AuditReport check_open_first(const Assignment& assignment, const Market& market);

struct BlockingPair {
  ApplicantId applicant;
  InstitutionId institution;
  bool operator==(const BlockingPair&) const = default;
};

struct StabilityReport {
  std::vector<BlockingPair> blocking_pairs;
  // Institutions s with C^BT(μ_s) ≠ μ_s.
  std::vector<InstitutionId> not_rechosen;

  bool stable() const { return blocking_pairs.empty() && not_rechosen.empty(); }
};

// Stability with respect to C^BT at the initial capacities. The choice rule
// is called as a black box.
StabilityReport find_blocking_pairs(const Assignment& assignment,
                                    const Market& market);
AuditReport check_stability(const Assignment& assignment, const Market& market);

AuditReport check_feasibility(const Assignment& assignment, const Market& market);

// Over-and-above, within-category fairness and quota-filling for one call of
// `rule`. Evaluated against the result's final capacities, which equal the
// given ones for C^IN and are q^N for C^BT.
std::vector<AuditReport> check_choice_axioms(const ChoiceRule& rule,
                                             const Market& market,
                                             InstitutionId institution,
                                             std::span<const ApplicantId> applicants,
                                             const CapacityVector& capacities);

// Runs every assignment-level axiom: feasibility, individual rationality,
// meritocracy, non-wastefulness, open-first and stability.
std::vector<AuditReport> audit_assignment(const Assignment& assignment,
                                          const Market& market,
                                          std::span<const Axiom> axioms);

std::vector<Axiom> assignment_axioms();

}  // namespace resmatch

#endif  // RESMATCH_AUDIT_HPP_
