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

#ifndef RESMATCH_ORACLE_HPP_
#define RESMATCH_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/audit.hpp"
#include "resmatch/choice.hpp"
#include "resmatch/market.hpp"
#include "resmatch/mechanism.hpp"

namespace resmatch {

enum class DeviationKind {
  kPreferenceMisreport,
  kMembershipHide,
  kJoint,  // misreport and hide together
};

std::string_view deviation_name(DeviationKind kind);

struct ManipulationWitness {
  ApplicantId applicant;
  DeviationKind kind;
  std::vector<InstitutionId> reported_preferences;
  bool reported_membership = true;
  std::optional<InstitutionId> truthful_outcome;
  std::optional<InstitutionId> deviant_outcome;
};

// One line, e.g. "i2 preference-misreport prefs=a: b -> a".
std::string describe_manipulation(const Market& market, const ManipulationWitness& w);

struct ManipulationSearch {
  std::optional<ManipulationWitness> witness;
  bool truncated = false;  // the report space was not covered
  std::size_t reports_tried = 0;
};

struct SearchLimits {
  // Up to this many institutions every strict order over every subset is
  // tried; beyond it the canonical enumeration stops after `report_budget`.
  std::size_t exhaustive_institutions = 4;
  std::size_t report_budget = 4096;
};

// All strict orders over all subsets of `institutions` in lexicographic
// order: [], [a], [a,b], [a,b,c], [a,c], ... Stops after `budget` reports.
std::vector<std::vector<InstitutionId>> enumerate_reports(
    std::size_t institutions, std::size_t budget);

// First profitable preference misreport for `applicant`, judged by the
// applicant's listed (true) preferences in `market`.
ManipulationSearch find_preference_manipulation(MechanismKind mechanism,
                                                const Market& market,
                                                ApplicantId applicant,
                                                SearchLimits limits = {});

// Whether hiding reserve membership is profitable. Throws DomainError unless
// the applicant belongs to a reserved category and reports it.
std::optional<ManipulationWitness> find_membership_manipulation(
    MechanismKind mechanism, const Market& market, ApplicantId applicant);

// Cross product of preference reports and {report, hide} membership; the
// truthful pair is skipped. GC applicants only vary preferences.
ManipulationSearch find_joint_manipulation(MechanismKind mechanism,
                                           const Market& market,
                                           ApplicantId applicant,
                                           SearchLimits limits = {});

enum class ParetoVerdict { kDominates, kDominated, kEqual, kIncomparable };

std::string_view pareto_name(ParetoVerdict verdict);

// Compares the induced matchings under the market's preferences.
ParetoVerdict pareto_compare(const Assignment& first, const Assignment& second,
                             const Market& market);

// Black-box set choice: who is chosen from a set of applicants.
using SetChoice =
    std::function<std::vector<ApplicantId>(std::span<const ApplicantId>)>;

// Fixes the market, institution and capacities of a choice rule. The market
// is copied into the closure.
SetChoice bind_rule(ChoiceRule rule, Market market, InstitutionId institution,
                    CapacityVector capacities);

struct EnumerationLimits {
  // Universes up to this size are enumerated exhaustively; larger ones are
  // checked on `samples` subsets drawn from a fixed-seed generator.
  std::size_t exhaustive_size = 7;
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
};

// For every A ⊆ universe and every reserved member i of A who reports: if i
// is rejected from A while reporting, i is also rejected while hiding.
AuditReport check_spirit_of_aa(const ChoiceRule& rule, const Market& market,
                               InstitutionId institution,
                               std::span<const ApplicantId> universe,
                               EnumerationLimits limits = {});

// i ∉ C(A ∪ {i}) ⇒ i ∉ C(A ∪ {i, j}) for all A ⊆ universe, i, j ∉ A.
AuditReport check_substitutability(const SetChoice& choice, const Market& market,
                                   std::span<const ApplicantId> universe,
                                   EnumerationLimits limits = {});

// |C(A)| ≤ |C(A ∪ {i})| for all A ⊆ universe, i ∉ A.
AuditReport check_size_monotonicity(const SetChoice& choice,
                                    const Market& market,
                                    std::span<const ApplicantId> universe,
                                    EnumerationLimits limits = {});

// `improved` is an improvement over `base` for `individual`: for all A,
// (i) i ∈ base(A) ⇒ i ∈ improved(A), and
// (ii) i ∉ base(A) ∪ improved(A) ⇒ base(A) = improved(A).
AuditReport check_improvement(const SetChoice& base, const SetChoice& improved,
                              ApplicantId individual, const Market& market,
                              std::span<const ApplicantId> universe,
                              EnumerationLimits limits = {});

}  // namespace resmatch

#endif  // RESMATCH_ORACLE_HPP_
