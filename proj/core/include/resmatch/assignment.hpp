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

#ifndef RESMATCH_ASSIGNMENT_HPP_
#define RESMATCH_ASSIGNMENT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resmatch/market.hpp"

namespace resmatch {

struct Placement {
  InstitutionId institution;
  CategoryId category;
  bool operator==(const Placement&) const = default;
};

struct Holder {
  ApplicantId applicant;
  CategoryId category;
  bool operator==(const Holder&) const = default;
};

// Mechanism output: each applicant holds an (institution, category) pair or
// nothing, and each institution holds a set of (applicant, category) pairs.
// Both sides are stored so that files listing them separately can be checked
// for consistency; mechanisms always build consistent values.
class Assignment {
 public:
  Assignment() = default;
  // Everyone unassigned.
  Assignment(std::size_t applicants, std::size_t institutions);
  // Both sides as given, not reconciled. validate_assignment reports any
  // disagreement between them.
  Assignment(std::vector<std::optional<Placement>> by_applicant,
             std::vector<std::vector<Holder>> by_institution);

  // Derives the applicant side from per-institution holder lists. Holder
  // lists are sorted by applicant.
  static Assignment from_holders(std::size_t applicants,
                                 std::vector<std::vector<Holder>> holders);

  std::size_t applicant_count() const { return by_applicant_.size(); }
  std::size_t institution_count() const { return by_institution_.size(); }

  const std::optional<Placement>& placement(ApplicantId i) const {
    return by_applicant_.at(i.value());
  }
  std::optional<InstitutionId> institution_of(ApplicantId i) const;
  std::span<const Holder> holders(InstitutionId s) const {
    return by_institution_.at(s.value());
  }
  std::vector<ApplicantId> applicants_at(InstitutionId s) const;
  std::size_t count(InstitutionId s, CategoryId c) const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<std::optional<Placement>> by_applicant_;
  std::vector<std::vector<Holder>> by_institution_;
};

// An assignment with the category tags dropped.
struct Matching {
  std::vector<std::optional<InstitutionId>> by_applicant;
  std::vector<std::vector<ApplicantId>> by_institution;  // sorted

  bool operator==(const Matching&) const = default;
};

Matching induce_matching(const Assignment& assignment);

struct Violation {
  enum class Kind { kEligibility, kCapacity, kBijectivity };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Feasibility against the market's initial capacities: eligibility of each
// tag, per-category and total seat limits, and agreement between the
// applicant and institution sides. Throws InputError if the assignment's
// dimensions do not match the market.
ValidationReport validate_assignment(const Assignment& assignment,
                                     const Market& market);

}  // namespace resmatch

#endif  // RESMATCH_ASSIGNMENT_HPP_
