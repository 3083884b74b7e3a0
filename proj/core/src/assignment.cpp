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

#include "resmatch/assignment.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {

Assignment::Assignment(std::size_t applicants, std::size_t institutions)
    : by_applicant_(applicants), by_institution_(institutions) {}

Assignment::Assignment(std::vector<std::optional<Placement>> by_applicant,
                       std::vector<std::vector<Holder>> by_institution)
    : by_applicant_(std::move(by_applicant)),
      by_institution_(std::move(by_institution)) {}

Assignment Assignment::from_holders(std::size_t applicants,
                                    std::vector<std::vector<Holder>> holders) {
  std::vector<std::optional<Placement>> by_applicant(applicants);
  for (std::size_t s = 0; s < holders.size(); ++s) {
    auto& list = holders[s];
    std::sort(list.begin(), list.end(), [](const Holder& a, const Holder& b) {
      return a.applicant < b.applicant;
    });
    for (const Holder& h : list) {
      by_applicant.at(h.applicant.value()) = Placement{InstitutionId{s}, h.category};
    }
  }
  return Assignment(std::move(by_applicant), std::move(holders));
}

std::optional<InstitutionId> Assignment::institution_of(ApplicantId i) const {
  const auto& p = placement(i);
  if (!p) return std::nullopt;
  return p->institution;
}

std::vector<ApplicantId> Assignment::applicants_at(InstitutionId s) const {
  std::vector<ApplicantId> out;
  for (const Holder& h : holders(s)) out.push_back(h.applicant);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Assignment::count(InstitutionId s, CategoryId c) const {
  const auto list = holders(s);
  return static_cast<std::size_t>(std::count_if(
      list.begin(), list.end(), [c](const Holder& h) { return h.category == c; }));
}

Matching induce_matching(const Assignment& assignment) {
  Matching m;
  m.by_applicant.resize(assignment.applicant_count());
  m.by_institution.resize(assignment.institution_count());
  for (std::size_t i = 0; i < assignment.applicant_count(); ++i) {
    m.by_applicant[i] = assignment.institution_of(ApplicantId{i});
  }
  for (std::size_t s = 0; s < assignment.institution_count(); ++s) {
    m.by_institution[s] = assignment.applicants_at(InstitutionId{s});
  }
  return m;
}

ValidationReport validate_assignment(const Assignment& assignment,
                                     const Market& market) {
  if (assignment.applicant_count() != market.applicant_count() ||
      assignment.institution_count() != market.institution_count()) {
    throw InputError("assignment does not match the market's dimensions");
  }
  const auto& scheme = market.scheme();
  ValidationReport report;
  auto add = [&report](Violation::Kind kind, std::string detail) {
    report.violations.push_back(Violation{kind, std::move(detail)});
  };
  auto app_name = [&](ApplicantId i) -> std::string {
    if (i.value() >= market.applicant_count()) {
      throw InputError("assignment names an unknown applicant");
    }
    return market.applicant(i).name;
  };

  // Eligibility, from the applicant side.
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto& p = assignment.placement(i);
    if (!p) continue;
    if (p->institution.value() >= market.institution_count() ||
        p->category.value() >= scheme.size()) {
      throw InputError("assignment of '" + app_name(i) +
                       "' names an unknown institution or category");
    }
    if (scheme.is_open(p->category)) continue;
    if (market.effective_category(i) != p->category) {
      add(Violation::Kind::kEligibility,
          app_name(i) + " holds a " + scheme.name(p->category) + " seat at " +
              market.institution(p->institution).name + " but is not eligible");
    }
  }

  std::vector<int> seen(market.applicant_count(), 0);
  for (std::size_t t = 0; t < market.institution_count(); ++t) {
    InstitutionId s{t};
    const auto& inst = market.institution(s);
    const auto& q = inst.capacities;
    const auto holders = assignment.holders(s);

    if (static_cast<int>(holders.size()) > q.total()) {
      add(Violation::Kind::kCapacity,
          inst.name + " holds " + std::to_string(holders.size()) +
              " applicants but has " + std::to_string(q.total()) + " seats");
    }
    for (CategoryId r : scheme.reserved()) {
      const auto n = assignment.count(s, r);
      if (static_cast<int>(n) > q[r]) {
        add(Violation::Kind::kCapacity,
            inst.name + " has " + std::to_string(n) + " " + scheme.name(r) +
                " holders but " + std::to_string(q[r]) + " " + scheme.name(r) +
                " seats");
      }
    }
    int pooled_seats = q[scheme.open()];
    std::size_t pooled_held = assignment.count(s, scheme.open());
    for (CategoryId d : scheme.dereservable()) {
      pooled_seats += q[d];
      pooled_held += assignment.count(s, d);
    }
    if (static_cast<int>(pooled_held) > pooled_seats) {
      add(Violation::Kind::kCapacity,
          inst.name + " has " + std::to_string(pooled_held) +
              " open and de-reservable holders but " +
              std::to_string(pooled_seats) + " such seats");
    }

    for (const Holder& h : holders) {
      if (h.applicant.value() >= market.applicant_count() ||
          h.category.value() >= scheme.size()) {
        throw InputError("assignment at '" + inst.name +
                         "' names an unknown applicant or category");
      }
      ++seen[h.applicant.value()];
      const auto& p = assignment.placement(h.applicant);
      if (!p || p->institution != s || p->category != h.category) {
        add(Violation::Kind::kBijectivity,
            inst.name + " lists (" + app_name(h.applicant) + ", " +
                scheme.name(h.category) + ") but the applicant's record differs");
      }
    }
  }
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto& p = assignment.placement(i);
    if (seen[k] > 1) {
      add(Violation::Kind::kBijectivity,
          app_name(i) + " is listed " + std::to_string(seen[k]) + " times");
    }
    if (p && seen[k] == 0) {
      add(Violation::Kind::kBijectivity,
          app_name(i) + " is placed at " + market.institution(p->institution).name +
              " but the institution does not list them");
    }
  }
  return report;
}

}  // namespace resmatch
