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

#include "resmatch/audit.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

constexpr std::array<std::pair<Axiom, std::string_view>, 13> kAxiomNames{{
    {Axiom::kFeasibility, "feasibility"},
    {Axiom::kIndividualRationality, "individual-rationality"},
    {Axiom::kMeritocracy, "meritocracy"},
    {Axiom::kNonWastefulness, "non-wastefulness"},
    {Axiom::kOpenFirst, "open-first"},
    {Axiom::kStability, "stability"},
    {Axiom::kOverAndAbove, "over-and-above"},
    {Axiom::kWithinCategoryFairness, "within-category-fairness"},
    {Axiom::kQuotaFilling, "quota-filling"},
    {Axiom::kSpiritOfAffirmativeAction, "spirit-of-affirmative-action"},
    {Axiom::kSubstitutability, "substitutability"},
    {Axiom::kSizeMonotonicity, "size-monotonicity"},
    {Axiom::kImprovement, "improvement"},
}};

void check_dimensions(const Assignment& a, const Market& market) {
  if (a.applicant_count() != market.applicant_count() ||
      a.institution_count() != market.institution_count()) {
    throw InputError("assignment does not match the market's dimensions");
  }
}

const std::string& name_of(const Market& market, ApplicantId i) {
  return market.applicant(i).name;
}

const std::string& name_of(const Market& market, InstitutionId s) {
  return market.institution(s).name;
}

// Institutions s with s P_i μ(i) at which i is acceptable.
template <typename Visit>
void for_each_envied(const Assignment& a, const Market& market, Visit visit) {
  const auto& prefs = market.preferences();
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto current = a.institution_of(i);
    for (InstitutionId s : prefs.list(i)) {
      if (current && *current == s) break;
      if (!market.merit(s).acceptable(i)) continue;
      visit(i, s);
    }
  }
}

// Seats pooled between open and the de-reservable categories.
int pooled_seats(const Market& market, InstitutionId s) {
  const auto& scheme = market.scheme();
  const auto& q = market.institution(s).capacities;
  int seats = q[scheme.open()];
  for (CategoryId d : scheme.dereservable()) seats += q[d];
  return seats;
}

int pooled_held(const Market& market, std::span<const Holder> holders) {
  const auto& scheme = market.scheme();
  return static_cast<int>(std::count_if(holders.begin(), holders.end(), [&](const Holder& h) {
    return scheme.is_open(h.category) || scheme.is_dereservable(h.category);
  }));
}

bool open_ranks_above_reserved(const Market& market, InstitutionId s,
                               std::span<const Holder> holders,
                               std::pair<ApplicantId, ApplicantId>* offender) {
  const auto& scheme = market.scheme();
  const auto& order = market.merit(s);
  for (const Holder& o : holders) {
    if (!scheme.is_open(o.category)) continue;
    for (const Holder& r : holders) {
      if (!scheme.is_reserved(r.category)) continue;
      if (!order.prefers(o.applicant, r.applicant)) {
        if (offender) *offender = {o.applicant, r.applicant};
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  for (const auto& [a, name] : kAxiomNames) {
    if (a == axiom) return name;
  }
  return "unknown";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (const auto& [a, n] : kAxiomNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

std::vector<Axiom> assignment_axioms() {
  return {Axiom::kFeasibility,     Axiom::kIndividualRationality,
          Axiom::kMeritocracy,     Axiom::kNonWastefulness,
          Axiom::kOpenFirst,       Axiom::kStability};
}

AuditReport check_feasibility(const Assignment& assignment, const Market& market) {
  AuditReport report{Axiom::kFeasibility, {}, false};
  for (const auto& v : validate_assignment(assignment, market).violations) {
    Witness w;
    switch (v.kind) {
      case Violation::Kind::kEligibility:
        w.clause = "eligibility";
        break;
      case Violation::Kind::kCapacity:
        w.clause = "capacity";
        break;
      case Violation::Kind::kBijectivity:
        w.clause = "bijectivity";
        break;
    }
    w.text = v.detail;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

AuditReport check_individual_rationality(const Assignment& assignment,
                                         const Market& market) {
  check_dimensions(assignment, market);
  AuditReport report{Axiom::kIndividualRationality, {}, false};
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto s = assignment.institution_of(i);
    if (!s || market.preferences().rank(i, *s)) continue;
    Witness w;
    w.applicant = i;
    w.institution = *s;
    w.clause = "acceptable";
    w.text = name_of(market, i) + " is placed at " + name_of(market, *s) +
             ", which they did not list";
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

AuditReport check_meritocracy(const Assignment& assignment, const Market& market) {
  check_dimensions(assignment, market);
  const auto& scheme = market.scheme();
  AuditReport report{Axiom::kMeritocracy, {}, false};
  for_each_envied(assignment, market, [&](ApplicantId i, InstitutionId s) {
    const auto t = market.effective_category(i);
    const auto& order = market.merit(s);
    for (const Holder& h : assignment.holders(s)) {
      const bool relevant = scheme.is_open(h.category) || (t && h.category == *t);
      if (!relevant || order.prefers(h.applicant, i)) continue;
      Witness w;
      w.applicant = i;
      w.institution = s;
      w.category = h.category;
      w.competitor = h.applicant;
      w.clause = scheme.is_open(h.category) ? "open" : "own-category";
      w.text = name_of(market, i) + " prefers " + name_of(market, s) + " where " +
               name_of(market, h.applicant) + " holds a " + scheme.name(h.category) +
               " seat without outranking them";
      report.witnesses.push_back(std::move(w));
    }
  });
  return report;
}

AuditReport check_non_wastefulness(const Assignment& assignment,
                                   const Market& market) {
  check_dimensions(assignment, market);
  const auto& scheme = market.scheme();
  AuditReport report{Axiom::kNonWastefulness, {}, false};
  for_each_envied(assignment, market, [&](ApplicantId i, InstitutionId s) {
    const auto& q = market.institution(s).capacities;
    const auto t = market.effective_category(i);
    if (t) {
      const auto held = assignment.count(s, *t);
      if (static_cast<int>(held) != q[*t]) {
        Witness w;
        w.applicant = i;
        w.institution = s;
        w.category = *t;
        w.clause = "own-category";
        w.text = name_of(market, i) + " prefers " + name_of(market, s) + " where " +
                 std::to_string(held) + " of " + std::to_string(q[*t]) + " " +
                 scheme.name(*t) + " seats are filled";
        report.witnesses.push_back(std::move(w));
      }
    }
    const int held = pooled_held(market, assignment.holders(s));
    const int seats = pooled_seats(market, s);
    if (held != seats) {
      Witness w;
      w.applicant = i;
      w.institution = s;
      w.category = scheme.open();
      w.clause = "open-pool";
      w.text = name_of(market, i) + " prefers " + name_of(market, s) + " where " +
               std::to_string(held) + " of " + std::to_string(seats) +
               " open and de-reservable seats are filled";
      report.witnesses.push_back(std::move(w));
    }
  });
  return report;
}

AuditReport check_open_first(const Assignment& assignment, const Market& market) {
  check_dimensions(assignment, market);
  const auto& scheme = market.scheme();
  AuditReport report{Axiom::kOpenFirst, {}, false};
  for (std::size_t k = 0; k < market.institution_count(); ++k) {
    InstitutionId s{k};
    const auto& q = market.institution(s).capacities;
    const auto holders = assignment.holders(s);
    const int seats = pooled_seats(market, s);
    auto pool_ok = [&](std::span<const Holder> list) {
      return pooled_held(market, list) ==
             std::min(static_cast<int>(list.size()), seats);
    };

    if (!pool_ok(holders)) {
      Witness w;
      w.institution = s;
      w.clause = "(i)";
      w.text = name_of(market, s) + " has " +
               std::to_string(pooled_held(market, holders)) +
               " open and de-reservable holders; expected min(" +
               std::to_string(holders.size()) + ", " + std::to_string(seats) + ")";
      report.witnesses.push_back(std::move(w));
    }
    std::pair<ApplicantId, ApplicantId> offender;
    if (!open_ranks_above_reserved(market, s, holders, &offender)) {
      Witness w;
      w.applicant = offender.first;
      w.institution = s;
      w.category = scheme.open();
      w.competitor = offender.second;
      w.clause = "(ii)";
      w.text = name_of(market, offender.first) + " holds an open seat at " +
               name_of(market, s) + " but does not outrank reserved holder " +
               name_of(market, offender.second);
      report.witnesses.push_back(std::move(w));
    }
    for (const Holder& h : holders) {
      if (!scheme.is_open(h.category)) continue;
      const auto t = market.effective_category(h.applicant);
      if (!t || scheme.is_dereservable(*t)) continue;
      if (static_cast<int>(assignment.count(s, *t)) + 1 > q[*t]) continue;
      std::vector<Holder> retagged(holders.begin(), holders.end());
      for (Holder& r : retagged) {
        if (r.applicant == h.applicant) r.category = *t;
      }
      if (pool_ok(retagged) && open_ranks_above_reserved(market, s, retagged, nullptr)) {
        Witness w;
        w.applicant = h.applicant;
        w.institution = s;
        w.category = *t;
        w.clause = "(iii)";
        w.text = name_of(market, h.applicant) + " could hold a " + scheme.name(*t) +
                 " seat at " + name_of(market, s) +
                 " instead of an open seat without breaking (i) or (ii)";
        report.witnesses.push_back(std::move(w));
      }
    }
    const auto open_held = assignment.count(s, scheme.open());
    const bool reserved_held = std::any_of(holders.begin(), holders.end(), [&](const Holder& h) {
      return scheme.is_reserved(h.category);
    });
    if (reserved_held && static_cast<int>(open_held) < q[scheme.open()]) {
      Witness w;
      w.institution = s;
      w.clause = "(iv)";
      w.text = name_of(market, s) + " fills reserved seats while " +
               std::to_string(q[scheme.open()] - static_cast<int>(open_held)) +
               " open seats are empty";
      report.witnesses.push_back(std::move(w));
    }
  }
  return report;
}

StabilityReport find_blocking_pairs(const Assignment& assignment,
                                    const Market& market) {
  check_dimensions(assignment, market);
  StabilityReport report;
  const auto& prefs = market.preferences();
  std::vector<std::vector<ApplicantId>> members(market.institution_count());
  for (std::size_t k = 0; k < market.institution_count(); ++k) {
    InstitutionId s{k};
    members[k] = assignment.applicants_at(s);
    const auto rechosen = choose_backward_transfers(
        market, s, members[k], market.institution(s).capacities);
    if (rechosen.chosen_applicants() != members[k]) report.not_rechosen.push_back(s);
  }
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto current = assignment.institution_of(i);
    for (InstitutionId s : prefs.list(i)) {
      if (current && *current == s) break;
      auto pool = members[s.value()];
      pool.push_back(i);
      const auto result = choose_backward_transfers(
          market, s, pool, market.institution(s).capacities);
      if (result.contains(i)) report.blocking_pairs.push_back(BlockingPair{i, s});
    }
  }
  return report;
}

AuditReport check_stability(const Assignment& assignment, const Market& market) {
  AuditReport report{Axiom::kStability, {}, false};
  for (auto w : check_individual_rationality(assignment, market).witnesses) {
    w.clause = "individual-rationality";
    report.witnesses.push_back(std::move(w));
  }
  const auto stability = find_blocking_pairs(assignment, market);
  for (InstitutionId s : stability.not_rechosen) {
    Witness w;
    w.institution = s;
    w.clause = "rechosen";
    w.text = name_of(market, s) + " would not re-choose its own holders";
    report.witnesses.push_back(std::move(w));
  }
  for (const auto& pair : stability.blocking_pairs) {
    Witness w;
    w.applicant = pair.applicant;
    w.institution = pair.institution;
    w.clause = "blocking-pair";
    w.text = name_of(market, pair.applicant) + " and " +
             name_of(market, pair.institution) + " block";
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

std::vector<AuditReport> check_choice_axioms(const ChoiceRule& rule,
                                             const Market& market,
                                             InstitutionId institution,
                                             std::span<const ApplicantId> applicants,
                                             const CapacityVector& capacities) {
  const auto& scheme = market.scheme();
  const auto& order = market.merit(institution);
  const ChoiceResult result = rule(market, institution, applicants, capacities);
  const CapacityVector& q = result.final_capacities;
  const auto ranked = order.sorted(applicants);
  auto tag_of = [&](ApplicantId i) -> std::optional<CategoryId> {
    for (const Holder& h : result.chosen) {
      if (h.applicant == i) return h.category;
    }
    return std::nullopt;
  };

  AuditReport over{Axiom::kOverAndAbove, {}, false};
  const auto top = std::min<std::size_t>(ranked.size(),
                                         static_cast<std::size_t>(q[scheme.open()]));
  for (std::size_t k = 0; k < top; ++k) {
    const auto tag = tag_of(ranked[k]);
    if (tag && scheme.is_open(*tag)) continue;
    Witness w;
    w.applicant = ranked[k];
    w.institution = institution;
    w.category = tag;
    w.clause = "rank";
    w.text = name_of(market, ranked[k]) + " has rank " + std::to_string(k + 1) +
             " <= " + std::to_string(q[scheme.open()]) + " but no open seat";
    over.witnesses.push_back(std::move(w));
  }

  AuditReport fairness{Axiom::kWithinCategoryFairness, {}, false};
  for (std::size_t a = 0; a < ranked.size(); ++a) {
    if (result.contains(ranked[a])) continue;
    for (std::size_t b = a + 1; b < ranked.size(); ++b) {
      if (market.effective_category(ranked[a]) != market.effective_category(ranked[b]) ||
          !result.contains(ranked[b])) {
        continue;
      }
      Witness w;
      w.applicant = ranked[a];
      w.institution = institution;
      w.competitor = ranked[b];
      w.clause = "same-category";
      w.text = name_of(market, ranked[b]) + " is chosen over higher-ranked " +
               name_of(market, ranked[a]) + " of the same category";
      fairness.witnesses.push_back(std::move(w));
    }
  }

  AuditReport quota{Axiom::kQuotaFilling, {}, false};
  for (ApplicantId i : ranked) {
    const auto t = market.effective_category(i);
    if (!t || result.contains(i)) continue;
    const auto held = result.count(*t);
    if (static_cast<int>(held) == q[*t]) continue;
    Witness w;
    w.applicant = i;
    w.institution = institution;
    w.category = *t;
    w.clause = "eligible-unassigned";
    w.text = name_of(market, i) + " is unassigned while " + std::to_string(held) +
             " of " + std::to_string(q[*t]) + " " + scheme.name(*t) +
             " seats are filled";
    quota.witnesses.push_back(std::move(w));
  }
  return {std::move(over), std::move(fairness), std::move(quota)};
}

std::vector<AuditReport> audit_assignment(const Assignment& assignment,
                                          const Market& market,
                                          std::span<const Axiom> axioms) {
  std::vector<AuditReport> out;
  for (Axiom axiom : axioms) {
    switch (axiom) {
      case Axiom::kFeasibility:
        out.push_back(check_feasibility(assignment, market));
        break;
      case Axiom::kIndividualRationality:
        out.push_back(check_individual_rationality(assignment, market));
        break;
      case Axiom::kMeritocracy:
        out.push_back(check_meritocracy(assignment, market));
        break;
      case Axiom::kNonWastefulness:
        out.push_back(check_non_wastefulness(assignment, market));
        break;
      case Axiom::kOpenFirst:
        out.push_back(check_open_first(assignment, market));
        break;
      case Axiom::kStability:
        out.push_back(check_stability(assignment, market));
        break;
      default:
        throw DomainError("axiom '" + std::string(axiom_name(axiom)) +
                          "' is not an assignment-level axiom");
    }
  }
  return out;
}

}  // namespace resmatch
