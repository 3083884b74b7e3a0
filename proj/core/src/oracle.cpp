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

#include "resmatch/oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

using Mask = std::uint64_t;

constexpr std::size_t kMaxUniverse = 63;

void enumerate_from(std::vector<InstitutionId>& prefix, std::vector<bool>& used,
                    std::size_t budget,
                    std::vector<std::vector<InstitutionId>>& out) {
  if (out.size() >= budget) return;
  out.push_back(prefix);
  for (std::size_t s = 0; s < used.size(); ++s) {
    if (used[s]) continue;
    if (out.size() >= budget) return;
    used[s] = true;
    prefix.emplace_back(s);
    enumerate_from(prefix, used, budget, out);
    prefix.pop_back();
    used[s] = false;
  }
}

std::size_t report_count(std::size_t m) {
  // Σ_k m!/(m-k)!, saturating.
  std::size_t total = 0;
  std::size_t term = 1;
  for (std::size_t k = 0; k <= m; ++k) {
    total += term;
    if (k < m) {
      if (term > (std::size_t{1} << 40)) return std::size_t{1} << 41;
      term *= (m - k);
    }
  }
  return total;
}

std::vector<ApplicantId> members(std::span<const ApplicantId> universe, Mask mask) {
  std::vector<ApplicantId> out;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (mask & (Mask{1} << k)) out.push_back(universe[k]);
  }
  return out;
}

std::string render_set(const Market& market, const std::vector<ApplicantId>& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ",";
    out += market.applicant(set[k]).name;
  }
  return out + "}";
}

bool contains(const std::vector<ApplicantId>& set, ApplicantId i) {
  return std::find(set.begin(), set.end(), i) != set.end();
}

std::vector<ApplicantId> normalized(std::vector<ApplicantId> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

// Subsets to visit: all of them when the universe is small enough, otherwise
// a fixed-seed sample.
std::vector<Mask> subsets(std::size_t size, const EnumerationLimits& limits,
                          bool* sampled) {
  if (size > kMaxUniverse) throw DomainError("universe too large to index");
  std::vector<Mask> out;
  if (size <= limits.exhaustive_size) {
    *sampled = false;
    const Mask end = Mask{1} << size;
    out.reserve(end);
    for (Mask m = 0; m < end; ++m) out.push_back(m);
    return out;
  }
  *sampled = true;
  std::mt19937_64 rng(limits.seed);
  const Mask full = (size == 64) ? ~Mask{0} : (Mask{1} << size) - 1;
  out.reserve(limits.samples);
  for (std::size_t k = 0; k < limits.samples; ++k) out.push_back(rng() & full);
  return out;
}

class CachedChoice {
 public:
  CachedChoice(const SetChoice& choice, std::span<const ApplicantId> universe)
      : choice_(choice), universe_(universe) {}

  const std::vector<ApplicantId>& operator()(Mask mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    auto chosen = normalized(choice_(members(universe_, mask)));
    return cache_.emplace(mask, std::move(chosen)).first->second;
  }

 private:
  const SetChoice& choice_;
  std::span<const ApplicantId> universe_;
  std::unordered_map<Mask, std::vector<ApplicantId>> cache_;
};

}  // namespace

std::string_view deviation_name(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::kPreferenceMisreport:
      return "preference-misreport";
    case DeviationKind::kMembershipHide:
      return "membership-hide";
    case DeviationKind::kJoint:
      return "joint";
  }
  return "unknown";
}

std::string describe_manipulation(const Market& market, const ManipulationWitness& w) {
  std::string prefs;
  for (InstitutionId s : w.reported_preferences) {
    prefs += (prefs.empty() ? "" : ",") + market.institution(s).name;
  }
  auto where = [&](std::optional<InstitutionId> s) {
    return s ? market.institution(*s).name : std::string("unassigned");
  };
  std::string text = market.applicant(w.applicant).name + " " +
                     std::string(deviation_name(w.kind)) +
                     " prefs=" + (prefs.empty() ? "-" : prefs);
  if (market.applicant(w.applicant).true_category) {
    text += std::string(" reported=") + (w.reported_membership ? "yes" : "no");
  }
  return text + ": " + where(w.truthful_outcome) + " -> " + where(w.deviant_outcome);
}

std::string_view pareto_name(ParetoVerdict verdict) {
  switch (verdict) {
    case ParetoVerdict::kDominates:
      return "dominates";
    case ParetoVerdict::kDominated:
      return "dominated";
    case ParetoVerdict::kEqual:
      return "equal";
    case ParetoVerdict::kIncomparable:
      return "incomparable";
  }
  return "unknown";
}

std::vector<std::vector<InstitutionId>> enumerate_reports(std::size_t institutions,
                                                          std::size_t budget) {
  std::vector<std::vector<InstitutionId>> out;
  std::vector<InstitutionId> prefix;
  std::vector<bool> used(institutions, false);
  enumerate_from(prefix, used, budget, out);
  return out;
}

namespace {

ManipulationSearch search_reports(MechanismKind mechanism, const Market& market,
                                  ApplicantId applicant, const SearchLimits& limits,
                                  bool vary_membership) {
  const auto& truth = market.preferences();
  const auto truthful = run_mechanism(mechanism, market).outcome.institution_of(applicant);
  ManipulationSearch search;

  const std::size_t m = market.institution_count();
  const std::size_t full = report_count(m);
  const std::size_t budget =
      m <= limits.exhaustive_institutions ? full : std::min(full, limits.report_budget);
  search.truncated = budget < full;
  const auto reports = enumerate_reports(m, budget);

  const auto& app = market.applicant(applicant);
  std::vector<bool> memberships{app.reported};
  if (vary_membership && app.true_category) memberships.push_back(!app.reported);

  const auto true_list = truth.list(applicant);
  const std::vector<InstitutionId> true_vec(true_list.begin(), true_list.end());
  for (const auto& report : reports) {
    for (bool reported : memberships) {
      if (report == true_vec && reported == app.reported) continue;
      Market deviant = market.with_preferences(applicant, report);
      if (reported != app.reported) deviant = deviant.with_reported(applicant, reported);
      ++search.reports_tried;
      const auto outcome =
          run_mechanism(mechanism, deviant).outcome.institution_of(applicant);
      if (!truth.prefers(applicant, outcome, truthful)) continue;
      ManipulationWitness w;
      w.applicant = applicant;
      if (reported != app.reported) {
        w.kind = report == true_vec ? DeviationKind::kMembershipHide : DeviationKind::kJoint;
      } else {
        w.kind = DeviationKind::kPreferenceMisreport;
      }
      w.reported_preferences = report;
      w.reported_membership = reported;
      w.truthful_outcome = truthful;
      w.deviant_outcome = outcome;
      search.witness = std::move(w);
      return search;
    }
  }
  return search;
}

}  // namespace

ManipulationSearch find_preference_manipulation(MechanismKind mechanism,
                                                const Market& market,
                                                ApplicantId applicant,
                                                SearchLimits limits) {
  return search_reports(mechanism, market, applicant, limits, false);
}

ManipulationSearch find_joint_manipulation(MechanismKind mechanism,
                                           const Market& market,
                                           ApplicantId applicant,
                                           SearchLimits limits) {
  return search_reports(mechanism, market, applicant, limits, true);
}

std::optional<ManipulationWitness> find_membership_manipulation(
    MechanismKind mechanism, const Market& market, ApplicantId applicant) {
  const auto& app = market.applicant(applicant);
  if (!app.true_category || !app.reported) {
    throw DomainError("membership manipulation: '" + app.name +
                      "' does not report a reserve membership");
  }
  const auto truthful = run_mechanism(mechanism, market).outcome.institution_of(applicant);
  const Market hidden = market.with_reported(applicant, false);
  const auto deviant = run_mechanism(mechanism, hidden).outcome.institution_of(applicant);
  if (!market.preferences().prefers(applicant, deviant, truthful)) return std::nullopt;
  ManipulationWitness w;
  w.applicant = applicant;
  w.kind = DeviationKind::kMembershipHide;
  const auto list = market.preferences().list(applicant);
  w.reported_preferences.assign(list.begin(), list.end());
  w.reported_membership = false;
  w.truthful_outcome = truthful;
  w.deviant_outcome = deviant;
  return w;
}

ParetoVerdict pareto_compare(const Assignment& first, const Assignment& second,
                             const Market& market) {
  if (induce_matching(first) == induce_matching(second)) return ParetoVerdict::kEqual;
  const auto& prefs = market.preferences();
  bool first_better = false;
  bool second_better = false;
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    ApplicantId i{k};
    const auto a = first.institution_of(i);
    const auto b = second.institution_of(i);
    if (prefs.prefers(i, a, b)) first_better = true;
    if (prefs.prefers(i, b, a)) second_better = true;
  }
  if (first_better && !second_better) return ParetoVerdict::kDominates;
  if (second_better && !first_better) return ParetoVerdict::kDominated;
  return ParetoVerdict::kIncomparable;
}

SetChoice bind_rule(ChoiceRule rule, Market market, InstitutionId institution,
                    CapacityVector capacities) {
  return [rule = std::move(rule), market = std::move(market), institution,
          capacities = std::move(capacities)](std::span<const ApplicantId> set) {
    return rule(market, institution, set, capacities).chosen_applicants();
  };
}

AuditReport check_spirit_of_aa(const ChoiceRule& rule, const Market& market,
                               InstitutionId institution,
                               std::span<const ApplicantId> universe,
                               EnumerationLimits limits) {
  AuditReport report{Axiom::kSpiritOfAffirmativeAction, {}, false};
  const auto& q = market.institution(institution).capacities;
  std::vector<std::optional<Market>> hidden(universe.size());
  for (std::size_t k = 0; k < universe.size(); ++k) {
    const auto& app = market.applicant(universe[k]);
    if (app.true_category && app.reported) {
      hidden[k] = market.with_reported(universe[k], false);
    }
  }
  std::vector<bool> reported_once(universe.size(), false);
  for (Mask mask : subsets(universe.size(), limits, &report.sampled)) {
    const auto set = members(universe, mask);
    std::optional<ChoiceResult> truthful;
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (!(mask & (Mask{1} << k)) || !hidden[k] || reported_once[k]) continue;
      if (!truthful) truthful = rule(market, institution, set, q);
      if (truthful->contains(universe[k])) continue;
      if (!rule(*hidden[k], institution, set, q).contains(universe[k])) continue;
      reported_once[k] = true;
      Witness w;
      w.applicant = universe[k];
      w.institution = institution;
      w.category = market.applicant(universe[k]).true_category;
      w.context = set;
      w.clause = "hiding-helps";
      w.text = market.applicant(universe[k]).name + " is rejected from " +
               render_set(market, set) + " when reporting " +
               market.scheme().name(*w.category) + " but chosen when hiding it";
      report.witnesses.push_back(std::move(w));
    }
  }
  return report;
}

AuditReport check_substitutability(const SetChoice& choice, const Market& market,
                                   std::span<const ApplicantId> universe,
                                   EnumerationLimits limits) {
  AuditReport report{Axiom::kSubstitutability, {}, false};
  CachedChoice chosen(choice, universe);
  const std::size_t n = universe.size();
  for (Mask base : subsets(n, limits, &report.sampled)) {
    for (std::size_t a = 0; a < n; ++a) {
      const Mask bit_i = Mask{1} << a;
      if (base & bit_i) continue;
      if (contains(chosen(base | bit_i), universe[a])) continue;
      for (std::size_t b = 0; b < n; ++b) {
        const Mask bit_j = Mask{1} << b;
        if (b == a || (base & bit_j)) continue;
        if (!contains(chosen(base | bit_i | bit_j), universe[a])) continue;
        Witness w;
        w.applicant = universe[a];
        w.competitor = universe[b];
        w.context = members(universe, base);
        w.clause = "complement";
        w.text = market.applicant(universe[a]).name + " is rejected from " +
                 render_set(market, members(universe, base | bit_i)) +
                 " but chosen once " + market.applicant(universe[b]).name + " joins";
        report.witnesses.push_back(std::move(w));
        return report;
      }
    }
  }
  return report;
}

AuditReport check_size_monotonicity(const SetChoice& choice, const Market& market,
                                    std::span<const ApplicantId> universe,
                                    EnumerationLimits limits) {
  AuditReport report{Axiom::kSizeMonotonicity, {}, false};
  CachedChoice chosen(choice, universe);
  const std::size_t n = universe.size();
  for (Mask base : subsets(n, limits, &report.sampled)) {
    const auto before = chosen(base).size();
    for (std::size_t a = 0; a < n; ++a) {
      const Mask bit = Mask{1} << a;
      if (base & bit) continue;
      const auto after = chosen(base | bit).size();
      if (before <= after) continue;
      Witness w;
      w.applicant = universe[a];
      w.context = members(universe, base);
      w.clause = "shrinks";
      w.text = "choosing from " + render_set(market, members(universe, base)) +
               " selects " + std::to_string(before) + " but adding " +
               market.applicant(universe[a]).name + " selects " +
               std::to_string(after);
      report.witnesses.push_back(std::move(w));
      return report;
    }
  }
  return report;
}

AuditReport check_improvement(const SetChoice& base, const SetChoice& improved,
                              ApplicantId individual, const Market& market,
                              std::span<const ApplicantId> universe,
                              EnumerationLimits limits) {
  AuditReport report{Axiom::kImprovement, {}, false};
  CachedChoice before(base, universe);
  CachedChoice after(improved, universe);
  const auto& name = market.applicant(individual).name;
  for (Mask mask : subsets(universe.size(), limits, &report.sampled)) {
    const auto& c = before(mask);
    const auto& c_improved = after(mask);
    const bool in_base = contains(c, individual);
    const bool in_improved = contains(c_improved, individual);
    Witness w;
    w.applicant = individual;
    w.context = members(universe, mask);
    if (in_base && !in_improved) {
      w.clause = "(i)";
      w.text = name + " is chosen from " + render_set(market, w.context) +
               " by the base rule but not by the improved rule";
    } else if (!in_base && !in_improved && c != c_improved) {
      w.clause = "(ii)";
      w.text = name + " is rejected by both rules from " +
               render_set(market, w.context) + " yet the chosen sets differ";
    } else {
      continue;
    }
    report.witnesses.push_back(std::move(w));
    return report;
  }
  return report;
}

}  // namespace resmatch
