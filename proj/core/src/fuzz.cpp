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

#include "resmatch/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <utility>

#include "resmatch/audit.hpp"
#include "resmatch/mechanism.hpp"

namespace resmatch {
namespace {

constexpr std::array<Property, 5> kAllProperties = {
    Property::kParetoDominance, Property::kDaBtStrategyProof,
    Property::kMultiRunStrategyProof, Property::kStability, Property::kDaBtAxioms};

constexpr std::size_t kScoreRange = 1000;

std::string institution_label(std::size_t k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "s" + std::to_string(k + 1);
}

std::optional<Counterexample> strategy_proofness(Property property,
                                                 MechanismKind kind,
                                                 const Market& market,
                                                 const SearchLimits& limits,
                                                 bool* truncated) {
  for (ApplicantId i : market.all_applicants()) {
    auto search = find_joint_manipulation(kind, market, i, limits);
    if (search.truncated && truncated) *truncated = true;
    if (!search.witness) continue;
    Counterexample cx{property, 0, 0, describe_manipulation(market, *search.witness),
                      search.witness, market};
    return cx;
  }
  return std::nullopt;
}

}  // namespace

std::string_view property_name(Property property) {
  switch (property) {
    case Property::kParetoDominance:
      return "pareto-dominance";
    case Property::kDaBtStrategyProof:
      return "da-bt-strategy-proof";
    case Property::kMultiRunStrategyProof:
      return "multi-run-strategy-proof";
    case Property::kStability:
      return "stability";
    case Property::kDaBtAxioms:
      return "da-bt-axioms";
  }
  return "unknown";
}

std::optional<Property> parse_property(std::string_view name) {
  for (Property p : kAllProperties) {
    if (property_name(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<Property> default_properties() {
  return {Property::kParetoDominance, Property::kDaBtStrategyProof,
          Property::kStability, Property::kDaBtAxioms};
}

std::uint64_t market_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Market generate_market(const FuzzConfig& config, std::size_t index) {
  std::mt19937_64 rng(market_seed(config.seed, index));
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = uniform(1, std::max<std::size_t>(1, config.max_applicants));
  const std::size_t m = uniform(1, std::max<std::size_t>(1, config.max_institutions));

  CategoryScheme scheme = CategoryScheme::india();
  std::discrete_distribution<std::size_t> category(config.category_weights.begin(),
                                                   config.category_weights.end());
  std::vector<Institution> institutions;
  for (std::size_t s = 0; s < m; ++s) {
    // At least one open seat; the rest go to categories by the same shares
    // as applicants, with the GC share going to open.
    CapacityVector q(scheme.size());
    q.set(scheme.open(), 1);
    const std::size_t seats = uniform(1, std::max(1, config.max_seats));
    for (std::size_t k = 1; k < seats; ++k) {
      const std::size_t draw = category(rng);
      const CategoryId c = draw == 0 ? scheme.open() : scheme.reserved()[draw - 1];
      q.set(c, q[c] + 1);
    }
    institutions.push_back({institution_label(s), q, std::nullopt, std::nullopt});
  }

  // Uniform scores, redrawn on collision so that merit never ties.
  std::vector<int> scores;
  while (scores.size() < n) {
    const int score = static_cast<int>(uniform(1, kScoreRange));
    if (std::find(scores.begin(), scores.end(), score) == scores.end()) {
      scores.push_back(score);
    }
  }

  std::vector<Applicant> applicants;
  std::vector<std::vector<InstitutionId>> lists;
  for (std::size_t k = 0; k < n; ++k) {
    Applicant a;
    a.name = "i" + std::to_string(k + 1);
    a.score = Score(scores[k]);
    const std::size_t draw = category(rng);
    if (draw > 0) {
      a.true_category = scheme.reserved()[draw - 1];
      a.reported = true;
    }
    applicants.push_back(std::move(a));

    std::vector<InstitutionId> list;
    for (std::size_t s = 0; s < m; ++s) list.emplace_back(s);
    std::shuffle(list.begin(), list.end(), rng);
    list.resize(uniform(0, 3) == 0 ? uniform(0, m) : m);
    lists.push_back(std::move(list));
  }
  return Market(std::move(scheme), std::move(institutions), std::move(applicants),
                PreferenceProfile(std::move(lists)));
}

std::optional<Counterexample> check_property(Property property, const Market& market,
                                             const SearchLimits& limits,
                                             bool* truncated) {
  switch (property) {
    case Property::kParetoDominance: {
      const auto bt = da_bt(market).outcome;
      const auto multi = multi_run_da(market).outcome;
      const auto verdict = pareto_compare(bt, multi, market);
      if (verdict == ParetoVerdict::kDominates || verdict == ParetoVerdict::kEqual) {
        return std::nullopt;
      }
      return Counterexample{property, 0, 0,
                            "da-bt is " + std::string(pareto_name(verdict)) +
                                " against multi-run-da",
                            std::nullopt, market};
    }
    case Property::kDaBtStrategyProof:
      return strategy_proofness(property, MechanismKind::kDaBt, market, limits, truncated);
    case Property::kMultiRunStrategyProof:
      return strategy_proofness(property, MechanismKind::kMultiRunDa, market, limits,
                                truncated);
    case Property::kStability: {
      for (MechanismKind kind : {MechanismKind::kDaBt, MechanismKind::kMultiRunDa}) {
        const auto report = check_stability(run_mechanism(kind, market).outcome, market);
        if (report.passed()) continue;
        return Counterexample{property, 0, 0,
                              std::string(mechanism_name(kind)) + ": " +
                                  report.witnesses.front().text,
                              std::nullopt, market};
      }
      return std::nullopt;
    }
    case Property::kDaBtAxioms: {
      const std::array<Axiom, 4> axioms = {Axiom::kIndividualRationality,
                                           Axiom::kMeritocracy,
                                           Axiom::kNonWastefulness, Axiom::kOpenFirst};
      const auto outcome = da_bt(market).outcome;
      for (const auto& report : audit_assignment(outcome, market, axioms)) {
        if (report.passed()) continue;
        return Counterexample{property, 0, 0,
                              std::string(axiom_name(report.axiom)) + ": " +
                                  report.witnesses.front().text,
                              std::nullopt, market};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool FuzzSummary::clean() const {
  return std::all_of(tallies.begin(), tallies.end(),
                     [](const PropertyTally& t) { return t.failed == 0; });
}

FuzzSummary fuzz(const FuzzConfig& config) {
  struct Outcome {
    std::vector<std::optional<Counterexample>> failures;
    std::vector<bool> truncated;
  };
  const std::size_t p = config.properties.size();
  std::vector<Outcome> outcomes(config.markets);

  auto work = [&](std::size_t index) {
    const Market market = generate_market(config, index);
    Outcome& out = outcomes[index];
    out.failures.resize(p);
    out.truncated.assign(p, false);
    for (std::size_t k = 0; k < p; ++k) {
      bool truncated = false;
      auto cx = check_property(config.properties[k], market, config.search, &truncated);
      if (cx) {
        cx->market_index = index;
        cx->market_seed = market_seed(config.seed, index);
      }
      out.failures[k] = std::move(cx);
      out.truncated[k] = truncated;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, config.threads);
  if (threads == 1) {
    for (std::size_t k = 0; k < config.markets; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < config.markets; k = next++) work(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Aggregated in market order so the summary does not depend on threading.
  FuzzSummary summary;
  summary.markets = config.markets;
  for (Property property : config.properties) summary.tallies.push_back({property});
  std::vector<bool> recorded(p, false);
  for (auto& out : outcomes) {
    for (std::size_t k = 0; k < p; ++k) {
      auto& tally = summary.tallies[k];
      if (out.truncated[k]) ++tally.truncated;
      if (!out.failures[k]) {
        ++tally.passed;
        continue;
      }
      ++tally.failed;
      if (!recorded[k]) {
        recorded[k] = true;
        summary.counterexamples.push_back(std::move(*out.failures[k]));
      }
    }
  }
  return summary;
}

}  // namespace resmatch
