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

#include "resmatch/mechanism.hpp"

#include <algorithm>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

Assignment assignment_from(const Market& market,
                           const std::vector<ChoiceResult>& terminal) {
  std::vector<std::vector<Holder>> holders(terminal.size());
  for (std::size_t s = 0; s < terminal.size(); ++s) holders[s] = terminal[s].chosen;
  return Assignment::from_holders(market.applicant_count(), std::move(holders));
}

struct DaOutcome {
  std::vector<ChoiceResult> terminal;
  std::size_t steps = 0;
  std::vector<DaStep> trace;
};

DaOutcome run_da(const Market& market, const ChoiceRule& rule,
                 std::span<const CapacityVector> capacities, std::size_t run) {
  const std::size_t n = market.applicant_count();
  const std::size_t m = market.institution_count();
  if (capacities.size() != m) {
    throw InputError("deferred acceptance: one capacity vector per institution required");
  }
  const auto& prefs = market.preferences();

  DaOutcome out;
  out.terminal.reserve(m);
  std::vector<std::vector<ApplicantId>> held(m);
  for (std::size_t s = 0; s < m; ++s) {
    out.terminal.push_back(rule(market, InstitutionId{s}, {}, capacities[s]));
  }
  std::vector<std::size_t> next(n, 0);
  std::vector<ApplicantId> free = market.all_applicants();

  for (;;) {
    std::vector<std::vector<ApplicantId>> proposers(m);
    bool any = false;
    for (ApplicantId i : free) {
      const auto list = prefs.list(i);
      if (next[i.value()] < list.size()) {
        proposers[list[next[i.value()]].value()].push_back(i);
        any = true;
      }
    }
    if (!any) break;
    ++out.steps;
    free.clear();
    for (std::size_t s = 0; s < m; ++s) {
      if (proposers[s].empty()) continue;
      std::vector<ApplicantId> pool = held[s];
      pool.insert(pool.end(), proposers[s].begin(), proposers[s].end());
      std::sort(pool.begin(), pool.end());
      ChoiceResult chosen = rule(market, InstitutionId{s}, pool, capacities[s]);
      DaStep record{run, out.steps, InstitutionId{s}, proposers[s],
                    chosen.chosen_applicants(), {}};
      for (ApplicantId i : pool) {
        if (!chosen.contains(i)) {
          record.rejected.push_back(i);
          ++next[i.value()];
          free.push_back(i);
        }
      }
      held[s] = record.held;
      out.terminal[s] = std::move(chosen);
      out.trace.push_back(std::move(record));
    }
    std::sort(free.begin(), free.end());
  }
  return out;
}

MechanismRun finish(const Market& market, DaOutcome da,
                    std::vector<std::vector<CapacityVector>> outer,
                    std::size_t steps, std::vector<DaStep> trace) {
  MechanismRun result;
  result.outcome = assignment_from(market, da.terminal);
  result.da_steps = steps;
  result.outer_iterations = std::move(outer);
  for (const auto& r : da.terminal) {
    result.final_capacities.push_back(r.final_capacities);
    result.choice_iterations.push_back(r.last_iteration());
  }
  result.trace = std::move(trace);
  return result;
}

}  // namespace

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kDaIndia:
      return "da-in";
    case MechanismKind::kMultiRunDa:
      return "multi-run-da";
    case MechanismKind::kDaBt:
      return "da-bt";
  }
  return "unknown";
}

std::optional<MechanismKind> parse_mechanism(std::string_view name) {
  for (auto kind : {MechanismKind::kDaIndia, MechanismKind::kMultiRunDa,
                    MechanismKind::kDaBt}) {
    if (mechanism_name(kind) == name) return kind;
  }
  return std::nullopt;
}

MechanismRun deferred_acceptance(const Market& market, const ChoiceRule& rule,
                                 std::span<const CapacityVector> capacities) {
  DaOutcome da = run_da(market, rule, capacities, 1);
  const auto steps = da.steps;
  auto trace = std::move(da.trace);
  std::vector<std::vector<CapacityVector>> outer{
      std::vector<CapacityVector>(capacities.begin(), capacities.end())};
  return finish(market, std::move(da), std::move(outer), steps, std::move(trace));
}

MechanismRun deferred_acceptance(const Market& market, const ChoiceRule& rule) {
  const auto q = market.initial_capacities();
  return deferred_acceptance(market, rule, q);
}

MechanismRun multi_run_da(const Market& market) {
  const auto& scheme = market.scheme();
  std::vector<CapacityVector> q = market.initial_capacities();
  std::vector<std::vector<CapacityVector>> outer;
  std::vector<DaStep> trace;
  std::size_t steps = 0;
  for (std::size_t run = 1;; ++run) {
    outer.push_back(q);
    DaOutcome da = run_da(market, choose_india, q, run);
    steps += da.steps;
    trace.insert(trace.end(), std::make_move_iterator(da.trace.begin()),
                 std::make_move_iterator(da.trace.end()));
    bool reverted = false;
    for (std::size_t s = 0; s < q.size(); ++s) {
      for (CategoryId d : scheme.dereservable()) {
        const int vacant = q[s][d] - static_cast<int>(da.terminal[s].count(d));
        if (vacant > 0) {
          q[s].transfer(d, scheme.open(), vacant);
          reverted = true;
        }
      }
    }
    if (!reverted) {
      return finish(market, std::move(da), std::move(outer), steps, std::move(trace));
    }
  }
}

MechanismRun da_bt(const Market& market) {
  return deferred_acceptance(market, choose_backward_transfers);
}

MechanismRun run_mechanism(MechanismKind kind, const Market& market) {
  switch (kind) {
    case MechanismKind::kDaIndia:
      return deferred_acceptance(market, choose_india);
    case MechanismKind::kMultiRunDa:
      return multi_run_da(market);
    case MechanismKind::kDaBt:
      return da_bt(market);
  }
  throw DomainError("unknown mechanism");
}

}  // namespace resmatch
