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

#include "resmatch/choice.hpp"

#include <algorithm>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

std::vector<ApplicantId> as_set(std::span<const ApplicantId> applicants) {
  std::vector<ApplicantId> out(applicants.begin(), applicants.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int dereservable_vacancies(const CategoryScheme& scheme, const ChoiceResult& r,
                           const CapacityVector& q) {
  int vacancies = 0;
  for (CategoryId d : scheme.dereservable()) {
    vacancies += q[d] - static_cast<int>(r.count(d));
  }
  return vacancies;
}

// C^IN on an already-deduplicated set.
ChoiceResult india_once(const Market& market, InstitutionId institution,
                        const std::vector<ApplicantId>& applicants,
                        const CapacityVector& q) {
  const auto& scheme = market.scheme();
  const auto& order = market.merit(institution);
  ChoiceResult result;
  result.final_capacities = q;

  const auto ranked = order.sorted(applicants);
  const auto open_count =
      std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(q[scheme.open()]));
  for (std::size_t k = 0; k < open_count; ++k) {
    result.chosen.push_back(Holder{ranked[k], scheme.open()});
  }
  for (CategoryId r : scheme.reserved()) {
    int left = q[r];
    for (std::size_t k = open_count; k < ranked.size() && left > 0; ++k) {
      if (market.effective_category(ranked[k]) == r) {
        result.chosen.push_back(Holder{ranked[k], r});
        --left;
      }
    }
  }
  result.iterations.push_back(
      ChoiceIteration{q, dereservable_vacancies(scheme, result, q)});
  return result;
}

}  // namespace

bool ChoiceResult::contains(ApplicantId i) const {
  return std::any_of(chosen.begin(), chosen.end(),
                     [i](const Holder& h) { return h.applicant == i; });
}

std::vector<ApplicantId> ChoiceResult::chosen_applicants() const {
  std::vector<ApplicantId> out;
  out.reserve(chosen.size());
  for (const Holder& h : chosen) out.push_back(h.applicant);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ChoiceResult::count(CategoryId c) const {
  return static_cast<std::size_t>(std::count_if(
      chosen.begin(), chosen.end(), [c](const Holder& h) { return h.category == c; }));
}

std::vector<ApplicantId> restricted_merit_order(const Market& market,
                                                InstitutionId institution,
                                                CategoryId reserved) {
  if (!market.scheme().is_reserved(reserved)) {
    throw DomainError("restricted merit order: category '" +
                      (reserved.value() < market.scheme().size()
                           ? market.scheme().name(reserved)
                           : std::to_string(reserved.value())) +
                      "' is not reserved");
  }
  std::vector<ApplicantId> out;
  for (ApplicantId i : market.merit(institution).ranking()) {
    if (market.effective_category(i) == reserved) out.push_back(i);
  }
  return out;
}

std::vector<ApplicantId> choose_open(std::span<const ApplicantId> applicants,
                                     int capacity, const MeritOrder& order) {
  auto ranked = order.sorted(applicants);
  const auto k = static_cast<std::size_t>(std::max(capacity, 0));
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

ChoiceResult choose_india(const Market& market, InstitutionId institution,
                          std::span<const ApplicantId> applicants,
                          const CapacityVector& capacities) {
  return india_once(market, institution, as_set(applicants), capacities);
}

ChoiceResult choose_backward_transfers(const Market& market,
                                       InstitutionId institution,
                                       std::span<const ApplicantId> applicants,
                                       const CapacityVector& capacities) {
  const auto& scheme = market.scheme();
  const auto set = as_set(applicants);
  std::vector<ChoiceIteration> iterations;
  CapacityVector q = capacities;
  for (;;) {
    ChoiceResult run = india_once(market, institution, set, q);
    iterations.push_back(run.iterations.front());
    if (run.iterations.front().vacancies == 0) {
      run.iterations = std::move(iterations);
      return run;
    }
    // All vacant de-reservable seats move to open at once.
    for (CategoryId d : scheme.dereservable()) {
      const int vacant = q[d] - static_cast<int>(run.count(d));
      q.transfer(d, scheme.open(), vacant);
    }
  }
}

ChoiceResult choose_thakur_literal(const Market& market,
                                   InstitutionId institution,
                                   std::span<const ApplicantId> applicants,
                                   const CapacityVector& capacities) {
  const auto& scheme = market.scheme();
  const auto set = as_set(applicants);
  ChoiceResult result = india_once(market, institution, set, capacities);
  const auto ranked = market.merit(institution).sorted(set);
  auto next = ranked.begin();
  for (CategoryId d : scheme.dereservable()) {
    int vacant = capacities[d] - static_cast<int>(result.count(d));
    while (vacant > 0) {
      next = std::find_if(next, ranked.end(), [&](ApplicantId i) {
        return !market.effective_category(i) && !result.contains(i);
      });
      if (next == ranked.end()) break;
      result.chosen.push_back(Holder{*next, d});
      --vacant;
    }
  }
  return result;
}

bool bt_termination_check(const Market& market, InstitutionId institution,
                          std::span<const ApplicantId> applicants,
                          const CapacityVector& initial,
                          const CapacityVector& candidate,
                          int initial_vacancies) {
  const auto& scheme = market.scheme();
  const auto& order = market.merit(institution);
  const CategoryId open = scheme.open();

  int pooled = initial[open];
  for (CategoryId d : scheme.dereservable()) pooled += initial[d];
  if (candidate[open] == pooled) return true;  // condition (2)

  const auto set = as_set(applicants);
  const auto before = choose_open(set, initial[open], order);
  const auto after = choose_open(set, candidate[open], order);
  int newcomers = 0;
  for (ApplicantId i : after) {
    if (std::find(before.begin(), before.end(), i) != before.end()) continue;
    const auto t = market.effective_category(i);
    if (t && scheme.is_dereservable(*t)) continue;  // i ∈ A^D
    ++newcomers;
  }
  return newcomers == initial_vacancies;  // condition (1)
}

}  // namespace resmatch
