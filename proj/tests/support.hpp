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

#ifndef RESMATCH_TESTS_SUPPORT_HPP_
#define RESMATCH_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resmatch/assignment.hpp"
#include "resmatch/choice.hpp"
#include "resmatch/market.hpp"
#include "resmatch/market_io.hpp"

namespace resmatch::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(RESMATCH_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(RESMATCH_GOLDEN_DIR) + "/" + name;
}

inline Market load_fixture(const std::string& name) {
  return load_market(fixture_path(name));
}

inline ApplicantId applicant(const Market& market, const std::string& name) {
  auto i = market.find_applicant(name);
  if (!i) throw std::out_of_range("no applicant " + name);
  return *i;
}

inline InstitutionId institution(const Market& market, const std::string& name) {
  auto s = market.find_institution(name);
  if (!s) throw std::out_of_range("no institution " + name);
  return *s;
}

inline CategoryId category(const Market& market, const std::string& name) {
  auto c = market.scheme().find(name);
  if (!c) throw std::out_of_range("no category " + name);
  return *c;
}

inline std::vector<std::string> names(const Market& market,
                                      std::span<const ApplicantId> ids) {
  std::vector<std::string> out;
  for (ApplicantId i : ids) out.push_back(market.applicant(i).name);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> names_at(const Market& market, const Assignment& a,
                                         const std::string& inst) {
  return names(market, a.applicants_at(institution(market, inst)));
}

// Holders of one category tag in a choice result, sorted by name.
inline std::vector<std::string> tagged(const Market& market, const ChoiceResult& result,
                                       const std::string& cat) {
  std::vector<ApplicantId> ids;
  for (const Holder& h : result.chosen) {
    if (h.category == category(market, cat)) ids.push_back(h.applicant);
  }
  return names(market, ids);
}

struct Person {
  std::string name;
  std::string score;
  std::string category = "GC";  // GC or a reserved category name
  bool reported = true;
};

// A market with the India categories and one institution `s1` that every
// applicant lists.
inline Market single_institution(CapacityVector capacities, const std::vector<Person>& people) {
  CategoryScheme scheme = CategoryScheme::india();
  std::vector<Applicant> applicants;
  std::vector<std::vector<InstitutionId>> lists;
  for (const auto& p : people) {
    Applicant a;
    a.name = p.name;
    a.score = Score::parse(p.score);
    if (p.category != "GC") {
      a.true_category = scheme.find(p.category);
      a.reported = p.reported;
    }
    applicants.push_back(a);
    lists.push_back({InstitutionId{0}});
  }
  std::vector<Institution> insts{{"s1", std::move(capacities), std::nullopt, std::nullopt}};
  return Market(std::move(scheme), std::move(insts), std::move(applicants),
                PreferenceProfile(std::move(lists)));
}

}  // namespace resmatch::testing

#endif  // RESMATCH_TESTS_SUPPORT_HPP_
