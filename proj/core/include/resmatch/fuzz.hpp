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

#ifndef RESMATCH_FUZZ_HPP_
#define RESMATCH_FUZZ_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resmatch/market.hpp"
#include "resmatch/oracle.hpp"

namespace resmatch {

enum class Property {
  kParetoDominance,         // DA-BT weakly Pareto-dominates multi-run DA
  kDaBtStrategyProof,       // no joint deviation helps under DA-BT
  kMultiRunStrategyProof,   // same for multi-run DA (expected to fail)
  kStability,               // both outcomes stable w.r.t. C^BT
  kDaBtAxioms,              // IR, meritocracy, non-wastefulness, open-first
};

std::string_view property_name(Property property);
std::optional<Property> parse_property(std::string_view name);
// Every property that is expected to hold.
std::vector<Property> default_properties();

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t markets = 1000;
  std::size_t max_applicants = 4;
  std::size_t max_institutions = 3;
  int max_seats = 3;  // per institution, at least one of them open
  // GC, then the reserved categories of the India preset in order
  // SC, ST, OBC. Also used to place seats, with the GC share going to open.
  std::array<double, 4> category_weights = {0.505, 0.15, 0.075, 0.27};
  std::vector<Property> properties = default_properties();
  std::size_t threads = 1;
  SearchLimits search;
};

// The market with the given index in the stream of `config`. Depends only on
// (seed, index) and the size bounds.
Market generate_market(const FuzzConfig& config, std::size_t index);
std::uint64_t market_seed(std::uint64_t seed, std::size_t index);

struct Counterexample {
  Property property;
  std::size_t market_index = 0;
  std::uint64_t market_seed = 0;
  std::string detail;
  std::optional<ManipulationWitness> deviation;
  Market market;
};

struct PropertyTally {
  Property property;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t truncated = 0;  // strategy-proofness searches cut short
};

struct FuzzSummary {
  std::size_t markets = 0;
  std::vector<PropertyTally> tallies;
  std::vector<Counterexample> counterexamples;  // first per property

  bool clean() const;
};

// Checks one property on one market; nullopt when it holds. `truncated` is
// set when a strategy-proofness search could not cover the report space.
std::optional<Counterexample> check_property(Property property,
                                             const Market& market,
                                             const SearchLimits& limits,
                                             bool* truncated = nullptr);

FuzzSummary fuzz(const FuzzConfig& config);

}  // namespace resmatch

#endif  // RESMATCH_FUZZ_HPP_
