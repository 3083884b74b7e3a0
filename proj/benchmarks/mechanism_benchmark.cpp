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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "resmatch/choice.hpp"
#include "resmatch/mechanism.hpp"

namespace resmatch {
namespace {

// `applicants` applicants with distinct scores and India category shares,
// `institutions` institutions with about a tenth as many seats as
// applicants in total, and preference lists of up to `list_length`.
Market synthetic_market(int applicants, int institutions, int list_length,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CategoryScheme scheme = CategoryScheme::india();
  std::discrete_distribution<int> category({0.505, 0.15, 0.075, 0.27});
  std::vector<int> scores(applicants);
  for (int k = 0; k < applicants; ++k) scores[k] = k + 1;
  std::shuffle(scores.begin(), scores.end(), rng);

  std::vector<Applicant> people;
  std::vector<std::vector<InstitutionId>> lists;
  std::vector<InstitutionId> all;
  for (int s = 0; s < institutions; ++s) all.emplace_back(s);
  for (int k = 0; k < applicants; ++k) {
    Applicant a{"i" + std::to_string(k), Score(scores[k]), std::nullopt, false};
    if (int c = category(rng); c > 0) {
      a.true_category = scheme.reserved()[c - 1];
      a.reported = true;
    }
    people.push_back(a);
    std::shuffle(all.begin(), all.end(), rng);
    lists.emplace_back(all.begin(), all.begin() + std::min(list_length, institutions));
  }
  const int seats = std::max(2, applicants / (10 * institutions));
  std::vector<Institution> insts;
  for (int s = 0; s < institutions; ++s) {
    // Roughly half open, with SC, ST and OBC shares.
    CapacityVector q{seats / 2, seats * 15 / 100, seats * 75 / 1000,
                     seats - seats / 2 - seats * 15 / 100 - seats * 75 / 1000};
    insts.push_back({"s" + std::to_string(s), q, std::nullopt, std::nullopt});
  }
  return Market(scheme, insts, people, PreferenceProfile(lists));
}

void BM_BackwardTransfersChoice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Market market = synthetic_market(n, 1, 1, 7);
  const auto everyone = market.all_applicants();
  const InstitutionId s{0};
  // Few OBC applicants relative to OBC seats forces several transfers.
  CapacityVector q{n / 10, n / 40, n / 80, n / 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(choose_backward_transfers(market, s, everyone, q));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BackwardTransfersChoice)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DaBt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Market market = synthetic_market(n, 20, 5, 11);
  for (auto _ : state) benchmark::DoNotOptimize(da_bt(market));
  state.SetComplexityN(n);
}
BENCHMARK(BM_DaBt)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_MultiRunDa(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Market market = synthetic_market(n, 20, 5, 11);
  for (auto _ : state) benchmark::DoNotOptimize(multi_run_da(market));
  state.SetComplexityN(n);
}
BENCHMARK(BM_MultiRunDa)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace resmatch

BENCHMARK_MAIN();
