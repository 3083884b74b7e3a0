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

#ifndef RESMATCH_MARKET_HPP_
#define RESMATCH_MARKET_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "resmatch/category.hpp"

namespace resmatch {

using ApplicantId = Index<struct ApplicantTag>;
using InstitutionId = Index<struct InstitutionTag>;

// Exact rational merit score; higher is better. Keeps its source text so
// that serialization reproduces what was read.
class Score {
 public:
  Score() = default;
  explicit Score(std::int64_t value);

  // Accepts `[-]digits`, `[-]digits.digits` and `[-]digits/digits`.
  // Throws InputError on anything else, on a zero denominator, or when the
  // value does not fit in 18 digits.
  static Score parse(std::string_view text);

  const std::string& text() const { return text_; }

  friend std::strong_ordering operator<=>(const Score& a, const Score& b);
  friend bool operator==(const Score& a, const Score& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  std::int64_t numerator_ = 0;
  std::int64_t denominator_ = 1;
  std::string text_ = "0";
};

struct Applicant {
  std::string name;
  Score score;
  // nullopt is the general category (GC).
  std::optional<CategoryId> true_category;
  // Whether reserve membership is declared. Only meaningful for members of
  // a reserved category.
  bool reported = false;

  // t_i: the declared category, or GC when membership is not reported.
  std::optional<CategoryId> effective_category() const {
    return reported ? true_category : std::nullopt;
  }
};

// Strict ranking of the acceptable applicants at one institution. Applicants
// missing from the ranking are unacceptable (the empty set ranks above them).
class MeritOrder {
 public:
  MeritOrder() = default;
  MeritOrder(std::vector<ApplicantId> ranking, std::size_t applicant_count);

  bool acceptable(ApplicantId i) const { return rank(i).has_value(); }
  // 0 is the best rank.
  std::optional<std::size_t> rank(ApplicantId i) const;
  // i ≻ j. An acceptable applicant beats an unacceptable one; two
  // unacceptable applicants are unordered (returns false both ways).
  bool prefers(ApplicantId i, ApplicantId j) const;
  std::span<const ApplicantId> ranking() const { return ranking_; }

  // Acceptable members of `applicants`, best first.
  std::vector<ApplicantId> sorted(std::span<const ApplicantId> applicants) const;

 private:
  std::vector<ApplicantId> ranking_;
  std::vector<std::size_t> rank_of_;  // npos when unacceptable
};

struct Institution {
  std::string name;
  CapacityVector capacities;
  // Applicants with a score strictly below the cutoff are unacceptable.
  std::optional<Score> cutoff;
  // Explicit ranking replacing the score-induced one. Applicants not listed
  // are unacceptable.
  std::optional<std::vector<ApplicantId>> merit_override;
};

enum class TieBreak {
  kReject,       // equal scores at one institution are an input error
  kApplicantId,  // equal scores are ordered by applicant id, ascending
};

// Strict preference lists: P_i as an ordered list of acceptable
// institutions, best first.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;
  explicit PreferenceProfile(std::vector<std::vector<InstitutionId>> lists)
      : lists_(std::move(lists)) {}

  std::size_t size() const { return lists_.size(); }
  std::span<const InstitutionId> list(ApplicantId i) const {
    return lists_.at(i.value());
  }
  // Position of s in i's list, nullopt if s is unacceptable to i.
  std::optional<std::size_t> rank(ApplicantId i, InstitutionId s) const;
  // a P_i b where nullopt stands for remaining unassigned.
  bool prefers(ApplicantId i, std::optional<InstitutionId> a,
               std::optional<InstitutionId> b) const;

  PreferenceProfile with_list(ApplicantId i,
                              std::vector<InstitutionId> list) const;

  bool operator==(const PreferenceProfile&) const = default;

 private:
  std::vector<std::vector<InstitutionId>> lists_;
};

// A complete problem instance: categories, institutions with their merit
// orders, applicants and their reported preferences. Immutable once built.
class Market {
 public:
  // Validates every invariant and derives the merit orders. Throws
  // InputError on duplicate ids, out-of-range references, preference
  // duplicates, `reported` set on a GC applicant, capacity vectors of the
  // wrong size, or score ties under TieBreak::kReject.
  Market(CategoryScheme scheme, std::vector<Institution> institutions,
         std::vector<Applicant> applicants, PreferenceProfile preferences,
         TieBreak tie_break = TieBreak::kReject);

  const CategoryScheme& scheme() const { return scheme_; }
  std::size_t applicant_count() const { return applicants_.size(); }
  std::size_t institution_count() const { return institutions_.size(); }
  const Applicant& applicant(ApplicantId i) const {
    return applicants_.at(i.value());
  }
  const Institution& institution(InstitutionId s) const {
    return institutions_.at(s.value());
  }
  std::span<const Applicant> applicants() const { return applicants_; }
  std::span<const Institution> institutions() const { return institutions_; }
  const PreferenceProfile& preferences() const { return preferences_; }
  const MeritOrder& merit(InstitutionId s) const { return merit_.at(s.value()); }
  TieBreak tie_break() const { return tie_break_; }

  std::optional<CategoryId> effective_category(ApplicantId i) const {
    return applicant(i).effective_category();
  }

  std::optional<ApplicantId> find_applicant(std::string_view name) const;
  std::optional<InstitutionId> find_institution(std::string_view name) const;

  std::vector<ApplicantId> all_applicants() const;
  std::vector<CapacityVector> initial_capacities() const;

  // Copies with one applicant's report changed.
  Market with_preferences(ApplicantId i, std::vector<InstitutionId> list) const;
  Market with_reported(ApplicantId i, bool reported) const;

 private:
  void build_merit_orders();

  CategoryScheme scheme_;
  std::vector<Institution> institutions_;
  std::vector<Applicant> applicants_;
  PreferenceProfile preferences_;
  TieBreak tie_break_;
  std::vector<MeritOrder> merit_;
  std::unordered_map<std::string, std::size_t> applicant_index_;
  std::unordered_map<std::string, std::size_t> institution_index_;
};

}  // namespace resmatch

#endif  // RESMATCH_MARKET_HPP_
