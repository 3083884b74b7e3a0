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

#include "resmatch/market.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

constexpr std::size_t kUnranked = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxScoreDigits = 18;

// Cross products of two 18-digit values need more than 64 bits.
__extension__ using Wide = __int128;

std::int64_t parse_digits(std::string_view digits, std::string_view text) {
  if (digits.empty() || digits.size() > kMaxScoreDigits) {
    throw InputError("invalid score '" + std::string(text) + "'");
  }
  std::int64_t value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw InputError("invalid score '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Score::Score(std::int64_t value)
    : numerator_(value), denominator_(1), text_(std::to_string(value)) {}

Score Score::parse(std::string_view text) {
  Score score;
  score.text_ = std::string(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    score.numerator_ = parse_digits(body.substr(0, slash), text);
    score.denominator_ = parse_digits(body.substr(slash + 1), text);
    if (score.denominator_ == 0) {
      throw InputError("invalid score '" + std::string(text) + "': zero denominator");
    }
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.size() + frac.size() > kMaxScoreDigits || whole.empty() || frac.empty()) {
      throw InputError("invalid score '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    score.numerator_ = parse_digits(digits, text);
    score.denominator_ = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) score.denominator_ *= 10;
  } else {
    score.numerator_ = parse_digits(body, text);
  }
  if (negative) score.numerator_ = -score.numerator_;
  return score;
}

std::strong_ordering operator<=>(const Score& a, const Score& b) {
  const Wide lhs = static_cast<Wide>(a.numerator_) * b.denominator_;
  const Wide rhs = static_cast<Wide>(b.numerator_) * a.denominator_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

MeritOrder::MeritOrder(std::vector<ApplicantId> ranking,
                       std::size_t applicant_count)
    : ranking_(std::move(ranking)), rank_of_(applicant_count, kUnranked) {
  for (std::size_t k = 0; k < ranking_.size(); ++k) {
    const std::size_t i = ranking_[k].value();
    if (i >= applicant_count) {
      throw InputError("merit order: applicant index out of range");
    }
    if (rank_of_[i] != kUnranked) {
      throw InputError("merit order: applicant ranked twice");
    }
    rank_of_[i] = k;
  }
}

std::optional<std::size_t> MeritOrder::rank(ApplicantId i) const {
  if (i.value() >= rank_of_.size() || rank_of_[i.value()] == kUnranked) {
    return std::nullopt;
  }
  return rank_of_[i.value()];
}

bool MeritOrder::prefers(ApplicantId i, ApplicantId j) const {
  auto ri = rank(i);
  auto rj = rank(j);
  if (!ri) return false;
  if (!rj) return true;
  return *ri < *rj;
}

std::vector<ApplicantId> MeritOrder::sorted(
    std::span<const ApplicantId> applicants) const {
  std::vector<ApplicantId> out;
  out.reserve(applicants.size());
  for (ApplicantId i : applicants) {
    if (acceptable(i)) out.push_back(i);
  }
  std::sort(out.begin(), out.end(),
            [this](ApplicantId a, ApplicantId b) { return *rank(a) < *rank(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::size_t> PreferenceProfile::rank(ApplicantId i,
                                                   InstitutionId s) const {
  const auto& list = lists_.at(i.value());
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (list[k] == s) return k;
  }
  return std::nullopt;
}

bool PreferenceProfile::prefers(ApplicantId i, std::optional<InstitutionId> a,
                                std::optional<InstitutionId> b) const {
  if (!a) return false;  // ∅ is never strictly better than anything listed
  auto ra = rank(i, *a);
  if (!ra) return false;  // a is unacceptable, so ∅ P_i a
  if (!b) return true;
  auto rb = rank(i, *b);
  if (!rb) return true;
  return *ra < *rb;
}

PreferenceProfile PreferenceProfile::with_list(
    ApplicantId i, std::vector<InstitutionId> list) const {
  PreferenceProfile copy = *this;
  copy.lists_.at(i.value()) = std::move(list);
  return copy;
}

Market::Market(CategoryScheme scheme, std::vector<Institution> institutions,
               std::vector<Applicant> applicants, PreferenceProfile preferences,
               TieBreak tie_break)
    : scheme_(std::move(scheme)),
      institutions_(std::move(institutions)),
      applicants_(std::move(applicants)),
      preferences_(std::move(preferences)),
      tie_break_(tie_break) {
  for (std::size_t k = 0; k < institutions_.size(); ++k) {
    const auto& inst = institutions_[k];
    if (inst.name.empty()) throw InputError("institution with empty id");
    if (!institution_index_.emplace(inst.name, k).second) {
      throw InputError("duplicate institution id '" + inst.name + "'");
    }
    if (inst.capacities.size() != scheme_.size()) {
      throw InputError("institution '" + inst.name +
                       "': capacity vector does not match the category scheme");
    }
  }
  for (std::size_t k = 0; k < applicants_.size(); ++k) {
    const auto& app = applicants_[k];
    if (app.name.empty()) throw InputError("applicant with empty id");
    if (!applicant_index_.emplace(app.name, k).second) {
      throw InputError("duplicate applicant id '" + app.name + "'");
    }
    if (app.true_category) {
      if (!scheme_.is_reserved(*app.true_category)) {
        throw InputError("applicant '" + app.name +
                         "': category must be reserved or GC");
      }
    } else if (app.reported) {
      throw InputError("applicant '" + app.name +
                       "': a GC applicant has no membership to report");
    }
  }
  if (preferences_.size() != applicants_.size()) {
    throw InputError("preference profile does not cover every applicant");
  }
  for (std::size_t k = 0; k < applicants_.size(); ++k) {
    auto list = preferences_.list(ApplicantId{k});
    std::vector<bool> seen(institutions_.size(), false);
    for (InstitutionId s : list) {
      if (s.value() >= institutions_.size()) {
        throw InputError("applicant '" + applicants_[k].name +
                         "': preference over an unknown institution");
      }
      if (seen[s.value()]) {
        throw InputError("applicant '" + applicants_[k].name +
                         "': institution '" + institutions_[s.value()].name +
                         "' listed twice");
      }
      seen[s.value()] = true;
    }
  }
  build_merit_orders();
}

void Market::build_merit_orders() {
  merit_.clear();
  merit_.reserve(institutions_.size());
  for (const auto& inst : institutions_) {
    std::vector<ApplicantId> ranking;
    auto passes_cutoff = [&](ApplicantId i) {
      return !inst.cutoff || !(applicants_[i.value()].score < *inst.cutoff);
    };
    if (inst.merit_override) {
      for (ApplicantId i : *inst.merit_override) {
        if (i.value() >= applicants_.size()) {
          throw InputError("institution '" + inst.name +
                           "': merit order names an unknown applicant");
        }
        if (passes_cutoff(i)) ranking.push_back(i);
      }
    } else {
      for (std::size_t k = 0; k < applicants_.size(); ++k) {
        if (passes_cutoff(ApplicantId{k})) ranking.emplace_back(k);
      }
      std::stable_sort(ranking.begin(), ranking.end(),
                       [&](ApplicantId a, ApplicantId b) {
                         const auto& x = applicants_[a.value()];
                         const auto& y = applicants_[b.value()];
                         if (x.score != y.score) return x.score > y.score;
                         return x.name < y.name;
                       });
      for (std::size_t k = 1; k < ranking.size(); ++k) {
        const auto& x = applicants_[ranking[k - 1].value()];
        const auto& y = applicants_[ranking[k].value()];
        if (x.score == y.score && tie_break_ == TieBreak::kReject) {
          throw InputError("institution '" + inst.name + "': applicants '" +
                           x.name + "' and '" + y.name + "' tie on score " +
                           x.score.text() + " (enable tie-break to order by id)");
        }
      }
    }
    merit_.emplace_back(std::move(ranking), applicants_.size());
  }
}

std::optional<ApplicantId> Market::find_applicant(std::string_view name) const {
  auto it = applicant_index_.find(std::string(name));
  if (it == applicant_index_.end()) return std::nullopt;
  return ApplicantId{it->second};
}

std::optional<InstitutionId> Market::find_institution(std::string_view name) const {
  auto it = institution_index_.find(std::string(name));
  if (it == institution_index_.end()) return std::nullopt;
  return InstitutionId{it->second};
}

std::vector<ApplicantId> Market::all_applicants() const {
  std::vector<ApplicantId> out;
  out.reserve(applicants_.size());
  for (std::size_t k = 0; k < applicants_.size(); ++k) out.emplace_back(k);
  return out;
}

std::vector<CapacityVector> Market::initial_capacities() const {
  std::vector<CapacityVector> out;
  out.reserve(institutions_.size());
  for (const auto& inst : institutions_) out.push_back(inst.capacities);
  return out;
}

Market Market::with_preferences(ApplicantId i,
                                std::vector<InstitutionId> list) const {
  Market copy = *this;
  for (InstitutionId s : list) {
    if (s.value() >= institutions_.size()) {
      throw InputError("preference over an unknown institution");
    }
  }
  copy.preferences_ = preferences_.with_list(i, std::move(list));
  return copy;
}

Market Market::with_reported(ApplicantId i, bool reported) const {
  const auto& app = applicants_.at(i.value());
  if (reported && !app.true_category) {
    throw DomainError("applicant '" + app.name + "' has no reserve membership");
  }
  Market copy = *this;
  copy.applicants_[i.value()].reported = reported;
  return copy;
}

}  // namespace resmatch
