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

#include <gtest/gtest.h>

#include "resmatch/assignment.hpp"
#include "resmatch/category.hpp"
#include "resmatch/error.hpp"
#include "resmatch/market.hpp"
#include "support.hpp"

namespace resmatch {
namespace {

using testing::applicant;
using testing::category;
using testing::Person;
using testing::single_institution;

TEST(ScoreTest, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(Score::parse("98"), Score(98));
  EXPECT_EQ(Score::parse("97.50"), Score::parse("195/2"));
  EXPECT_LT(Score::parse("-3"), Score::parse("0"));
  EXPECT_LT(Score::parse("1/3"), Score::parse("0.334"));
  EXPECT_GT(Score::parse("1/3"), Score::parse("0.333"));
  EXPECT_EQ(Score::parse("97.50").text(), "97.50");
}

TEST(ScoreTest, RejectsMalformedText) {
  for (const char* bad : {"", "-", "9x", "1.", ".5", "1/0", "1/", "1234567890123456789"}) {
    EXPECT_THROW(Score::parse(bad), InputError) << bad;
  }
}

TEST(CategorySchemeTest, IndiaPreset) {
  const auto scheme = CategoryScheme::india();
  ASSERT_EQ(scheme.size(), 4u);
  EXPECT_EQ(scheme.name(scheme.open()), "o");
  const auto obc = *scheme.find("OBC");
  const auto sc = *scheme.find("SC");
  EXPECT_TRUE(scheme.is_reserved(obc));
  EXPECT_TRUE(scheme.is_dereservable(obc));
  EXPECT_FALSE(scheme.is_dereservable(sc));
  EXPECT_FALSE(scheme.is_reserved(scheme.open()));
  EXPECT_EQ(scheme.reserved().size(), 3u);
  EXPECT_EQ(scheme.dereservable().size(), 1u);
}

TEST(CategorySchemeTest, RejectsBadDeclarations) {
  EXPECT_THROW(CategoryScheme("o", {"SC", "SC"}, {}), InputError);
  EXPECT_THROW(CategoryScheme("", {"SC"}, {}), InputError);
  EXPECT_THROW(CategoryScheme("o", {"SC"}, {"OBC"}), InputError);
  EXPECT_THROW(CategoryScheme("o", {"GC"}, {}), InputError);
}

TEST(CapacityVectorTest, TransferKeepsTotal) {
  CapacityVector q{3, 1, 0, 2};
  EXPECT_EQ(q.total(), 6);
  q.transfer(CategoryId{3}, CategoryId{0}, 2);
  EXPECT_EQ(q, (CapacityVector{5, 1, 0, 0}));
  EXPECT_EQ(q.total(), 6);
  EXPECT_THROW(q.transfer(CategoryId{3}, CategoryId{0}, 1), DomainError);
}

TEST(CapacityVectorTest, NegativeSeatsAreRejected) {
  EXPECT_THROW((CapacityVector{1, -1}), DomainError);
  CapacityVector q(2);
  EXPECT_THROW(q.set(CategoryId{0}, -2), DomainError);
}

TEST(MarketTest, MeritOrderFollowsScores) {
  const auto market = single_institution(
      CapacityVector{1, 0, 0, 0},
      {{"x", "90"}, {"y", "95", "SC"}, {"z", "80", "OBC"}});
  const auto& merit = market.merit(InstitutionId{0});
  EXPECT_TRUE(merit.prefers(applicant(market, "y"), applicant(market, "x")));
  EXPECT_TRUE(merit.prefers(applicant(market, "x"), applicant(market, "z")));
  EXPECT_EQ(merit.rank(applicant(market, "y")), 0u);
}

TEST(MarketTest, TieWithoutTieBreakNamesBothApplicants) {
  try {
    single_institution(CapacityVector{1, 0, 0, 0}, {{"p", "98"}, {"q", "98"}});
    FAIL() << "expected a tie error";
  } catch (const InputError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("'p'"), std::string::npos) << what;
    EXPECT_NE(what.find("'q'"), std::string::npos) << what;
  }
}

TEST(MarketTest, TieBreakByIdOrdersEqualScores) {
  CategoryScheme scheme = CategoryScheme::india();
  std::vector<Applicant> people{{"p", Score(98), std::nullopt, false},
                                {"q", Score(98), std::nullopt, false}};
  Market market(scheme, {{"s1", CapacityVector{1, 0, 0, 0}, std::nullopt, std::nullopt}},
                people, PreferenceProfile({{InstitutionId{0}}, {InstitutionId{0}}}),
                TieBreak::kApplicantId);
  EXPECT_TRUE(market.merit(InstitutionId{0}).prefers(ApplicantId{0}, ApplicantId{1}));
}

TEST(MarketTest, CutoffMakesLowScoresUnacceptable) {
  CategoryScheme scheme = CategoryScheme::india();
  std::vector<Applicant> people{{"p", Score(70), std::nullopt, false},
                                {"q", Score(50), std::nullopt, false}};
  Market market(scheme, {{"s1", CapacityVector{2, 0, 0, 0}, Score(60), std::nullopt}}, people,
                PreferenceProfile({{InstitutionId{0}}, {InstitutionId{0}}}));
  const auto& merit = market.merit(InstitutionId{0});
  EXPECT_TRUE(merit.acceptable(ApplicantId{0}));
  EXPECT_FALSE(merit.acceptable(ApplicantId{1}));
  EXPECT_TRUE(merit.prefers(ApplicantId{0}, ApplicantId{1}));
  EXPECT_FALSE(merit.prefers(ApplicantId{1}, ApplicantId{0}));
}

TEST(MarketTest, MeritOverrideReplacesScoreOrder) {
  CategoryScheme scheme = CategoryScheme::india();
  std::vector<Applicant> people{{"p", Score(70), std::nullopt, false},
                                {"q", Score(50), std::nullopt, false},
                                {"r", Score(40), std::nullopt, false}};
  std::vector<ApplicantId> ranking{ApplicantId{1}, ApplicantId{0}};
  Market market(scheme, {{"s1", CapacityVector{2, 0, 0, 0}, std::nullopt, ranking}}, people,
                PreferenceProfile(std::vector<std::vector<InstitutionId>>(3)));
  const auto& merit = market.merit(InstitutionId{0});
  EXPECT_TRUE(merit.prefers(ApplicantId{1}, ApplicantId{0}));
  EXPECT_FALSE(merit.acceptable(ApplicantId{2}));
}

TEST(MarketTest, RejectsInconsistentInput) {
  CategoryScheme scheme = CategoryScheme::india();
  const Institution inst{"s1", CapacityVector{1, 0, 0, 0}, std::nullopt, std::nullopt};
  const Applicant gc{"p", Score(1), std::nullopt, false};
  const PreferenceProfile one_empty(std::vector<std::vector<InstitutionId>>(1));
  // Duplicate applicant ids.
  EXPECT_THROW(Market(scheme, {inst}, {gc, gc}, PreferenceProfile(std::vector<std::vector<InstitutionId>>(2))), InputError);
  // Duplicate institution ids.
  EXPECT_THROW(Market(scheme, {inst, inst}, {gc}, one_empty), InputError);
  // A GC applicant cannot report membership.
  EXPECT_THROW(Market(scheme, {inst}, {{"p", Score(1), std::nullopt, true}},
                      one_empty),
               InputError);
  // Capacity vector of the wrong size.
  EXPECT_THROW(Market(scheme, {{"s1", CapacityVector{1, 0}, std::nullopt, std::nullopt}},
                      {gc}, one_empty),
               InputError);
  // Institution listed twice.
  EXPECT_THROW(Market(scheme, {inst}, {gc},
                      PreferenceProfile({{InstitutionId{0}, InstitutionId{0}}})),
               InputError);
  // Preference over an unknown institution.
  EXPECT_THROW(Market(scheme, {inst}, {gc}, PreferenceProfile({{InstitutionId{4}}})),
               InputError);
}

TEST(MarketTest, HidingMembershipMakesApplicantGeneral) {
  const auto market =
      single_institution(CapacityVector{1, 0, 0, 1}, {{"p", "90", "OBC"}, {"q", "80"}});
  const auto p = applicant(market, "p");
  EXPECT_EQ(market.effective_category(p), category(market, "OBC"));
  const auto hidden = market.with_reported(p, false);
  EXPECT_EQ(hidden.effective_category(p), std::nullopt);
  EXPECT_EQ(hidden.applicant(p).true_category, category(market, "OBC"));
  EXPECT_THROW(market.with_reported(applicant(market, "q"), true), DomainError);
}

TEST(PreferenceProfileTest, UnassignedRanksBelowAcceptableInstitutions) {
  PreferenceProfile prefs({{InstitutionId{1}, InstitutionId{0}}});
  const ApplicantId i{0};
  EXPECT_TRUE(prefs.prefers(i, InstitutionId{1}, InstitutionId{0}));
  EXPECT_TRUE(prefs.prefers(i, InstitutionId{0}, std::nullopt));
  EXPECT_FALSE(prefs.prefers(i, InstitutionId{2}, std::nullopt));
  EXPECT_FALSE(prefs.prefers(i, std::nullopt, std::nullopt));
  EXPECT_EQ(prefs.rank(i, InstitutionId{0}), 1u);
}

class ValidateAssignmentTest : public ::testing::Test {
 protected:
  Market market = single_institution(
      CapacityVector{1, 1, 0, 1}, {{"g", "90"}, {"s", "80", "SC"}, {"b", "70", "OBC"}});
  CategoryId open{0};
  CategoryId sc = category(market, "SC");
  CategoryId obc = category(market, "OBC");
  ApplicantId g = applicant(market, "g");
  ApplicantId s = applicant(market, "s");
  ApplicantId b = applicant(market, "b");
};

TEST_F(ValidateAssignmentTest, AcceptsFeasibleAssignment) {
  auto a = Assignment::from_holders(3, {{{g, open}, {s, sc}, {b, obc}}});
  EXPECT_TRUE(validate_assignment(a, market).ok());
}

TEST_F(ValidateAssignmentTest, FlagsTagForWrongCategory) {
  auto a = Assignment::from_holders(3, {{{g, sc}}});
  auto report = validate_assignment(a, market);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().kind, Violation::Kind::kEligibility);
}

TEST_F(ValidateAssignmentTest, FlagsOverfullCategory) {
  // Open tags may use the de-reservable seat, but not the SC seat.
  auto a = Assignment::from_holders(3, {{{g, open}, {s, open}, {b, open}}});
  auto report = validate_assignment(a, market);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().kind, Violation::Kind::kCapacity);
}

TEST_F(ValidateAssignmentTest, DeReservedSeatsMayHoldOpenTags) {
  // One open seat plus one de-reservable seat: two open tags fit.
  auto a = Assignment::from_holders(3, {{{g, open}, {b, open}}});
  EXPECT_TRUE(validate_assignment(a, market).ok());
}

TEST_F(ValidateAssignmentTest, FlagsSidesThatDisagree) {
  std::vector<std::optional<Placement>> by_applicant(3);
  by_applicant[g.value()] = Placement{InstitutionId{0}, open};
  Assignment a(by_applicant, {{}});
  auto report = validate_assignment(a, market);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().kind, Violation::Kind::kBijectivity);
}

TEST_F(ValidateAssignmentTest, DimensionMismatchIsInputError) {
  EXPECT_THROW(validate_assignment(Assignment(2, 1), market), InputError);
}

TEST(MatchingTest, DropsTags) {
  auto a = Assignment::from_holders(2, {{{ApplicantId{1}, CategoryId{0}}, {ApplicantId{0}, CategoryId{3}}}});
  auto b = Assignment::from_holders(2, {{{ApplicantId{0}, CategoryId{0}}, {ApplicantId{1}, CategoryId{0}}}});
  EXPECT_NE(a, b);
  EXPECT_EQ(induce_matching(a), induce_matching(b));
}

}  // namespace
}  // namespace resmatch
