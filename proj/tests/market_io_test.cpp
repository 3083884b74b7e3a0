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

#include "resmatch/error.hpp"
#include "resmatch/market_io.hpp"
#include "resmatch/mechanism.hpp"
#include "support.hpp"

namespace resmatch {
namespace {

using testing::applicant;
using testing::fixture_path;
using testing::institution;
using testing::names_at;

using Names = std::vector<std::string>;

const char* const kFixtures[] = {"example1.market", "example2.market", "example3.market",
                                 "example4.market"};

InputError parse_error(const std::string& text) {
  try {
    parse_market(text, "test.market");
  } catch (const InputError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return InputError("none");
}

TEST(MarketFileTest, LoadsExampleFour) {
  const auto market = load_market(fixture_path("example4.market"));
  ASSERT_EQ(market.applicant_count(), 4u);
  ASSERT_EQ(market.institution_count(), 2u);
  EXPECT_EQ(market.institution(institution(market, "a")).capacities,
            (CapacityVector{1, 0, 0, 1}));
  const auto i3 = applicant(market, "i3");
  EXPECT_EQ(market.applicant(i3).true_category, market.scheme().find("OBC"));
  EXPECT_TRUE(market.applicant(i3).reported);
  EXPECT_EQ(market.preferences().list(i3).front(), institution(market, "b"));
}

TEST(MarketFileTest, SerializationRoundTrips) {
  for (const char* name : kFixtures) {
    const auto market = load_market(fixture_path(name));
    const auto text = serialize_market(market);
    EXPECT_EQ(serialize_market(parse_market(text)), text) << name;
  }
}

TEST(MarketFileTest, OptionalFieldsRoundTrip) {
  const std::string text =
      "resmatch-market 1\n"
      "categories open=gen reserved=A,B dereservable=B\n"
      "tie-break id\n"
      "institution x gen=1 A=1 B=1 cutoff=12.5\n"
      "applicant p score=20 category=A reported=no prefs=x\n"
      "applicant q score=20 category=B prefs=x\n"
      "applicant r score=1/3 category=GC prefs=-\n"
      "merit x q,p\n";
  const auto market = parse_market(text);
  EXPECT_EQ(serialize_market(market), text);
  EXPECT_EQ(market.tie_break(), TieBreak::kApplicantId);
  const auto p = applicant(market, "p");
  EXPECT_FALSE(market.applicant(p).reported);
  EXPECT_TRUE(market.preferences().list(applicant(market, "r")).empty());
  EXPECT_TRUE(market.merit(InstitutionId{0}).prefers(applicant(market, "q"), p));
}

TEST(MarketFileTest, CustomCategoriesFlowIntoOutcomeTags) {
  const auto market = parse_market(
      "resmatch-market 1\n"
      "categories open=gen reserved=B dereservable=B\n"
      "institution x gen=1 B=1\n"
      "applicant p score=20 category=GC prefs=x\n"
      "applicant q score=10 category=GC prefs=x\n");
  const auto run = da_bt(market);
  EXPECT_EQ(names_at(market, run.outcome, "x"), (Names{"p", "q"}));
  const auto text = serialize_assignment(market, make_assignment_file(MechanismKind::kDaBt, run));
  EXPECT_NE(text.find("institution x gen=2 B=0"), std::string::npos) << text;
}

TEST(MarketFileTest, CommentsAndBlankLinesAreIgnored) {
  const auto market = parse_market(
      "# leading comment\n\nresmatch-market 1   # trailing\n"
      "institution s o=1\n\n"
      "applicant i score=5 category=GC prefs=s  # note\n");
  EXPECT_EQ(market.applicant_count(), 1u);
}

TEST(MarketFileErrorTest, TieNamesBothApplicants) {
  const auto e = parse_error(
      "resmatch-market 1\ninstitution s o=1\n"
      "applicant p score=98 category=GC prefs=s\n"
      "applicant q score=98 category=GC prefs=s\n");
  const std::string what = e.what();
  EXPECT_NE(what.find("'p'"), std::string::npos) << what;
  EXPECT_NE(what.find("'q'"), std::string::npos) << what;
}

TEST(MarketFileErrorTest, DanglingPreferenceReportsLineAndField) {
  const auto e = parse_error(
      "resmatch-market 1\ninstitution s o=1\n"
      "applicant p score=98 category=GC prefs=s,z\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.field(), "prefs");
  EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
}

TEST(MarketFileErrorTest, PositionalErrors) {
  struct Case {
    std::string text;
    std::size_t line;
    std::string field;
  };
  const std::string head = "resmatch-market 1\n";
  const Case cases[] = {
      {head + "institution s o=-1\n", 2, "o"},
      {head + "institution s o=1 XX=1\n", 2, "XX"},
      {head + "institution s o=one\n", 2, "o"},
      {"resmatch-market 7\n", 1, "version"},
      {head + "institution s o=1\ninstitution s o=2\n", 3, "id"},
      {head + "institution s o=1\napplicant p score=1 category=GC\n"
              "applicant p score=2 category=GC\n", 4, "id"},
      {head + "applicant p category=GC\n", 2, "score"},
      {head + "applicant p score=1\n", 2, "category"},
      {head + "applicant p score=abc category=GC\n", 2, "score"},
      {head + "applicant p score=1 category=XY\n", 2, "category"},
      {head + "applicant p score=1 category=GC reported=yes\n", 2, "reported"},
      {head + "applicant p score=1 category=SC reported=maybe\n", 2, "reported"},
      {head + "institution s o=1\ncategories open=o reserved=- dereservable=-\n", 3, ""},
      {head + "seats s 4\n", 2, ""},
      {head + "institution s o=1\napplicant p score=1 category=GC prefs=s,s\n", 3, "prefs"},
      {head + "merit nowhere p\n", 2, "institution"},
      {head + "institution s o=1\nmerit s ghost\n", 3, "merit"},
      {head + "institution s o=1 o=2\n", 2, "o"},
  };
  for (const auto& c : cases) {
    const auto e = parse_error(c.text);
    EXPECT_EQ(e.line(), c.line) << c.text << e.what();
    EXPECT_EQ(e.field(), c.field) << c.text << e.what();
    EXPECT_EQ(e.source(), "test.market");
  }
}

TEST(MarketFileErrorTest, MissingHeader) {
  EXPECT_EQ(parse_error("").line(), 1u);
  EXPECT_EQ(parse_error("institution s o=1\n").line(), 1u);
}

TEST(MarketFileErrorTest, UnreadableFile) {
  EXPECT_THROW(load_market(fixture_path("does-not-exist.market")), InputError);
}

class AssignmentFileTest : public ::testing::TestWithParam<const char*> {};

TEST_P(AssignmentFileTest, RunSerializeLoadRunIsByteIdentical) {
  const auto market = load_market(fixture_path(GetParam()));
  for (MechanismKind kind :
       {MechanismKind::kDaIndia, MechanismKind::kMultiRunDa, MechanismKind::kDaBt}) {
    const auto run = run_mechanism(kind, market);
    const auto file = make_assignment_file(kind, run);
    const auto text = serialize_assignment(market, file);
    const auto parsed = parse_assignment(text, market);
    EXPECT_EQ(parsed.assignment, run.outcome);
    EXPECT_EQ(parsed.final_capacities, run.final_capacities);
    EXPECT_EQ(parsed.choice_iterations, run.choice_iterations);
    EXPECT_EQ(parsed.outer_iterations, run.last_iteration());
    EXPECT_EQ(parsed.da_steps, run.da_steps);
    EXPECT_EQ(serialize_assignment(market, parsed), text);
    EXPECT_TRUE(validate_assignment(parsed.assignment, market).ok());

    const auto reloaded = parse_market(serialize_market(market));
    const auto again = run_mechanism(kind, reloaded);
    EXPECT_EQ(serialize_assignment(reloaded, make_assignment_file(kind, again)), text);

    const auto traced = serialize_assignment(market, file, &run);
    EXPECT_NE(traced.find("trace step"), std::string::npos);
    EXPECT_EQ(serialize_assignment(market, parse_assignment(traced, market)), text);
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, AssignmentFileTest, ::testing::ValuesIn(kFixtures));

TEST(AssignmentFileErrorTest, DisagreeingSidesAreReportedByValidation) {
  const auto market = load_market(fixture_path("example4.market"));
  const auto file = parse_assignment(
      "resmatch-assignment 1\nmechanism da-bt\n"
      "institution a o=1 OBC=1 choice-iterations=1 holders=i1:o\n"
      "applicant i1 b o\n",
      market);
  EXPECT_FALSE(validate_assignment(file.assignment, market).ok());
}

TEST(AssignmentFileErrorTest, PositionalErrors) {
  const auto market = load_market(fixture_path("example4.market"));
  struct Case {
    std::string text;
    std::size_t line;
    std::string field;
  };
  const std::string head = "resmatch-assignment 1\nmechanism da-bt\n";
  const Case cases[] = {
      {head + "applicant ghost a o\n", 3, "id"},
      {head + "applicant i1 z o\n", 3, "institution"},
      {head + "applicant i1 a XX\n", 3, "category"},
      {head + "applicant i1 a\n", 3, ""},
      {head + "institution a o=1 holders=i1\n", 3, "holders"},
      {head + "institution a o=1 holders=ghost:o\n", 3, "holders"},
      {head + "institution q o=1\n", 3, "id"},
      {"resmatch-assignment 1\nmechanism greedy\n", 2, "mechanism"},
      {"resmatch-assignment 1\n", 0, "mechanism"},
      {"resmatch-market 1\n", 1, ""},
  };
  for (const auto& c : cases) {
    try {
      parse_assignment(c.text, market, "test.assignment");
      ADD_FAILURE() << "no error for:\n" << c.text;
    } catch (const InputError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text << e.what();
      EXPECT_EQ(e.field(), c.field) << c.text << e.what();
    }
  }
}

}  // namespace
}  // namespace resmatch
