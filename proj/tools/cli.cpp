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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"
#include "resmatch/audit.hpp"
#include "resmatch/error.hpp"
#include "resmatch/fuzz.hpp"
#include "resmatch/market_io.hpp"
#include "resmatch/mechanism.hpp"
#include "resmatch/oracle.hpp"

namespace resmatch::cli {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

MechanismKind mechanism_arg(const std::string& name) {
  auto kind = parse_mechanism(name);
  if (!kind) throw InputError("unknown mechanism '" + name + "'");
  return *kind;
}

Json name_or_null(const Market& market, std::optional<InstitutionId> s) {
  return s ? Json(market.institution(*s).name) : Json(nullptr);
}

Json assignment_json(const Market& market, const Assignment& assignment) {
  Json out = Json::object();
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    const ApplicantId i{k};
    const auto& p = assignment.placement(i);
    out[market.applicant(i).name] =
        p ? Json{{"institution", market.institution(p->institution).name},
                 {"category", market.scheme().name(p->category)}}
          : Json(nullptr);
  }
  return out;
}

Json witness_json(const Market& market, const Witness& w) {
  Json out = Json::object();
  if (w.applicant) out["applicant"] = market.applicant(*w.applicant).name;
  if (w.institution) out["institution"] = market.institution(*w.institution).name;
  if (w.category) out["category"] = market.scheme().name(*w.category);
  if (w.competitor) out["competitor"] = market.applicant(*w.competitor).name;
  if (!w.context.empty()) {
    Json context = Json::array();
    for (ApplicantId i : w.context) context.push_back(market.applicant(i).name);
    out["context"] = context;
  }
  if (!w.clause.empty()) out["clause"] = w.clause;
  out["text"] = w.text;
  return out;
}

Json manipulation_json(const Market& market, const ManipulationWitness& w) {
  Json prefs = Json::array();
  for (InstitutionId s : w.reported_preferences) prefs.push_back(market.institution(s).name);
  return Json{{"applicant", market.applicant(w.applicant).name},
              {"kind", deviation_name(w.kind)},
              {"reported_preferences", prefs},
              {"reported_membership", market.applicant(w.applicant).true_category
                                          ? Json(w.reported_membership)
                                          : Json(nullptr)},
              {"truthful_outcome", name_or_null(market, w.truthful_outcome)},
              {"deviant_outcome", name_or_null(market, w.deviant_outcome)}};
}

void emit(std::ostream& out, const Json& json) { out << json.dump(2) << '\n'; }

struct Options {
  std::string market;
  std::string assignment;
  std::string mechanism;
  std::string mechanisms;
  std::string axioms = "all";
  std::string applicant;
  std::string modes = "preferences,membership";
  std::string properties;
  std::string out_dir = ".";
  bool trace = false;
  std::uint64_t seed = 0;
  std::size_t markets = 1000;
  std::size_t max_applicants = 4;
  std::size_t max_institutions = 3;
  int max_seats = 3;
  std::size_t threads = 1;
};

int cmd_run(const Options& opt, std::ostream& out, std::ostream& err) {
  const Market market = load_market(opt.market);
  const MechanismKind kind = mechanism_arg(opt.mechanism);
  const MechanismRun run = run_mechanism(kind, market);
  out << serialize_assignment(market, make_assignment_file(kind, run),
                              opt.trace ? &run : nullptr);
  err << mechanism_name(kind) << ": " << run.last_iteration() << " outer iteration(s), "
      << run.da_steps << " DA step(s)\n";
  return kPass;
}

int cmd_audit(const Options& opt, std::ostream& out, std::ostream& err) {
  const Market market = load_market(opt.market);
  const AssignmentFile file = load_assignment(opt.assignment, market);
  std::vector<Axiom> axioms;
  if (opt.axioms == "all") {
    axioms = assignment_axioms();
  } else {
    const auto allowed = assignment_axioms();
    for (const auto& name : split_commas(opt.axioms)) {
      auto axiom = parse_axiom(name);
      if (!axiom || std::find(allowed.begin(), allowed.end(), *axiom) == allowed.end()) {
        throw InputError("unknown assignment axiom '" + name + "'");
      }
      axioms.push_back(*axiom);
    }
  }
  const auto reports = audit_assignment(file.assignment, market, axioms);
  Json json = Json::array();
  std::size_t failed = 0;
  for (const auto& report : reports) {
    Json witnesses = Json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(witness_json(market, w));
    json.push_back({{"axiom", axiom_name(report.axiom)},
                    {"passed", report.passed()},
                    {"witnesses", witnesses}});
    if (!report.passed()) {
      ++failed;
      err << axiom_name(report.axiom) << ": FAIL (" << report.witnesses.front().text << ")\n";
    }
  }
  emit(out, Json{{"passed", failed == 0}, {"reports", json}});
  err << reports.size() - failed << "/" << reports.size() << " axioms pass\n";
  return failed == 0 ? kPass : kFail;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
  const Market market = load_market(opt.market);
  const auto names = split_commas(opt.mechanisms);
  if (names.size() != 2) throw InputError("--mechanisms takes exactly two names");
  const MechanismKind first = mechanism_arg(names[0]);
  const MechanismKind second = mechanism_arg(names[1]);
  const auto a = run_mechanism(first, market).outcome;
  const auto b = run_mechanism(second, market).outcome;
  const ParetoVerdict verdict = pareto_compare(a, b, market);
  emit(out, Json{{"first", {{"mechanism", names[0]}, {"assignment", assignment_json(market, a)}}},
                 {"second", {{"mechanism", names[1]}, {"assignment", assignment_json(market, b)}}},
                 {"verdict", pareto_name(verdict)}});
  err << names[0] << " vs " << names[1] << ": " << pareto_name(verdict) << '\n';
  return verdict == ParetoVerdict::kDominates || verdict == ParetoVerdict::kEqual ? kPass
                                                                                  : kFail;
}

int cmd_manipulate(const Options& opt, std::ostream& out, std::ostream& err) {
  const Market market = load_market(opt.market);
  const MechanismKind kind = mechanism_arg(opt.mechanism);
  std::vector<ApplicantId> targets;
  if (opt.applicant.empty()) {
    targets = market.all_applicants();
  } else {
    auto i = market.find_applicant(opt.applicant);
    if (!i) throw InputError("unknown applicant '" + opt.applicant + "'");
    targets.push_back(*i);
  }
  bool preferences = false;
  bool membership = false;
  bool joint = false;
  for (const auto& mode : split_commas(opt.modes)) {
    if (mode == "preferences") {
      preferences = true;
    } else if (mode == "membership") {
      membership = true;
    } else if (mode == "joint") {
      joint = true;
    } else {
      throw InputError("unknown mode '" + mode + "'");
    }
  }

  Json witnesses = Json::array();
  bool truncated = false;
  for (ApplicantId i : targets) {
    const auto& app = market.applicant(i);
    std::vector<ManipulationWitness> found;
    if (preferences) {
      auto search = find_preference_manipulation(kind, market, i);
      truncated = truncated || search.truncated;
      if (search.witness) found.push_back(*search.witness);
    }
    if (membership && app.true_category && app.reported) {
      if (auto w = find_membership_manipulation(kind, market, i)) found.push_back(*w);
    }
    if (joint) {
      auto search = find_joint_manipulation(kind, market, i);
      truncated = truncated || search.truncated;
      if (search.witness) found.push_back(*search.witness);
    }
    for (const auto& w : found) {
      witnesses.push_back(manipulation_json(market, w));
      err << describe_manipulation(market, w) << '\n';
    }
  }
  Json json{{"mechanism", mechanism_name(kind)},
            {"witnesses", witnesses.empty() ? Json("none") : witnesses},
            {"truncated", truncated}};
  emit(out, json);
  if (witnesses.empty()) err << "none\n";
  return witnesses.empty() ? kPass : kFail;
}

std::string counterexample_text(const Counterexample& cx, const Market& market) {
  std::ostringstream text;
  text << serialize_market(market);
  text << "# counterexample\n";
  text << "# property: " << property_name(cx.property) << '\n';
  text << "# market-index: " << cx.market_index << '\n';
  text << "# market-seed: " << cx.market_seed << '\n';
  text << "# detail: " << cx.detail << '\n';
  if (cx.deviation) text << "# deviation: " << describe_manipulation(market, *cx.deviation) << '\n';
  return text.str();
}

int cmd_fuzz(const Options& opt, std::ostream& out, std::ostream& err) {
  FuzzConfig config;
  config.seed = opt.seed;
  config.markets = opt.markets;
  config.max_applicants = opt.max_applicants;
  config.max_institutions = opt.max_institutions;
  config.max_seats = opt.max_seats;
  config.threads = opt.threads;
  if (config.max_applicants == 0 || config.max_institutions == 0) {
    throw InputError("--max-applicants and --max-institutions must be positive");
  }
  if (opt.properties == "all") {
    config.properties = {Property::kParetoDominance, Property::kDaBtStrategyProof,
                         Property::kMultiRunStrategyProof, Property::kStability,
                         Property::kDaBtAxioms};
  } else if (!opt.properties.empty()) {
    config.properties.clear();
    for (const auto& name : split_commas(opt.properties)) {
      auto property = parse_property(name);
      if (!property) throw InputError("unknown property '" + name + "'");
      config.properties.push_back(*property);
    }
  }
  const FuzzSummary summary = fuzz(config);

  Json tallies = Json::array();
  for (const auto& t : summary.tallies) {
    tallies.push_back({{"property", property_name(t.property)},
                       {"passed", t.passed},
                       {"failed", t.failed},
                       {"truncated", t.truncated}});
  }
  Json counterexamples = Json::array();
  if (!summary.counterexamples.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
  }
  for (const auto& cx : summary.counterexamples) {
    const std::string name = "counterexample-" + std::string(property_name(cx.property)) +
                             "-" + std::to_string(cx.market_index) + ".market";
    const std::filesystem::path path = std::filesystem::path(opt.out_dir) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError(path.string(), 0, "", "cannot write counterexample");
    file << counterexample_text(cx, cx.market);
    counterexamples.push_back({{"property", property_name(cx.property)},
                               {"market_index", cx.market_index},
                               {"detail", cx.detail},
                               {"path", path.string()}});
    err << property_name(cx.property) << ": counterexample written to " << path.string()
        << '\n';
  }
  emit(out, Json{{"seed", config.seed},
                 {"markets", summary.markets},
                 {"properties", tallies},
                 {"counterexamples", counterexamples}});
  err << summary.markets << " markets, " << summary.counterexamples.size()
      << " failing propert" << (summary.counterexamples.size() == 1 ? "y" : "ies") << '\n';
  return summary.clean() ? kPass : kFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reserve-based seat allocation: run, audit and verify mechanisms",
               "resmatch"};
  app.require_subcommand(1);
  Options opt;
  const std::string mechanisms = "da-bt|multi-run-da|da-in";

  auto* run = app.add_subcommand("run", "Run a mechanism and print the assignment file");
  run->add_option("--market", opt.market, "Market file")->required();
  run->add_option("--mechanism", opt.mechanism, mechanisms)->required();
  run->add_flag("--trace", opt.trace, "Append per-iteration and per-step records");

  auto* audit = app.add_subcommand("audit", "Audit an assignment against axioms");
  audit->add_option("--market", opt.market, "Market file")->required();
  audit->add_option("--assignment", opt.assignment, "Assignment file")->required();
  audit->add_option("--axioms", opt.axioms, "Comma-separated axioms, or 'all'");

  auto* compare = app.add_subcommand("compare", "Pareto-compare two mechanisms");
  compare->add_option("--market", opt.market, "Market file")->required();
  compare->add_option("--mechanisms", opt.mechanisms, "M1,M2")->required();

  auto* manipulate = app.add_subcommand("manipulate", "Search for profitable deviations");
  manipulate->add_option("--market", opt.market, "Market file")->required();
  manipulate->add_option("--mechanism", opt.mechanism, mechanisms)->required();
  manipulate->add_option("--applicant", opt.applicant, "Only this applicant");
  manipulate->add_option("--modes", opt.modes, "preferences,membership,joint");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check properties on seeded random markets");
  fuzz_cmd->add_option("--seed", opt.seed, "Generator seed");
  fuzz_cmd->add_option("--markets", opt.markets, "Number of markets");
  fuzz_cmd->add_option("--properties", opt.properties, "Comma-separated properties or 'all'; default is every property expected to hold");
  fuzz_cmd->add_option("--max-applicants", opt.max_applicants, "Applicants per market");
  fuzz_cmd->add_option("--max-institutions", opt.max_institutions, "Institutions per market");
  fuzz_cmd->add_option("--max-seats", opt.max_seats, "Seats per institution, at least one of them open")
      ->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--threads", opt.threads, "Worker threads");
  fuzz_cmd->add_option("--out-dir", opt.out_dir, "Directory for counterexample files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (e.get_exit_code() != 0) err << app.help();
    return kInput;
  }

  try {
    if (run->parsed()) return cmd_run(opt, out, err);
    if (audit->parsed()) return cmd_audit(opt, out, err);
    if (compare->parsed()) return cmd_compare(opt, out, err);
    if (manipulate->parsed()) return cmd_manipulate(opt, out, err);
    if (fuzz_cmd->parsed()) return cmd_fuzz(opt, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}

}  // namespace resmatch::cli
