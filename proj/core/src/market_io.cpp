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

#include "resmatch/market_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {
namespace {

constexpr std::string_view kMarketHeader = "resmatch-market";
constexpr std::string_view kAssignmentHeader = "resmatch-assignment";
constexpr std::string_view kVersion = "1";

struct Field {
  std::string key;
  std::string value;
};

// One non-blank line: keyword, bare words, then key=value fields.
struct Record {
  std::size_t line = 0;
  std::string keyword;
  std::vector<std::string> words;
  std::vector<Field> fields;
};

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(std::size_t line, std::string_view field,
                         const std::string& message) const {
    throw InputError(source_, line, std::string(field), message);
  }

  std::vector<Record> split(std::string_view text) const {
    std::vector<Record> records;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(pos, end - pos));
      pos = end + 1;
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream in(line);
      Record record;
      record.line = line_no;
      std::string token;
      while (in >> token) {
        if (record.keyword.empty()) {
          record.keyword = token;
        } else if (auto eq = token.find('='); eq != std::string::npos) {
          std::string key = token.substr(0, eq);
          if (key.empty()) fail(line_no, "", "empty field name in '" + token + "'");
          for (const auto& f : record.fields) {
            if (f.key == key) fail(line_no, key, "field given twice");
          }
          record.fields.push_back({key, token.substr(eq + 1)});
        } else {
          if (!record.fields.empty()) {
            fail(line_no, "", "bare word '" + token + "' after key=value fields");
          }
          record.words.push_back(token);
        }
      }
      if (!record.keyword.empty()) records.push_back(std::move(record));
      if (end == text.size()) break;
    }
    return records;
  }

  void expect_header(const std::vector<Record>& records, std::string_view header) const {
    if (records.empty() || records.front().keyword != header) {
      fail(records.empty() ? 1 : records.front().line, "",
           "expected header '" + std::string(header) + " " + std::string(kVersion) + "'");
    }
    const auto& first = records.front();
    if (first.words.size() != 1 || !first.fields.empty()) {
      fail(first.line, "", "header takes exactly one version number");
    }
    if (first.words[0] != kVersion) {
      fail(first.line, "version", "unsupported version '" + first.words[0] + "'");
    }
  }

  void expect_words(const Record& r, std::size_t count) const {
    if (r.words.size() != count) {
      fail(r.line, "", "'" + r.keyword + "' takes " + std::to_string(count) +
                           " positional value" + (count == 1 ? "" : "s"));
    }
  }

  int parse_count(const Record& r, const std::string& field,
                  const std::string& text) const {
    if (text.empty() || text.size() > 9) fail(r.line, field, "invalid count '" + text + "'");
    std::size_t k = 0;
    if (text[0] == '-') {
      if (text.size() == 1) fail(r.line, field, "invalid count '" + text + "'");
      k = 1;
    }
    for (; k < text.size(); ++k) {
      if (text[k] < '0' || text[k] > '9') fail(r.line, field, "invalid count '" + text + "'");
    }
    const int value = std::stoi(text);
    if (value < 0) fail(r.line, field, "negative value " + text);
    return value;
  }

  std::size_t parse_size(const Record& r, const std::string& field,
                         const std::string& text) const {
    return static_cast<std::size_t>(parse_count(r, field, text));
  }

  Score parse_score(const Record& r, const std::string& field,
                    const std::string& text) const {
    try {
      return Score::parse(text);
    } catch (const InputError& e) {
      fail(r.line, field, e.what());
    }
  }

 private:
  std::string source_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text == "-" || text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    out.push_back(text.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ",";
    out += items[k];
  }
  return out;
}

bool parse_yes_no(const Reader& reader, const Record& r, const std::string& field,
                  const std::string& text) {
  if (text == "yes") return true;
  if (text == "no") return false;
  reader.fail(r.line, field, "expected 'yes' or 'no', got '" + text + "'");
}

std::string capacity_fields(const CategoryScheme& scheme, const CapacityVector& q) {
  std::string out;
  for (std::size_t c = 0; c < scheme.size(); ++c) {
    out += " " + scheme.name(CategoryId{c}) + "=" + std::to_string(q[CategoryId{c}]);
  }
  return out;
}

std::string applicant_names(const Market& market, std::span<const ApplicantId> ids) {
  std::vector<std::string> names;
  for (ApplicantId i : ids) names.push_back(market.applicant(i).name);
  return join(names);
}

struct PendingApplicant {
  std::size_t line = 0;
  std::vector<std::string> prefs;
};

struct PendingMerit {
  std::size_t line = 0;
  std::vector<std::string> applicants;
};

}  // namespace

Market parse_market(std::string_view text, std::string_view source) {
  Reader reader(source);
  const auto records = reader.split(text);
  reader.expect_header(records, kMarketHeader);

  std::optional<CategoryScheme> scheme;
  TieBreak tie_break = TieBreak::kReject;
  bool tie_break_seen = false;
  std::vector<Institution> institutions;
  std::vector<Applicant> applicants;
  std::vector<PendingApplicant> pending;
  std::map<std::string, PendingMerit> merits;

  auto current_scheme = [&]() -> const CategoryScheme& {
    if (!scheme) scheme = CategoryScheme::india();
    return *scheme;
  };

  for (std::size_t k = 1; k < records.size(); ++k) {
    const Record& r = records[k];
    if (r.keyword == "categories") {
      if (scheme) reader.fail(r.line, "", "'categories' must come first and only once");
      reader.expect_words(r, 0);
      std::string open;
      std::vector<std::string> reserved;
      std::vector<std::string> dereservable;
      bool has_open = false;
      for (const auto& f : r.fields) {
        if (f.key == "open") {
          open = f.value;
          has_open = true;
        } else if (f.key == "reserved") {
          reserved = split_list(f.value);
        } else if (f.key == "dereservable") {
          dereservable = split_list(f.value);
        } else {
          reader.fail(r.line, f.key, "unknown field");
        }
      }
      if (!has_open) reader.fail(r.line, "open", "missing");
      try {
        scheme.emplace(open, reserved, dereservable);
      } catch (const InputError& e) {
        reader.fail(r.line, "", e.what());
      }
    } else if (r.keyword == "tie-break") {
      if (tie_break_seen) reader.fail(r.line, "", "'tie-break' given twice");
      tie_break_seen = true;
      reader.expect_words(r, 1);
      if (!r.fields.empty()) reader.fail(r.line, r.fields[0].key, "unknown field");
      if (r.words[0] == "id") {
        tie_break = TieBreak::kApplicantId;
      } else if (r.words[0] == "reject") {
        tie_break = TieBreak::kReject;
      } else {
        reader.fail(r.line, "tie-break", "expected 'id' or 'reject'");
      }
    } else if (r.keyword == "institution") {
      const auto& cats = current_scheme();
      reader.expect_words(r, 1);
      Institution inst{r.words[0], CapacityVector(cats.size()), std::nullopt, std::nullopt};
      for (const auto& f : r.fields) {
        if (f.key == "cutoff") {
          inst.cutoff = reader.parse_score(r, f.key, f.value);
        } else if (auto c = cats.find(f.key)) {
          inst.capacities.set(*c, reader.parse_count(r, f.key, f.value));
        } else {
          reader.fail(r.line, f.key, "unknown category");
        }
      }
      for (const auto& other : institutions) {
        if (other.name == inst.name) {
          reader.fail(r.line, "id", "duplicate institution '" + inst.name + "'");
        }
      }
      institutions.push_back(std::move(inst));
    } else if (r.keyword == "applicant") {
      const auto& cats = current_scheme();
      reader.expect_words(r, 1);
      Applicant app;
      app.name = r.words[0];
      PendingApplicant p{r.line, {}};
      bool has_score = false;
      bool has_category = false;
      std::optional<bool> reported;
      for (const auto& f : r.fields) {
        if (f.key == "score") {
          app.score = reader.parse_score(r, f.key, f.value);
          has_score = true;
        } else if (f.key == "category") {
          has_category = true;
          if (f.value != "GC") {
            auto c = cats.find(f.value);
            if (!c || !cats.is_reserved(*c)) {
              reader.fail(r.line, f.key, "'" + f.value + "' is not GC or a reserved category");
            }
            app.true_category = c;
          }
        } else if (f.key == "reported") {
          reported = parse_yes_no(reader, r, f.key, f.value);
        } else if (f.key == "prefs") {
          p.prefs = split_list(f.value);
        } else {
          reader.fail(r.line, f.key, "unknown field");
        }
      }
      if (!has_score) reader.fail(r.line, "score", "missing");
      if (!has_category) reader.fail(r.line, "category", "missing");
      if (app.true_category) {
        app.reported = reported.value_or(true);
      } else if (reported.value_or(false)) {
        reader.fail(r.line, "reported", "a GC applicant has no membership to report");
      }
      for (const auto& other : applicants) {
        if (other.name == app.name) {
          reader.fail(r.line, "id", "duplicate applicant '" + app.name + "'");
        }
      }
      applicants.push_back(std::move(app));
      pending.push_back(std::move(p));
    } else if (r.keyword == "merit") {
      reader.expect_words(r, 2);
      if (!r.fields.empty()) reader.fail(r.line, r.fields[0].key, "unknown field");
      if (merits.count(r.words[0])) {
        reader.fail(r.line, "institution", "merit order for '" + r.words[0] + "' given twice");
      }
      merits[r.words[0]] = {r.line, split_list(r.words[1])};
    } else {
      reader.fail(r.line, "", "unknown record '" + r.keyword + "'");
    }
  }

  auto institution_index = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t s = 0; s < institutions.size(); ++s) {
      if (institutions[s].name == name) return s;
    }
    return std::nullopt;
  };
  auto applicant_index = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < applicants.size(); ++i) {
      if (applicants[i].name == name) return i;
    }
    return std::nullopt;
  };

  std::vector<std::vector<InstitutionId>> lists;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    std::vector<InstitutionId> list;
    for (const auto& name : pending[i].prefs) {
      auto s = institution_index(name);
      if (!s) reader.fail(pending[i].line, "prefs", "unknown institution '" + name + "'");
      for (InstitutionId prior : list) {
        if (prior.value() == *s) {
          reader.fail(pending[i].line, "prefs", "institution '" + name + "' listed twice");
        }
      }
      list.emplace_back(*s);
    }
    lists.push_back(std::move(list));
  }
  for (const auto& [name, merit] : merits) {
    auto s = institution_index(name);
    if (!s) reader.fail(merit.line, "institution", "unknown institution '" + name + "'");
    std::vector<ApplicantId> ranking;
    for (const auto& applicant : merit.applicants) {
      auto i = applicant_index(applicant);
      if (!i) reader.fail(merit.line, "merit", "unknown applicant '" + applicant + "'");
      ranking.emplace_back(*i);
    }
    institutions[*s].merit_override = std::move(ranking);
  }

  try {
    return Market(current_scheme(), std::move(institutions), std::move(applicants),
                  PreferenceProfile(std::move(lists)), tie_break);
  } catch (const InputError& e) {
    reader.fail(0, "", e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "", "cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Market load_market(const std::string& path) {
  return parse_market(read_file(path), path);
}

std::string serialize_market(const Market& market) {
  const auto& scheme = market.scheme();
  std::ostringstream out;
  out << kMarketHeader << ' ' << kVersion << '\n';
  std::vector<std::string> reserved;
  std::vector<std::string> dereservable;
  for (CategoryId c : scheme.reserved()) reserved.push_back(scheme.name(c));
  for (CategoryId c : scheme.dereservable()) dereservable.push_back(scheme.name(c));
  out << "categories open=" << scheme.name(scheme.open()) << " reserved=" << join(reserved)
      << " dereservable=" << join(dereservable) << '\n';
  if (market.tie_break() == TieBreak::kApplicantId) out << "tie-break id\n";
  for (const auto& inst : market.institutions()) {
    out << "institution " << inst.name << capacity_fields(scheme, inst.capacities);
    if (inst.cutoff) out << " cutoff=" << inst.cutoff->text();
    out << '\n';
  }
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    const ApplicantId i{k};
    const auto& app = market.applicant(i);
    out << "applicant " << app.name << " score=" << app.score.text() << " category="
        << (app.true_category ? scheme.name(*app.true_category) : std::string("GC"));
    if (app.true_category && !app.reported) out << " reported=no";
    std::vector<std::string> prefs;
    for (InstitutionId s : market.preferences().list(i)) {
      prefs.push_back(market.institution(s).name);
    }
    out << " prefs=" << join(prefs) << '\n';
  }
  for (const auto& inst : market.institutions()) {
    if (!inst.merit_override) continue;
    out << "merit " << inst.name << ' ' << applicant_names(market, *inst.merit_override)
        << '\n';
  }
  return out.str();
}

AssignmentFile make_assignment_file(MechanismKind kind, const MechanismRun& run) {
  return {std::string(mechanism_name(kind)), run.last_iteration(), run.da_steps,
          run.final_capacities, run.choice_iterations, run.outcome};
}

std::string serialize_assignment(const Market& market, const AssignmentFile& file,
                                 const MechanismRun* trace) {
  const auto& scheme = market.scheme();
  std::ostringstream out;
  out << kAssignmentHeader << ' ' << kVersion << '\n';
  out << "mechanism " << file.mechanism << '\n';
  out << "outer-iterations " << file.outer_iterations << '\n';
  out << "da-steps " << file.da_steps << '\n';
  for (std::size_t k = 0; k < market.institution_count(); ++k) {
    const InstitutionId s{k};
    out << "institution " << market.institution(s).name
        << capacity_fields(scheme, file.final_capacities.at(k))
        << " choice-iterations=" << file.choice_iterations.at(k) << " holders=";
    std::vector<std::string> holders;
    for (const Holder& h : file.assignment.holders(s)) {
      holders.push_back(market.applicant(h.applicant).name + ":" + scheme.name(h.category));
    }
    out << join(holders) << '\n';
  }
  for (std::size_t k = 0; k < market.applicant_count(); ++k) {
    const ApplicantId i{k};
    out << "applicant " << market.applicant(i).name;
    if (const auto& p = file.assignment.placement(i)) {
      out << ' ' << market.institution(p->institution).name << ' '
          << scheme.name(p->category);
    } else {
      out << " -";
    }
    out << '\n';
  }
  if (trace) {
    for (std::size_t run = 0; run < trace->outer_iterations.size(); ++run) {
      const auto& profile = trace->outer_iterations[run];
      for (std::size_t k = 0; k < profile.size(); ++k) {
        out << "trace run " << run + 1 << " institution "
            << market.institution(InstitutionId{k}).name
            << capacity_fields(scheme, profile[k]) << '\n';
      }
    }
    for (const DaStep& step : trace->trace) {
      out << "trace step " << step.run << ' ' << step.step << " institution "
          << market.institution(step.institution).name
          << " proposers=" << applicant_names(market, step.proposers)
          << " held=" << applicant_names(market, step.held)
          << " rejected=" << applicant_names(market, step.rejected) << '\n';
    }
  }
  return out.str();
}

AssignmentFile parse_assignment(std::string_view text, const Market& market,
                                std::string_view source) {
  Reader reader(source);
  const auto records = reader.split(text);
  reader.expect_header(records, kAssignmentHeader);
  const auto& scheme = market.scheme();

  AssignmentFile file;
  file.final_capacities = market.initial_capacities();
  file.choice_iterations.assign(market.institution_count(), 0);
  std::vector<std::optional<Placement>> by_applicant(market.applicant_count());
  std::vector<std::vector<Holder>> by_institution(market.institution_count());
  std::vector<bool> applicant_seen(market.applicant_count(), false);
  std::vector<bool> institution_seen(market.institution_count(), false);
  bool mechanism_seen = false;

  auto category = [&](const Record& r, const std::string& field,
                      const std::string& name) {
    auto c = scheme.find(name);
    if (!c) reader.fail(r.line, field, "unknown category '" + name + "'");
    return *c;
  };

  for (std::size_t k = 1; k < records.size(); ++k) {
    const Record& r = records[k];
    if (r.keyword == "trace") continue;
    if (r.keyword == "mechanism") {
      reader.expect_words(r, 1);
      if (!parse_mechanism(r.words[0])) {
        reader.fail(r.line, "mechanism", "unknown mechanism '" + r.words[0] + "'");
      }
      file.mechanism = r.words[0];
      mechanism_seen = true;
    } else if (r.keyword == "outer-iterations") {
      reader.expect_words(r, 1);
      file.outer_iterations = reader.parse_size(r, r.keyword, r.words[0]);
    } else if (r.keyword == "da-steps") {
      reader.expect_words(r, 1);
      file.da_steps = reader.parse_size(r, r.keyword, r.words[0]);
    } else if (r.keyword == "institution") {
      reader.expect_words(r, 1);
      auto s = market.find_institution(r.words[0]);
      if (!s) reader.fail(r.line, "id", "unknown institution '" + r.words[0] + "'");
      if (institution_seen[s->value()]) {
        reader.fail(r.line, "id", "institution '" + r.words[0] + "' given twice");
      }
      institution_seen[s->value()] = true;
      CapacityVector q(scheme.size());
      for (const auto& f : r.fields) {
        if (f.key == "choice-iterations") {
          file.choice_iterations[s->value()] = reader.parse_size(r, f.key, f.value);
        } else if (f.key == "holders") {
          for (const auto& entry : split_list(f.value)) {
            auto colon = entry.find(':');
            if (colon == std::string::npos) {
              reader.fail(r.line, f.key, "expected applicant:category, got '" + entry + "'");
            }
            auto i = market.find_applicant(entry.substr(0, colon));
            if (!i) {
              reader.fail(r.line, f.key,
                          "unknown applicant '" + entry.substr(0, colon) + "'");
            }
            by_institution[s->value()].push_back(
                {*i, category(r, f.key, entry.substr(colon + 1))});
          }
        } else {
          q.set(category(r, f.key, f.key), reader.parse_count(r, f.key, f.value));
        }
      }
      file.final_capacities[s->value()] = q;
    } else if (r.keyword == "applicant") {
      if (r.words.size() != 2 && r.words.size() != 3) {
        reader.fail(r.line, "", "expected 'applicant ID INSTITUTION CATEGORY' or 'applicant ID -'");
      }
      auto i = market.find_applicant(r.words[0]);
      if (!i) reader.fail(r.line, "id", "unknown applicant '" + r.words[0] + "'");
      if (applicant_seen[i->value()]) {
        reader.fail(r.line, "id", "applicant '" + r.words[0] + "' given twice");
      }
      applicant_seen[i->value()] = true;
      if (r.words.size() == 2) {
        if (r.words[1] != "-") reader.fail(r.line, "", "missing category");
        continue;
      }
      auto s = market.find_institution(r.words[1]);
      if (!s) reader.fail(r.line, "institution", "unknown institution '" + r.words[1] + "'");
      by_applicant[i->value()] = Placement{*s, category(r, "category", r.words[2])};
    } else {
      reader.fail(r.line, "", "unknown record '" + r.keyword + "'");
    }
  }
  if (!mechanism_seen) reader.fail(0, "mechanism", "missing");
  file.assignment = Assignment(std::move(by_applicant), std::move(by_institution));
  return file;
}

AssignmentFile load_assignment(const std::string& path, const Market& market) {
  return parse_assignment(read_file(path), market, path);
}

}  // namespace resmatch
