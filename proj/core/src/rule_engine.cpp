/*
 * Copyright 2026 The skillgrade Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "skillgrade/rule_engine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade {

std::string_view to_string(Origin o) { return o == Origin::rule ? "rule" : "llm"; }

std::string_view to_string(RecordFlag f) {
  switch (f) {
    case RecordFlag::clamped: return "clamped";
    case RecordFlag::retried: return "retried";
    case RecordFlag::dangling_reference: return "dangling_reference";
  }
  return "unknown";
}

bool ResultRecord::has_flag(RecordFlag f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

}  // namespace skillgrade

namespace skillgrade::rules {

namespace {

using criteria::RuleDefinition;
using criteria::RulePrimitive;
using criteria::RuleTarget;
using ingest::TestCaseTextUnit;

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && ((year % 4 == 0 && year % 100 != 0) || year % 400 == 0)) return 29;
  return kDays[month - 1];
}

std::optional<std::size_t> match_timestamp_at(std::string_view name, std::size_t start, std::string_view format) {
  std::size_t pos = start;
  int year = 2000, month = 1, day = 1;
  for (std::size_t i = 0; i < format.size(); ++i) {
    if (format[i] != '%') {
      if (pos >= name.size() || name[pos] != format[i]) return std::nullopt;
      ++pos;
      continue;
    }
    const char spec = format[++i];
    const int width = spec == 'Y' ? 4 : 2;
    if (pos + width > name.size()) return std::nullopt;
    int value = 0;
    for (int k = 0; k < width; ++k) {
      if (!is_digit(name[pos + k])) return std::nullopt;
      value = value * 10 + (name[pos + k] - '0');
    }
    pos += width;
    switch (spec) {
      case 'Y': year = value; break;
      case 'm':
        if (value < 1 || value > 12) return std::nullopt;
        month = value;
        break;
      case 'd':
        if (value < 1 || value > 31) return std::nullopt;
        day = value;
        break;
      case 'H':
        if (value > 23) return std::nullopt;
        break;
      case 'M':
      case 'S':
        if (value > 59) return std::nullopt;
        break;
      default: return std::nullopt;
    }
  }
  if (day > days_in_month(year, month)) return std::nullopt;
  return pos;
}

std::string scalar_field(const TestCaseTextUnit& u, const std::string& field) {
  if (field == "case_id") return u.case_id;
  if (field == "module_name") return u.module_name;
  if (field == "description") return u.description;
  if (field == "expected_result") return u.expected_result;
  if (field == "actual_result") return u.actual_result;
  return {};
}

const std::vector<std::string>* list_field(const TestCaseTextUnit& u, const std::string& field) {
  if (field == "steps") return &u.steps;
  if (field == "input_data") return &u.input_data;
  if (field == "screenshot_refs") return &u.screenshot_refs;
  return nullptr;
}

bool field_empty(const TestCaseTextUnit& u, const std::string& field) {
  if (const auto* list = list_field(u, field)) {
    return std::none_of(list->begin(), list->end(), [](const std::string& s) { return !text::trim(s).empty(); });
  }
  return text::trim(scalar_field(u, field)).empty();
}

struct Verdict {
  bool pass = false;
  std::string detail;
  bool dangling = false;
};

ResultRecord make_record(const RuleDefinition& def, std::string scope, const Verdict& v) {
  ResultRecord r;
  r.indicator = def.indicator;
  r.rule_id = def.rule_id;
  r.scope = std::move(scope);
  r.max_points = def.pass_points;
  r.score = v.pass ? def.pass_points : def.fail_points;
  std::string base = v.pass ? def.feedback_pass : def.feedback_fail;
  if (base.empty()) base = v.pass ? "pass" : "fail";
  r.feedback = v.detail.empty() ? base : base + ": " + v.detail;
  r.origin = Origin::rule;
  if (v.dangling) r.flags.push_back(RecordFlag::dangling_reference);
  return r;
}

Verdict check_values(const std::vector<std::string>& values, bool is_list,
                     const std::function<bool(const std::string&)>& ok) {
  Verdict v;
  if (is_list && values.empty()) {
    v.detail = "no entries";
    return v;
  }
  std::vector<std::string> bad;
  for (const auto& value : values)
    if (!ok(value)) bad.push_back(value.empty() ? "<empty>" : value);
  v.pass = bad.empty();
  if (!v.pass) v.detail = "non-conforming " + text::join(bad, ", ");
  return v;
}

}  // namespace

std::optional<std::string> find_timestamp(std::string_view name, std::string_view format) {
  for (std::size_t start = 0; start < name.size(); ++start) {
    if (start > 0 && is_digit(name[start - 1])) continue;
    const auto end = match_timestamp_at(name, start, format);
    if (!end) continue;
    if (*end < name.size() && is_digit(name[*end])) continue;
    return std::string(name.substr(start, *end - start));
  }
  return std::nullopt;
}

RuleEngine RuleEngine::load(std::vector<RuleDefinition> definitions, const PointTable& max_points) {
  std::set<std::string> ids;
  for (const auto& def : definitions) {
    if (def.status != criteria::ReviewStatus::approved)
      throw Error(ErrorCode::load_error, "status: " + def.rule_id + " is " + std::string(to_string(def.status)));
    if (!ids.insert(def.rule_id).second) throw Error(ErrorCode::load_error, "duplicate: " + def.rule_id);
    if (auto err = criteria::validate_rule(def, max_points); !err.empty())
      throw Error(ErrorCode::load_error, err + ": " + def.rule_id);
  }
  RuleEngine engine;
  engine.definitions_ = std::move(definitions);
  for (const auto& def : engine.definitions_) {
    CompiledRule c{&def, std::nullopt};
    if (def.primitive == RulePrimitive::pattern_match) c.pattern.emplace(def.params.at("pattern"));
    engine.rules_.push_back(std::move(c));
  }
  return engine;
}

RuleEngine RuleEngine::load_documents(const std::vector<std::string>& documents, const PointTable& max_points) {
  std::vector<RuleDefinition> defs;
  for (const auto& doc : documents) {
    auto parsed = criteria::parse_rule_document(doc, max_points);
    if (!parsed.rule) throw Error(ErrorCode::load_error, parsed.error);
    defs.push_back(std::move(*parsed.rule));
  }
  return load(std::move(defs), max_points);
}

std::vector<ResultRecord> RuleEngine::execute(const ingest::StructuredContent& content) const {
  std::vector<ResultRecord> out;
  for (const auto& rule : rules_) {
    const auto& def = *rule.def;
    switch (def.target) {
      case RuleTarget::test_case_field:
      case RuleTarget::screenshot_link: {
        if (content.test_cases.empty()) {
          out.push_back(make_record(def, "(none)", {false, "no test cases in submission"}));
          break;
        }
        for (const auto& unit : content.test_cases) {
          Verdict v;
          switch (def.primitive) {
            case RulePrimitive::pattern_match: {
              const auto& field = def.params.at("field");
              const auto* list = list_field(unit, field);
              const std::vector<std::string> values = list ? *list : std::vector<std::string>{scalar_field(unit, field)};
              v = check_values(values, list != nullptr,
                               [&](const std::string& s) { return std::regex_search(s, *rule.pattern); });
              break;
            }
            case RulePrimitive::enum_membership: {
              const auto allowed = text::split_nonempty(def.params.at("allowed"), '|');
              const auto& field = def.params.at("field");
              const auto* list = list_field(unit, field);
              const std::vector<std::string> values = list ? *list : std::vector<std::string>{scalar_field(unit, field)};
              v = check_values(values, list != nullptr, [&](const std::string& s) {
                return std::find(allowed.begin(), allowed.end(), text::trim(s)) != allowed.end();
              });
              break;
            }
            case RulePrimitive::fields_nonempty: {
              std::vector<std::string> missing;
              for (const auto& f : text::split_nonempty(def.params.at("fields"), '|'))
                if (field_empty(unit, f)) missing.push_back(f);
              v.pass = missing.empty();
              if (!v.pass) v.detail = "empty " + text::join(missing, ", ");
              break;
            }
            case RulePrimitive::cross_ref_exists: {
              std::size_t min_count = 1;
              if (auto it = def.params.find("min_count"); it != def.params.end())
                min_count = static_cast<std::size_t>(std::max(0, std::atoi(it->second.c_str())));
              const auto link = content.links.find(unit.case_id);
              const std::size_t n = link == content.links.end() ? 0 : link->second.size();
              v.pass = n >= min_count;
              if (auto d = content.dangling.find(unit.case_id); d != content.dangling.end()) {
                v.dangling = true;
                v.detail = "dangling " + text::join(d->second, ", ");
              } else if (!v.pass) {
                v.detail = "no linked screenshot";
              }
              break;
            }
            default: v.detail = "primitive not applicable to test cases"; break;
          }
          out.push_back(make_record(def, unit.case_id, v));
        }
        break;
      }
      case RuleTarget::script: {
        if (content.snippets.empty()) {
          out.push_back(make_record(def, "(none)", {false, "no test scripts in submission"}));
          break;
        }
        for (const auto& snip : content.snippets) {
          Verdict v;
          if (def.primitive == RulePrimitive::syntax_ok) {
            v.pass = snip.syntax_ok;
            if (!v.pass) {
              std::vector<std::string> where;
              for (const auto& f : snip.syntax_errors)
                where.push_back("line " + std::to_string(f.line) + " " + std::string(ingest::to_string(f.kind)));
              v.detail = text::join(where, ", ");
            }
          } else if (def.primitive == RulePrimitive::required_structure) {
            std::vector<std::string> missing;
            std::string calls = def.params.at("required_calls");
            std::replace(calls.begin(), calls.end(), '|', ',');
            for (const auto& name : text::split_nonempty(calls, ',')) {
              const bool as_function = std::any_of(snip.functions.begin(), snip.functions.end(),
                                                   [&](const auto& fn) { return fn.name == name; });
              const bool as_call = std::any_of(snip.step_calls.begin(), snip.step_calls.end(), [&](const auto& c) {
                return c == name || (c.size() > name.size() && c.ends_with("." + name));
              });
              if (!as_function && !as_call) missing.push_back(name);
            }
            const auto shot = def.params.find("required_screenshot_call");
            if (shot != def.params.end() && shot->second == "true" && snip.screenshot_calls.empty())
              missing.push_back("screenshot call");
            v.pass = missing.empty();
            if (!v.pass) v.detail = "missing " + text::join(missing, ", ");
          } else {
            v.detail = "primitive not applicable to scripts";
          }
          out.push_back(make_record(def, snip.source_id, v));
        }
        break;
      }
      case RuleTarget::screenshot_name: {
        if (content.image_texts.empty()) {
          out.push_back(make_record(def, "(none)", {false, "no screenshots in submission"}));
          break;
        }
        for (const auto& img : content.image_texts) {
          Verdict v;
          if (def.primitive == RulePrimitive::timestamp_format) {
            v.pass = find_timestamp(img.image_ref, def.params.at("format")).has_value();
            if (!v.pass) v.detail = img.image_ref;
          } else if (def.primitive == RulePrimitive::pattern_match) {
            v.pass = std::regex_search(img.image_ref, *rule.pattern);
            if (!v.pass) v.detail = img.image_ref;
          } else {
            v.detail = "primitive not applicable to screenshots";
          }
          out.push_back(make_record(def, img.image_ref, v));
        }
        break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ResultRecord& a, const ResultRecord& b) {
    if (a.indicator != b.indicator) return a.indicator < b.indicator;
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    return a.scope < b.scope;
  });
  return out;
}

}  // namespace skillgrade::rules
