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

#include "skillgrade/criteria.hpp"

#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::criteria {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Scope {
  std::string heading;
  std::vector<std::string> body;
};

std::string trimmed_block(const std::vector<std::string>& lines) {
  std::size_t first = 0;
  std::size_t last = lines.size();
  while (first < last && text::trim(lines[first]).empty()) ++first;
  while (last > first && text::trim(lines[last - 1]).empty()) --last;
  std::vector<std::string> kept(lines.begin() + first, lines.begin() + last);
  return text::join(kept, "\n");
}

std::string rule_reference(const std::string& rule_id, IndicatorId id, RuleTarget target, RulePrimitive primitive,
                           const std::map<std::string, std::string>& params, double points, const std::string& pass,
                           const std::string& fail) {
  ordered_json doc;
  doc["rule_id"] = rule_id;
  doc["indicator_id"] = to_string(id);
  doc["target"] = to_string(target);
  doc["primitive"] = to_string(primitive);
  doc["params"] = ordered_json::object();
  for (const auto& [k, v] : params) doc["params"][k] = v;
  doc["pass_points"] = points;
  doc["fail_points"] = 0;
  doc["feedback_pass"] = pass;
  doc["feedback_fail"] = fail;
  return "REFERENCE RULE:\n" + doc.dump() + "\nEND REFERENCE";
}

std::string extract_json_object(std::string_view completion) {
  const auto open = completion.find('{');
  const auto close = completion.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) return {};
  return std::string(completion.substr(open, close - open + 1));
}

ReviewStatus status_from(const json& doc) {
  const auto s = parse_review_status(doc.value("status", std::string("pending")));
  if (!s) throw Error(ErrorCode::load_error, "invalid status");
  return *s;
}

std::optional<ReviewStamp> stamp_from(const json& doc) {
  if (!doc.contains("reviewer")) return std::nullopt;
  return ReviewStamp{doc.value("reviewer", ""), doc.value("reviewed_at", "")};
}

void put_stamp(ordered_json& doc, const std::optional<ReviewStamp>& stamp) {
  if (!stamp) return;
  doc["reviewer"] = stamp->reviewer;
  doc["reviewed_at"] = stamp->reviewed_at;
}

}  // namespace

std::string_view to_string(ReviewStatus s) {
  switch (s) {
    case ReviewStatus::pending: return "pending";
    case ReviewStatus::approved: return "approved";
    case ReviewStatus::rejected: return "rejected";
  }
  return "unknown";
}

std::optional<ReviewStatus> parse_review_status(std::string_view s) {
  if (s == "pending") return ReviewStatus::pending;
  if (s == "approved") return ReviewStatus::approved;
  if (s == "rejected") return ReviewStatus::rejected;
  return std::nullopt;
}

std::string_view to_string(ItemKind k) {
  switch (k) {
    case ItemKind::rule: return "rule";
    case ItemKind::criterion: return "criterion";
    case ItemKind::checklist: return "checklist";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

std::vector<RequirementUnit> decompose_requirements(std::string_view document, Granularity granularity) {
  std::vector<Scope> scopes(1);
  for (const auto& line : text::lines(document)) {
    const auto t = text::trim(line);
    if (!t.empty() && t.front() == '#') {
      auto heading = t;
      while (!heading.empty() && heading.front() == '#') heading.remove_prefix(1);
      scopes.push_back({std::string(text::trim(heading)), {}});
    } else {
      scopes.back().body.push_back(line);
    }
  }

  std::vector<RequirementUnit> units;
  auto emit = [&units](const std::string& heading, std::string body) {
    if (text::trim(body).empty()) body = heading;
    units.push_back({text::zero_pad(units.size() + 1, 3), heading, std::move(body)});
  };

  for (std::size_t s = 0; s < scopes.size(); ++s) {
    const auto& scope = scopes[s];
    const auto body = trimmed_block(scope.body);
    // The implicit scope before the first heading only counts when it has text.
    if (s == 0 && body.empty()) continue;
    if (granularity == Granularity::heading) {
      emit(scope.heading, body);
      continue;
    }
    std::vector<std::string> paragraph;
    bool any = false;
    auto flush = [&] {
      if (paragraph.empty()) return;
      emit(scope.heading, text::join(paragraph, "\n"));
      paragraph.clear();
      any = true;
    };
    for (const auto& line : scope.body) {
      if (text::trim(line).empty()) {
        flush();
      } else {
        paragraph.push_back(line);
      }
    }
    flush();
    if (!any) emit(scope.heading, "");
  }
  return units;
}

// ---------------------------------------------------------------------------

std::string default_guidance(IndicatorId id, const RuleSettings& settings, std::optional<double> max_points) {
  const double pts = max_points.value_or(indicator(id).max_points);
  using P = RulePrimitive;
  using T = RuleTarget;
  const std::string rule_id = "rule-" + std::string(to_string(id));
  switch (id) {
    case IndicatorId::STAN_1:
      return "Test case numbers follow the TC_<MODULE>_<NNN> convention.\n" +
             rule_reference(rule_id, id, T::test_case_field, P::pattern_match,
                            {{"field", "case_id"}, {"pattern", settings.case_id_pattern}}, pts,
                            "test case number follows the naming convention",
                            "test case number violates the naming convention");
    case IndicatorId::STAN_2:
      return "Module names must be one of the modules named in the requirements.\n" +
             rule_reference(rule_id, id, T::test_case_field, P::enum_membership,
                            {{"field", "module_name"}, {"allowed", settings.allowed_modules}}, pts,
                            "module name is one of the required modules", "module name is not a required module");
    case IndicatorId::STAN_3:
      return "Execution steps are numbered, one imperative action per step.\n" +
             rule_reference(rule_id, id, T::test_case_field, P::pattern_match,
                            {{"field", "steps"}, {"pattern", settings.step_pattern}}, pts,
                            "every step is numbered", "steps are missing or not numbered") +
             "\nJudge whether each execution step is a single imperative action with a concrete target and an "
             "observable outcome.\n"
             "- Deduct 3 points when a step merges several actions.\n"
             "- Deduct 3 points when a step omits the element or data it operates on.";
    case IndicatorId::COMP_1:
      return "Every test case is associated with at least one screenshot.\n" +
             rule_reference(rule_id, id, T::screenshot_link, P::cross_ref_exists, {}, pts,
                            "test case has an associated screenshot", "test case has no associated screenshot");
    case IndicatorId::COMP_2:
      return "All fields of a test case are filled out.\n" +
             rule_reference(rule_id, id, T::test_case_field, P::fields_nonempty,
                            {{"fields", "case_id|module_name|description|steps|input_data|expected_result|actual_result"}}, pts,
                            "all fields are filled out", "test case has empty fields");
    case IndicatorId::STAN_4:
      return "Scripts define setup and teardown and capture at least one screenshot.\n" +
             rule_reference(rule_id, id, T::script, P::required_structure,
                            {{"required_calls", settings.required_calls}, {"required_screenshot_call", "true"}}, pts,
                            "script has the required structure", "script lacks required structure");
    case IndicatorId::STAN_5:
      return "Scripts contain no syntax errors.\n" +
             rule_reference(rule_id, id, T::script, P::syntax_ok, {}, pts, "no syntax errors found", "syntax errors found");
    case IndicatorId::RUNN_1:
      return "Screenshot names embed a timestamp in the required format.\n" +
             rule_reference(rule_id, id, T::screenshot_name, P::timestamp_format, {{"format", settings.timestamp_format}}, pts,
                            "screenshot name carries a valid timestamp",
                            "screenshot name lacks a timestamp in the required format");
    case IndicatorId::SUFF_1:
      return "Judge whether the test cases cover valid, invalid and boundary inputs for every requirement unit.\n"
             "- Deduct 4 points for each requirement unit without a negative-input case.\n"
             "- Deduct 2 points when boundary values of numeric or date inputs are missing.";
    case IndicatorId::CONS_1:
      return "Judge whether the described operation steps follow the same sequence as the calls in the test script.\n"
             "- Deduct points for each step with no matching script call.";
    case IndicatorId::CONS_2:
      return "Judge whether the test case input data matches the parameterized rows in the test script.\n"
             "- Deduct points for each input value missing from the script's data rows.";
    case IndicatorId::READ_1:
      return "Judge whether each test case states its purpose, its steps and its expected result clearly.\n"
             "- Deduct 1 point for each test case whose expected result is vague.";
    case IndicatorId::READ_2:
      return "Judge whether all test cases use one consistent structure and wording style.\n"
             "- Deduct 1 point for each structural inconsistency.";
    case IndicatorId::READ_3:
      return "Judge whether the test cases give enough detail to be repeated exactly: preconditions, data and "
             "environment.\n"
             "- Deduct 1 point for each test case missing preconditions or concrete data.";
    case IndicatorId::STAN_6:
      return "Judge whether the script follows a consistent naming convention, indentation and modular structure.\n"
             "- Deduct 1 point for inconsistent naming.\n"
             "- Deduct 1 point for duplicated step code that should be a helper.";
    case IndicatorId::RUNN_2:
      return "Judge whether the recognized screenshot text shows the expected results described in the requirements.\n"
             "- Deduct points for each screenshot contradicting its expected result.";
    case IndicatorId::SUFF_2:
      return "Judge whether the screenshots cover the results produced by every parameterized input row.\n"
             "- Deduct 5 points for each input row without a result screenshot.";
  }
  return {};
}

std::string checklist_prompt(const RequirementUnit& unit) {
  std::ostringstream out;
  out << "TASK: CHECKLIST\n"
      << "Transform the test requirement unit below into verifiable checklist items for grading test work.\n"
      << "Write one line per item, exactly in the form:\n"
      << "ITEM: <what must be tested> | EVIDENCE: <what in a submission proves it>\n"
      << "Write nothing else.\n"
      << "HEADING: " << unit.heading << "\n"
      << "REQUIREMENT:\n"
      << unit.text << "\nEND REQUIREMENT\n";
  return out.str();
}

std::string rule_prompt(IndicatorId id, std::string_view guidance, double max_points) {
  std::ostringstream out;
  out << "TASK: RULE\n"
      << "INDICATOR: " << to_string(id) << " - " << indicator(id).description << "\n"
      << "MAX POINTS: " << text::format_number(max_points) << "\n"
      << "Write exactly one JSON rule document with the keys rule_id, indicator_id, target, primitive, params, "
         "pass_points, fail_points, feedback_pass, feedback_fail.\n"
      << "Allowed primitives: pattern_match, fields_nonempty, enum_membership, cross_ref_exists, timestamp_format, "
         "required_structure, syntax_ok.\n"
      << "Allowed targets: test_case_field, script, screenshot_link, screenshot_name.\n"
      << "pass_points must not exceed MAX POINTS.\n"
      << "GUIDANCE:\n"
      << guidance << "\nEND GUIDANCE\n";
  return out.str();
}

std::string rubric_prompt(IndicatorId id, std::string_view guidance) {
  std::ostringstream out;
  out << "TASK: RUBRIC\n"
      << "INDICATOR: " << to_string(id) << " - " << indicator(id).description << "\n"
      << "Refine this subjective indicator into a grading rubric.\n"
      << "Write one line `RUBRIC: <what a full-score answer shows>` and any number of lines "
         "`DEDUCT: <deduction rule>`.\n"
      << "GUIDANCE:\n"
      << guidance << "\nEND GUIDANCE\n";
  return out.str();
}

Checklist generate_checklist(const RequirementUnit& unit, llm::LlmBackend& backend, Diagnostics& diagnostics) {
  static const std::regex item_re(R"(^ITEM:\s*(.*?)\s*(?:\|\s*EVIDENCE:\s*(.*?))?\s*$)");
  const auto prompt = checklist_prompt(unit);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto response = backend.complete(prompt);
    Checklist list;
    list.id = "checklist-" + unit.unit_id;
    list.unit_id = unit.unit_id;
    for (const auto& raw : text::lines(response.text)) {
      const std::string line(text::trim(raw));
      if (line.empty()) continue;
      std::smatch m;
      if (!std::regex_match(line, m, item_re) || m[1].str().empty()) {
        diagnostics.push_back(list.id + ": dropped unparsable line: " + line);
        continue;
      }
      if (!m[2].matched) diagnostics.push_back(list.id + ": item without EVIDENCE segment: " + m[1].str());
      list.items.push_back({m[1].str(), m[2].matched ? m[2].str() : std::string()});
    }
    if (!list.items.empty()) return list;
    diagnostics.push_back(list.id + ": no ITEM lines on attempt " + std::to_string(attempt + 1));
  }
  throw Error(ErrorCode::generation_failed, "checklist-" + unit.unit_id + ": no ITEM lines");
}

RuleDefinition generate_rule_definition(IndicatorId id, std::string_view guidance, llm::LlmBackend& backend,
                                        const PointTable& max_points, Diagnostics& diagnostics) {
  if (!uses_rules(indicator(id).method)) throw Error(ErrorCode::generation_failed, "indicator_not_rule_checked");
  const auto max_it = max_points.find(id);
  const double max = max_it != max_points.end() ? max_it->second : indicator(id).max_points;
  const auto prompt = rule_prompt(id, guidance, max);
  std::string error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto response = backend.complete(prompt);
    const auto doc = extract_json_object(response.text);
    auto parsed = doc.empty() ? RuleParseResult{std::nullopt, "malformed_document"} : parse_rule_document(doc, max_points);
    if (parsed.rule && parsed.rule->indicator != id) parsed = {std::nullopt, "indicator_mismatch"};
    if (parsed.rule) {
      parsed.rule->status = ReviewStatus::pending;
      parsed.rule->review.reset();
      return *parsed.rule;
    }
    error = parsed.error;
    diagnostics.push_back("rule for " + std::string(to_string(id)) + " rejected on attempt " +
                          std::to_string(attempt + 1) + ": " + error);
  }
  throw Error(ErrorCode::generation_failed, error);
}

SubjectiveCriterion refine_subjective_criterion(IndicatorId id, std::string_view guidance, llm::LlmBackend& backend,
                                                Diagnostics& diagnostics) {
  if (!uses_llm(indicator(id).method)) throw Error(ErrorCode::generation_failed, "indicator_not_llm_checked");
  const auto prompt = rubric_prompt(id, guidance);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto response = backend.complete(prompt);
    SubjectiveCriterion crit;
    crit.id = "criterion-" + std::string(to_string(id));
    crit.indicator = id;
    for (const auto& raw : text::lines(response.text)) {
      const auto line = text::trim(raw);
      if (line.empty()) continue;
      if (text::starts_with(line, "RUBRIC:")) {
        const auto body = std::string(text::trim(line.substr(7)));
        crit.rubric = crit.rubric.empty() ? body : crit.rubric + "\n" + body;
      } else if (text::starts_with(line, "DEDUCT:")) {
        crit.deduction_rules.emplace_back(text::trim(line.substr(7)));
      } else {
        diagnostics.push_back(crit.id + ": ignored line: " + std::string(line));
      }
    }
    if (!crit.rubric.empty()) return crit;
    diagnostics.push_back(crit.id + ": no RUBRIC line on attempt " + std::to_string(attempt + 1));
  }
  throw Error(ErrorCode::generation_failed, "criterion-" + std::string(to_string(id)) + ": no RUBRIC line");
}

// ---------------------------------------------------------------------------

CriteriaStore::CriteriaStore(const CriteriaStore& other) {
  std::lock_guard lock(other.mu_);
  rules_ = other.rules_;
  criteria_ = other.criteria_;
  checklists_ = other.checklists_;
}

CriteriaStore& CriteriaStore::operator=(const CriteriaStore& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  rules_ = other.rules_;
  criteria_ = other.criteria_;
  checklists_ = other.checklists_;
  return *this;
}

namespace {

template <typename Map>
void put_pending(Map& map, const std::string& id, typename Map::mapped_type item) {
  if (auto it = map.find(id); it != map.end() && it->second.status != ReviewStatus::pending)
    throw Error(ErrorCode::invalid_transition, id + " is already " + std::string(to_string(it->second.status)));
  map.insert_or_assign(id, std::move(item));
}

}  // namespace

void CriteriaStore::put(RuleDefinition rule) {
  std::lock_guard lock(mu_);
  if (criteria_.count(rule.rule_id) || checklists_.count(rule.rule_id))
    throw Error(ErrorCode::content_error, "item id already used: " + rule.rule_id);
  const auto id = rule.rule_id;
  put_pending(rules_, id, std::move(rule));
}

void CriteriaStore::put(SubjectiveCriterion criterion) {
  std::lock_guard lock(mu_);
  if (rules_.count(criterion.id) || checklists_.count(criterion.id))
    throw Error(ErrorCode::content_error, "item id already used: " + criterion.id);
  const auto id = criterion.id;
  put_pending(criteria_, id, std::move(criterion));
}

void CriteriaStore::put(Checklist checklist) {
  std::lock_guard lock(mu_);
  if (rules_.count(checklist.id) || criteria_.count(checklist.id))
    throw Error(ErrorCode::content_error, "item id already used: " + checklist.id);
  const auto id = checklist.id;
  put_pending(checklists_, id, std::move(checklist));
}

ReviewStatus CriteriaStore::review(const std::string& item_id, Verdict verdict, const std::string& reviewer,
                                   const std::string& timestamp) {
  std::lock_guard lock(mu_);
  const auto next = verdict == Verdict::approve ? ReviewStatus::approved : ReviewStatus::rejected;
  auto apply = [&](auto& item) {
    if (item.status != ReviewStatus::pending)
      throw Error(ErrorCode::invalid_transition, item_id + " is " + std::string(to_string(item.status)));
    item.status = next;
    item.review = ReviewStamp{reviewer, timestamp};
    return next;
  };
  if (auto it = rules_.find(item_id); it != rules_.end()) return apply(it->second);
  if (auto it = criteria_.find(item_id); it != criteria_.end()) {
    if (next == ReviewStatus::approved && it->second.rubric.empty() && it->second.status == ReviewStatus::pending)
      throw Error(ErrorCode::invalid_transition, item_id + " has an empty rubric");
    return apply(it->second);
  }
  if (auto it = checklists_.find(item_id); it != checklists_.end()) return apply(it->second);
  throw Error(ErrorCode::not_found, item_id);
}

std::vector<RuleDefinition> CriteriaStore::rules(std::optional<ReviewStatus> status) const {
  std::lock_guard lock(mu_);
  std::vector<RuleDefinition> out;
  for (const auto& [id, r] : rules_)
    if (!status || r.status == *status) out.push_back(r);
  return out;
}

std::vector<SubjectiveCriterion> CriteriaStore::criteria(std::optional<ReviewStatus> status) const {
  std::lock_guard lock(mu_);
  std::vector<SubjectiveCriterion> out;
  for (const auto& [id, c] : criteria_)
    if (!status || c.status == *status) out.push_back(c);
  return out;
}

std::vector<Checklist> CriteriaStore::checklists(std::optional<ReviewStatus> status) const {
  std::lock_guard lock(mu_);
  std::vector<Checklist> out;
  for (const auto& [id, c] : checklists_)
    if (!status || c.status == *status) out.push_back(c);
  return out;
}

std::vector<ItemSummary> CriteriaStore::list() const {
  std::lock_guard lock(mu_);
  std::vector<ItemSummary> out;
  for (const auto& [id, r] : checklists_) out.push_back({id, ItemKind::checklist, r.status, r.unit_id});
  for (const auto& [id, r] : criteria_) out.push_back({id, ItemKind::criterion, r.status, std::string(to_string(r.indicator))});
  for (const auto& [id, r] : rules_) out.push_back({id, ItemKind::rule, r.status, std::string(to_string(r.indicator))});
  return out;
}

std::size_t CriteriaStore::count(ReviewStatus status) const {
  std::size_t n = 0;
  for (const auto& item : list())
    if (item.status == status) ++n;
  return n;
}

bool CriteriaStore::contains(const std::string& item_id) const {
  std::lock_guard lock(mu_);
  return rules_.count(item_id) || criteria_.count(item_id) || checklists_.count(item_id);
}

std::string CriteriaStore::item_document(const std::string& item_id) const {
  if (auto it = rules_.find(item_id); it != rules_.end()) return rule_to_document(it->second);
  if (auto it = criteria_.find(item_id); it != criteria_.end()) {
    const auto& c = it->second;
    ordered_json doc;
    doc["kind"] = "criterion";
    doc["id"] = c.id;
    doc["indicator_id"] = to_string(c.indicator);
    doc["rubric"] = c.rubric;
    doc["deduction_rules"] = c.deduction_rules;
    doc["status"] = to_string(c.status);
    put_stamp(doc, c.review);
    return doc.dump(2) + "\n";
  }
  if (auto it = checklists_.find(item_id); it != checklists_.end()) {
    const auto& c = it->second;
    ordered_json doc;
    doc["kind"] = "checklist";
    doc["id"] = c.id;
    doc["unit_id"] = c.unit_id;
    doc["items"] = ordered_json::array();
    for (const auto& item : c.items)
      doc["items"].push_back(ordered_json{{"text", item.text}, {"expected_evidence", item.expected_evidence}});
    doc["status"] = to_string(c.status);
    put_stamp(doc, c.review);
    return doc.dump(2) + "\n";
  }
  throw Error(ErrorCode::not_found, item_id);
}

void CriteriaStore::save_item(const std::filesystem::path& dir, const std::string& item_id) const {
  std::lock_guard lock(mu_);
  text::write_file_atomic(dir / (item_id + ".json"), item_document(item_id));
}

void CriteriaStore::save(const std::filesystem::path& dir) const {
  for (const auto& item : list()) save_item(dir, item.id);
}

CriteriaStore CriteriaStore::load(const std::filesystem::path& dir, const PointTable& max_points) {
  CriteriaStore store;
  if (!std::filesystem::exists(dir)) return store;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    const auto body = text::read_file(path);
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::load_error, path.filename().string() + ": " + e.what());
    }
    const auto kind = doc.value("kind", std::string("rule"));
    try {
      if (kind == "rule") {
        auto parsed = parse_rule_document(body, max_points);
        if (!parsed.rule) throw Error(ErrorCode::load_error, path.filename().string() + ": " + parsed.error);
        store.rules_.emplace(parsed.rule->rule_id, std::move(*parsed.rule));
      } else if (kind == "criterion") {
        SubjectiveCriterion c;
        c.id = doc.at("id").get<std::string>();
        const auto ind = parse_indicator(doc.at("indicator_id").get<std::string>());
        if (!ind) throw Error(ErrorCode::load_error, path.filename().string() + ": unknown_indicator");
        c.indicator = *ind;
        c.rubric = doc.value("rubric", "");
        c.deduction_rules = doc.value("deduction_rules", std::vector<std::string>{});
        c.status = status_from(doc);
        c.review = stamp_from(doc);
        store.criteria_.emplace(c.id, std::move(c));
      } else if (kind == "checklist") {
        Checklist c;
        c.id = doc.at("id").get<std::string>();
        c.unit_id = doc.value("unit_id", "");
        for (const auto& item : doc.at("items"))
          c.items.push_back({item.value("text", ""), item.value("expected_evidence", "")});
        c.status = status_from(doc);
        c.review = stamp_from(doc);
        store.checklists_.emplace(c.id, std::move(c));
      } else {
        throw Error(ErrorCode::load_error, path.filename().string() + ": unknown kind " + kind);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::load_error, path.filename().string() + ": " + e.what());
    }
  }
  return store;
}

}  // namespace skillgrade::criteria
