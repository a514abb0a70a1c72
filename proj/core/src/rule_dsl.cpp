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

#include <cmath>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "skillgrade/criteria.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::criteria {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kTargets[] = {"test_case_field", "script", "screenshot_link", "screenshot_name"};
constexpr std::string_view kPrimitives[] = {"pattern_match",    "fields_nonempty",    "enum_membership", "cross_ref_exists",
                                            "timestamp_format", "required_structure", "syntax_ok"};

const std::set<std::string>& document_keys() {
  static const std::set<std::string> keys = {"rule_id",       "indicator_id",  "target", "primitive",
                                             "params",        "pass_points",   "fail_points",
                                             "feedback_pass", "feedback_fail", "status",
                                             "reviewer",      "reviewed_at",   "kind"};
  return keys;
}

bool is_canonical_field(std::string_view f) {
  const auto& fields = ingest::canonical_fields();
  return std::find(fields.begin(), fields.end(), f) != fields.end();
}

std::string param_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::vector<std::string> parts;
    for (const auto& e : v) parts.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    return text::join(parts, "|");
  }
  return v.dump();
}

}  // namespace

std::string_view to_string(RuleTarget t) { return kTargets[static_cast<std::size_t>(t)]; }
std::string_view to_string(RulePrimitive p) { return kPrimitives[static_cast<std::size_t>(p)]; }

std::optional<RuleTarget> parse_rule_target(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kTargets); ++i)
    if (kTargets[i] == s) return static_cast<RuleTarget>(i);
  return std::nullopt;
}

std::optional<RulePrimitive> parse_rule_primitive(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kPrimitives); ++i)
    if (kPrimitives[i] == s) return static_cast<RulePrimitive>(i);
  return std::nullopt;
}

const std::vector<std::string>& required_params(RulePrimitive p) {
  static const std::map<RulePrimitive, std::vector<std::string>> table = {
      {RulePrimitive::pattern_match, {"pattern"}},
      {RulePrimitive::fields_nonempty, {"fields"}},
      {RulePrimitive::enum_membership, {"field", "allowed"}},
      {RulePrimitive::cross_ref_exists, {}},
      {RulePrimitive::timestamp_format, {"format"}},
      {RulePrimitive::required_structure, {"required_calls"}},
      {RulePrimitive::syntax_ok, {}},
  };
  return table.at(p);
}

const std::vector<RuleTarget>& allowed_targets(RulePrimitive p) {
  static const std::map<RulePrimitive, std::vector<RuleTarget>> table = {
      {RulePrimitive::pattern_match, {RuleTarget::test_case_field, RuleTarget::screenshot_name}},
      {RulePrimitive::fields_nonempty, {RuleTarget::test_case_field}},
      {RulePrimitive::enum_membership, {RuleTarget::test_case_field}},
      {RulePrimitive::cross_ref_exists, {RuleTarget::screenshot_link}},
      {RulePrimitive::timestamp_format, {RuleTarget::screenshot_name}},
      {RulePrimitive::required_structure, {RuleTarget::script}},
      {RulePrimitive::syntax_ok, {RuleTarget::script}},
  };
  return table.at(p);
}

bool is_valid_timestamp_format(std::string_view format) {
  bool has_field = false;
  for (std::size_t i = 0; i < format.size(); ++i) {
    if (format[i] != '%') continue;
    if (i + 1 >= format.size()) return false;
    const char spec = format[++i];
    if (std::string_view("YmdHMS").find(spec) == std::string_view::npos) return false;
    has_field = true;
  }
  return has_field;
}

std::string validate_rule(const RuleDefinition& rule, const PointTable& max_points) {
  if (rule.rule_id.empty()) return "missing_rule_id";
  if (!uses_rules(indicator(rule.indicator).method)) return "indicator_not_rule_checked";
  const auto& targets = allowed_targets(rule.primitive);
  if (std::find(targets.begin(), targets.end(), rule.target) == targets.end()) return "target_not_allowed";
  for (const auto& key : required_params(rule.primitive))
    if (!rule.params.count(key)) return "missing_param:" + key;
  if (rule.target == RuleTarget::test_case_field && rule.primitive == RulePrimitive::pattern_match &&
      !rule.params.count("field"))
    return "missing_param:field";
  if (auto it = rule.params.find("field"); it != rule.params.end() && !is_canonical_field(it->second))
    return "unknown_field:" + it->second;
  if (rule.primitive == RulePrimitive::fields_nonempty) {
    const auto fields = text::split_nonempty(rule.params.at("fields"), '|');
    if (fields.empty()) return "missing_param:fields";
    for (const auto& f : fields)
      if (!is_canonical_field(f)) return "unknown_field:" + f;
  }
  if (rule.primitive == RulePrimitive::pattern_match) {
    try {
      std::regex re(rule.params.at("pattern"));
    } catch (const std::regex_error&) {
      return "invalid_pattern";
    }
  }
  if (rule.primitive == RulePrimitive::timestamp_format && !is_valid_timestamp_format(rule.params.at("format")))
    return "invalid_format";
  if (auto it = rule.params.find("required_screenshot_call");
      it != rule.params.end() && it->second != "true" && it->second != "false")
    return "invalid_param:required_screenshot_call";

  if (!std::isfinite(rule.pass_points) || !std::isfinite(rule.fail_points) || rule.pass_points < 0 ||
      rule.fail_points < 0)
    return "invalid_points";
  const auto max_it = max_points.find(rule.indicator);
  const double max = max_it != max_points.end() ? max_it->second : indicator(rule.indicator).max_points;
  if (rule.pass_points > max) return "points_exceed_max";
  if (rule.fail_points > rule.pass_points) return "fail_exceeds_pass";
  return {};
}

RuleParseResult parse_rule_document(std::string_view document, const PointTable& max_points) {
  RuleParseResult result;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error&) {
    result.error = "malformed_document";
    return result;
  }
  if (!doc.is_object()) {
    result.error = "malformed_document";
    return result;
  }
  for (const auto& [key, value] : doc.items()) {
    if (!document_keys().count(key)) {
      result.error = "unknown_key:" + key;
      return result;
    }
  }

  // Primitive first: an unknown primitive is the most important rejection.
  if (!doc.contains("primitive") || !doc["primitive"].is_string()) {
    result.error = "missing_field:primitive";
    return result;
  }
  const auto primitive = parse_rule_primitive(doc["primitive"].get<std::string>());
  if (!primitive) {
    result.error = "unknown_primitive";
    return result;
  }
  for (const char* key : {"rule_id", "indicator_id", "target"}) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      result.error = std::string("missing_field:") + key;
      return result;
    }
  }
  if (!doc.contains("pass_points")) {
    result.error = "missing_field:pass_points";
    return result;
  }
  const auto indicator_id = parse_indicator(doc["indicator_id"].get<std::string>());
  if (!indicator_id) {
    result.error = "unknown_indicator";
    return result;
  }
  const auto target = parse_rule_target(doc["target"].get<std::string>());
  if (!target) {
    result.error = "unknown_target";
    return result;
  }

  RuleDefinition rule;
  rule.rule_id = doc["rule_id"].get<std::string>();
  rule.indicator = *indicator_id;
  rule.target = *target;
  rule.primitive = *primitive;
  if (!doc["pass_points"].is_number() || (doc.contains("fail_points") && !doc["fail_points"].is_number())) {
    result.error = "invalid_points";
    return result;
  }
  rule.pass_points = doc["pass_points"].get<double>();
  rule.fail_points = doc.value("fail_points", 0.0);
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) {
      result.error = "invalid_params";
      return result;
    }
    for (const auto& [k, v] : doc["params"].items()) rule.params[k] = param_value(v);
  }
  rule.feedback_pass = doc.value("feedback_pass", std::string("rule satisfied"));
  rule.feedback_fail = doc.value("feedback_fail", std::string("rule not satisfied"));
  if (doc.contains("status")) {
    const auto status = doc["status"].is_string() ? parse_review_status(doc["status"].get<std::string>()) : std::nullopt;
    if (!status) {
      result.error = "invalid_status";
      return result;
    }
    rule.status = *status;
  }
  if (doc.contains("reviewer")) rule.review = ReviewStamp{doc.value("reviewer", ""), doc.value("reviewed_at", "")};

  if (auto err = validate_rule(rule, max_points); !err.empty()) {
    result.error = std::move(err);
    return result;
  }
  result.rule = std::move(rule);
  return result;
}

std::string rule_to_document(const RuleDefinition& rule) {
  ordered_json doc;
  doc["kind"] = "rule";
  doc["rule_id"] = rule.rule_id;
  doc["indicator_id"] = to_string(rule.indicator);
  doc["target"] = to_string(rule.target);
  doc["primitive"] = to_string(rule.primitive);
  doc["params"] = ordered_json::object();
  for (const auto& [k, v] : rule.params) doc["params"][k] = v;
  doc["pass_points"] = rule.pass_points;
  doc["fail_points"] = rule.fail_points;
  doc["feedback_pass"] = rule.feedback_pass;
  doc["feedback_fail"] = rule.feedback_fail;
  doc["status"] = to_string(rule.status);
  if (rule.review) {
    doc["reviewer"] = rule.review->reviewer;
    doc["reviewed_at"] = rule.review->reviewed_at;
  }
  return doc.dump(2) + "\n";
}

}  // namespace skillgrade::criteria
