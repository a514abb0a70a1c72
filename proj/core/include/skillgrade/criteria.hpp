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

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrade/indicators.hpp"
#include "skillgrade/llm_backend.hpp"

namespace skillgrade::criteria {

using Diagnostics = std::vector<std::string>;

enum class ReviewStatus { pending, approved, rejected };
enum class Verdict { approve, reject };

std::string_view to_string(ReviewStatus s);
std::optional<ReviewStatus> parse_review_status(std::string_view s);

struct ReviewStamp {
  std::string reviewer;
  std::string reviewed_at;
  bool operator==(const ReviewStamp&) const = default;
};

// ---------------------------------------------------------------------------
// Requirement units and checklists
// ---------------------------------------------------------------------------

struct RequirementUnit {
  std::string unit_id;
  std::string heading;
  std::string text;
  bool operator==(const RequirementUnit&) const = default;
};

enum class Granularity { heading, paragraph };

/// Splits a plain-text requirement document at `#` headings, and at blank
/// lines within a heading for paragraph granularity. Unit ids are
/// zero-padded ordinals ("001"). A heading with no body yields one unit
/// whose text is the heading itself.
std::vector<RequirementUnit> decompose_requirements(std::string_view document, Granularity granularity);

struct ChecklistItem {
  std::string text;
  std::string expected_evidence;
  bool operator==(const ChecklistItem&) const = default;
};

struct Checklist {
  std::string id;  // "checklist-<unit_id>"
  std::string unit_id;
  std::vector<ChecklistItem> items;
  ReviewStatus status = ReviewStatus::pending;
  std::optional<ReviewStamp> review;
  bool operator==(const Checklist&) const = default;
};

// ---------------------------------------------------------------------------
// Rule definitions (declarative DSL)
// ---------------------------------------------------------------------------

enum class RuleTarget { test_case_field, script, screenshot_link, screenshot_name };
enum class RulePrimitive {
  pattern_match,
  fields_nonempty,
  enum_membership,
  cross_ref_exists,
  timestamp_format,
  required_structure,
  syntax_ok,
};

std::string_view to_string(RuleTarget t);
std::string_view to_string(RulePrimitive p);
std::optional<RuleTarget> parse_rule_target(std::string_view s);
std::optional<RulePrimitive> parse_rule_primitive(std::string_view s);

struct RuleDefinition {
  std::string rule_id;
  IndicatorId indicator = IndicatorId::STAN_1;
  RuleTarget target = RuleTarget::test_case_field;
  RulePrimitive primitive = RulePrimitive::pattern_match;
  std::map<std::string, std::string> params;
  double pass_points = 0;
  double fail_points = 0;
  std::string feedback_pass;
  std::string feedback_fail;
  ReviewStatus status = ReviewStatus::pending;
  std::optional<ReviewStamp> review;
  bool operator==(const RuleDefinition&) const = default;
};

/// Parameter keys each primitive requires.
const std::vector<std::string>& required_params(RulePrimitive p);
/// Targets a primitive may be bound to.
const std::vector<RuleTarget>& allowed_targets(RulePrimitive p);

/// Format strings for timestamp_format use %Y %m %d %H %M %S plus literals.
bool is_valid_timestamp_format(std::string_view format);

/// Empty when valid, otherwise a short reason code such as
/// "unknown_primitive", "points_exceed_max" or "missing_param:pattern".
std::string validate_rule(const RuleDefinition& rule, const PointTable& max_points);

struct RuleParseResult {
  std::optional<RuleDefinition> rule;
  std::string error;
};

/// Parses and schema-validates one rule document (a JSON object whose keys
/// mirror RuleDefinition). Never throws on bad input.
RuleParseResult parse_rule_document(std::string_view document, const PointTable& max_points);
std::string rule_to_document(const RuleDefinition& rule);

// ---------------------------------------------------------------------------
// Subjective criteria
// ---------------------------------------------------------------------------

struct SubjectiveCriterion {
  std::string id;  // "criterion-<indicator>"
  IndicatorId indicator = IndicatorId::SUFF_1;
  std::string rubric;
  std::vector<std::string> deduction_rules;
  ReviewStatus status = ReviewStatus::pending;
  std::optional<ReviewStamp> review;
  bool operator==(const SubjectiveCriterion&) const = default;
};

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

/// Settings the default rule guidance is instantiated from.
struct RuleSettings {
  std::string case_id_pattern = R"(^TC_[A-Z]+_\d{3}$)";
  std::string allowed_modules = "login|search|booking|payment";
  std::string step_pattern = R"(^\d+[.)]\s*\S)";
  std::string required_calls = "setup,teardown";
  std::string timestamp_format = "%Y%m%d_%H%M%S";
};

/// Default generation guidance; rule-checked indicators embed a reference
/// rule document worth `max_points` (registry default when unset).
std::string default_guidance(IndicatorId id, const RuleSettings& settings = {},
                             std::optional<double> max_points = std::nullopt);

std::string checklist_prompt(const RequirementUnit& unit);
std::string rule_prompt(IndicatorId id, std::string_view guidance, double max_points);
std::string rubric_prompt(IndicatorId id, std::string_view guidance);

/// Parses `ITEM: <text> | EVIDENCE: <text>` lines. Retries once when no line
/// parses; generation_failed after that.
Checklist generate_checklist(const RequirementUnit& unit, llm::LlmBackend& backend, Diagnostics& diagnostics);

/// Requires a rule-checked indicator. The completion must hold one rule
/// document; a schema violation after one retry is generation_failed with
/// the validation reason as detail.
RuleDefinition generate_rule_definition(IndicatorId id, std::string_view guidance, llm::LlmBackend& backend,
                                        const PointTable& max_points, Diagnostics& diagnostics);

/// Extracts `RUBRIC:` and `DEDUCT:` lines; generation_failed without a
/// rubric after one retry.
SubjectiveCriterion refine_subjective_criterion(IndicatorId id, std::string_view guidance, llm::LlmBackend& backend,
                                                Diagnostics& diagnostics);

// ---------------------------------------------------------------------------
// Review store
// ---------------------------------------------------------------------------

enum class ItemKind { rule, criterion, checklist };
std::string_view to_string(ItemKind k);

struct ItemSummary {
  std::string id;
  ItemKind kind;
  ReviewStatus status;
  std::string subject;  // indicator id or requirement unit id
};

/// Holds generated criteria and serializes review transitions. Only
/// pending -> approved and pending -> rejected are permitted.
class CriteriaStore {
 public:
  CriteriaStore() = default;
  CriteriaStore(const CriteriaStore& other);
  CriteriaStore& operator=(const CriteriaStore& other);

  /// Inserts or replaces an item while it is still pending.
  void put(RuleDefinition rule);
  void put(SubjectiveCriterion criterion);
  void put(Checklist checklist);

  ReviewStatus review(const std::string& item_id, Verdict verdict, const std::string& reviewer,
                      const std::string& timestamp);

  std::vector<RuleDefinition> rules(std::optional<ReviewStatus> status = std::nullopt) const;
  std::vector<SubjectiveCriterion> criteria(std::optional<ReviewStatus> status = std::nullopt) const;
  std::vector<Checklist> checklists(std::optional<ReviewStatus> status = std::nullopt) const;
  std::vector<ItemSummary> list() const;
  std::size_t count(ReviewStatus status) const;
  bool contains(const std::string& item_id) const;

  /// One JSON file per item, `<dir>/<id>.json`, status embedded.
  void save(const std::filesystem::path& dir) const;
  void save_item(const std::filesystem::path& dir, const std::string& item_id) const;
  static CriteriaStore load(const std::filesystem::path& dir, const PointTable& max_points);

 private:
  std::string item_document(const std::string& item_id) const;

  mutable std::mutex mu_;
  std::map<std::string, RuleDefinition> rules_;
  std::map<std::string, SubjectiveCriterion> criteria_;
  std::map<std::string, Checklist> checklists_;
};

}  // namespace skillgrade::criteria
