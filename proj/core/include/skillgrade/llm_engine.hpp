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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skillgrade/criteria.hpp"
#include "skillgrade/indicators.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/llm_backend.hpp"
#include "skillgrade/records.hpp"

namespace skillgrade::llm {

enum class TemplateKind { test_case_document, test_script_code, test_screenshot };

std::string_view to_string(TemplateKind k);
std::optional<TemplateKind> parse_template_kind(std::string_view s);
const std::vector<TemplateKind>& all_template_kinds();

/// LLM-scored indicators each template asks about, in registry order.
const std::vector<IndicatorId>& template_indicators(TemplateKind k);

/// The closed placeholder set: requirement, content, checklist, criteria,
/// output_format, work_product.
const std::vector<std::string>& placeholder_names();

/// Text written when no approved checklist item applies.
inline constexpr std::string_view kNoChecklistSentinel = "No checklist constraints apply.";

/// Four-section prompt template. Validated at load: every section present,
/// only known `{{placeholder}}` names, and `{{output_format}}` in the output
/// section. Violations raise render_error naming the offender.
class PromptTemplate {
 public:
  static PromptTemplate load(TemplateKind kind, std::map<std::string, std::string> sections);
  /// Parses `### Input`, `### Rules`, `### Criteria`, `### Output` blocks.
  static PromptTemplate parse(TemplateKind kind, std::string_view text);
  static PromptTemplate default_for(TemplateKind kind);

  TemplateKind kind() const { return kind_; }
  const std::string& section(const std::string& name) const { return sections_.at(name); }
  /// Inverse of parse().
  std::string to_text() const;

  /// Substitutes every placeholder; render_error(name) when a placeholder
  /// used by the template has no value.
  std::string render(const std::map<std::string, std::string>& values) const;

 private:
  TemplateKind kind_ = TemplateKind::test_case_document;
  std::map<std::string, std::string> sections_;
};

/// Section names in render order.
const std::vector<std::string>& section_names();

/// Serializes the slice of `content` a template kind looks at.
std::string serialize_content(TemplateKind kind, const ingest::StructuredContent& content);

/// `SCORE[..]`/`FEEDBACK[..]` instruction lines, one pair per indicator.
std::string output_format(const std::vector<std::pair<IndicatorId, double>>& expected);

/// Criteria must all be approved (render_error("status") otherwise); the
/// same goes for checklists. Indicators asked about are those of the
/// criteria, in registry order.
std::string render_prompt(const PromptTemplate& tmpl, std::string_view requirement, std::string_view content,
                          const std::vector<criteria::Checklist>& checklists,
                          const std::vector<criteria::SubjectiveCriterion>& criteria, const PointTable& max_points);

/// Exactly one record per expected indicator, or extraction_incomplete
/// naming every missing id. Out-of-range scores are clamped and flagged.
std::vector<ResultRecord> extract_results(std::string_view text,
                                          const std::vector<std::pair<IndicatorId, double>>& expected);

struct LlmAssessment {
  std::vector<ResultRecord> records;
  std::uint64_t calls = 0;
};

/// Renders, invokes and extracts. An incomplete or clamped extraction is
/// re-invoked once; the second attempt's clamped scores stand (flagged
/// clamped and retried), a second incomplete one propagates.
LlmAssessment assess(LlmBackend& backend, const PromptTemplate& tmpl, std::string_view requirement,
                     const ingest::StructuredContent& content, const std::vector<criteria::Checklist>& checklists,
                     const std::vector<criteria::SubjectiveCriterion>& criteria, const PointTable& max_points);

}  // namespace skillgrade::llm
