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
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillgrade/indicators.hpp"
#include "skillgrade/records.hpp"

namespace skillgrade::scoring {

using Category = std::pair<std::string, std::vector<IndicatorId>>;
/// A rollup column summing whole categories, e.g. "Code Total".
using Group = std::pair<std::string, std::vector<std::string>>;

inline constexpr std::string_view kTotalColumn = "Total Score";

struct WeightConfig {
  PointTable indicator_max;
  std::vector<Category> categories;
  std::vector<Group> groups;
  double hybrid_alpha = 0.5;

  /// config_error unless every indicator sits in exactly one category,
  /// every group names known categories, maxima are >= 0 and alpha is in
  /// [0,1].
  void validate() const;
  double category_max(const std::string& category) const;
  double total_max() const;

  /// Categories first, then groups, then "Total Score", in the order the
  /// agreement table lists them: each group follows its last member.
  std::vector<std::string> score_columns() const;

  static WeightConfig defaults();
};

nlohmann::ordered_json to_json(const WeightConfig& w);
/// Missing keys keep their defaults. config_error on malformed input.
WeightConfig weights_from_json(const nlohmann::json& j);

struct AssessmentReport {
  std::string submission_id;
  std::size_t run_index = 0;
  std::vector<ResultRecord> records;
  std::vector<std::pair<IndicatorId, double>> indicator_scores;
  std::vector<std::pair<std::string, double>> category_scores;
  std::vector<std::pair<std::string, double>> group_scores;
  double total = 0;
  std::vector<std::string> diagnostics;

  /// Category, group or "Total Score" value; not_found otherwise.
  double column(const std::string& name) const;
  /// All score columns keyed by name.
  std::map<std::string, double> columns() const;
};

/// Per indicator: rule part = mean(score / max) over rule records, llm part
/// likewise over llm records, each scaled to the indicator maximum. Hybrid
/// indicators blend the parts with hybrid_alpha. merge_error on a record
/// whose indicator has no weight entry.
AssessmentReport merge_results(const std::vector<ResultRecord>& objective, const std::vector<ResultRecord>& subjective,
                               const WeightConfig& weights, std::string submission_id, std::size_t run_index);

/// Deterministic field order; round-trips through report_from_json, which
/// keeps the key order of the score maps.
nlohmann::ordered_json to_json(const AssessmentReport& r);
AssessmentReport report_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::ordered_json& j);

struct ColumnRange {
  double min = 0;
  double max = 0;
  double range = 0;
};

struct SubmissionStability {
  std::string submission_id;
  std::size_t runs = 0;
  std::map<std::string, ColumnRange> columns;
};

struct ColumnSummary {
  double max_range = 0;
  double avg_range = 0;
};

struct StabilityReport {
  std::vector<std::string> columns;
  std::vector<SubmissionStability> submissions;
  std::map<std::string, ColumnSummary> summary;
};

/// One row of column values per run.
using ScoreRow = std::map<std::string, double>;

/// `runs` maps submission id -> per-run rows. stability_error when a
/// submission has fewer than two runs or the column sets differ.
/// Column order follows `column_order`; unknown extra columns trail it.
StabilityReport stability_from_rows(const std::map<std::string, std::vector<ScoreRow>>& runs,
                                    const std::vector<std::string>& column_order = {});

/// Groups reports by submission id.
StabilityReport stability(const std::vector<AssessmentReport>& reports, const std::vector<std::string>& column_order = {});

nlohmann::ordered_json to_json(const StabilityReport& r);
/// Aligned text table with Max Range / Avg Range rows.
std::string format_table(const StabilityReport& r);

}  // namespace skillgrade::scoring
