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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrade/indicators.hpp"

namespace skillgrade {

enum class Origin { rule, llm };
enum class RecordFlag { clamped, retried, dangling_reference };

std::string_view to_string(Origin o);
std::string_view to_string(RecordFlag f);

/// One (indicator, score, feedback) triple from either engine.
/// Invariant: 0 <= score <= max_points.
struct ResultRecord {
  IndicatorId indicator = IndicatorId::STAN_1;
  std::optional<std::string> rule_id;
  std::string scope;  // case_id, script name, image ref, or "" for llm records
  double score = 0;
  double max_points = 0;
  std::string feedback;
  Origin origin = Origin::rule;
  std::vector<RecordFlag> flags;

  bool has_flag(RecordFlag f) const;
  bool operator==(const ResultRecord&) const = default;
};

}  // namespace skillgrade
