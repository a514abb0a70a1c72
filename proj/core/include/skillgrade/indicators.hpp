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
#include <vector>

namespace skillgrade {

// Registry ids keep the short codes graders use in rubrics and reports.
enum class IndicatorId {
  STAN_1,
  STAN_2,
  STAN_3,
  SUFF_1,
  COMP_1,
  COMP_2,
  CONS_1,
  CONS_2,
  READ_1,
  READ_2,
  READ_3,
  STAN_4,
  STAN_5,
  STAN_6,
  RUNN_1,
  RUNN_2,
  SUFF_2,
};

enum class WorkProduct { test_case_document, test_script_code };
enum class Dimension { standardization, sufficiency, completeness, consistency, readability, runnability };
enum class Perspective { objective, subjective, hybrid };
enum class Method { rule, llm, rule_llm };

struct Indicator {
  IndicatorId id;
  WorkProduct work_product;
  Dimension dimension;
  std::string description;
  Perspective perspective;
  Method method;
  double max_points;
};

/// The 17 built-in indicators in table order, with default point shares.
const std::vector<Indicator>& indicator_registry();
const Indicator& indicator(IndicatorId id);

std::string_view to_string(IndicatorId id);
std::optional<IndicatorId> parse_indicator(std::string_view s);
std::string_view to_string(WorkProduct w);
std::string_view to_string(Dimension d);
std::string_view to_string(Perspective p);
std::string_view to_string(Method m);

bool uses_rules(Method m);
bool uses_llm(Method m);

using PointTable = std::map<IndicatorId, double>;
PointTable default_point_table();

}  // namespace skillgrade
