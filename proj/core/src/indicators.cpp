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

#include "skillgrade/indicators.hpp"

#include <stdexcept>

namespace skillgrade {

namespace {

using enum WorkProduct;
using enum Dimension;

std::vector<Indicator> build_registry() {
  const auto obj = Perspective::objective;
  const auto subj = Perspective::subjective;
  // Point shares sum to the category maxima Standardization 50, Adequacy 24,
  // Completeness 26, Basics 25, Timestamp 39, Coverage 25 (189 in total).
  return {
      {IndicatorId::STAN_1, test_case_document, standardization,
       "Is the naming of test case numbers compliant with standards?", obj, Method::rule, 10},
      {IndicatorId::STAN_2, test_case_document, standardization, "Is the module name correct?", obj, Method::rule, 10},
      {IndicatorId::STAN_3, test_case_document, standardization,
       "Are the descriptions of the test case execution steps standardized?", Perspective::hybrid, Method::rule_llm, 15},
      {IndicatorId::SUFF_1, test_case_document, sufficiency, "Does the test case cover all possible inputs?", subj,
       Method::llm, 24},
      {IndicatorId::COMP_1, test_case_document, completeness, "Is the test case associated with a screenshot?", obj,
       Method::rule, 13},
      {IndicatorId::COMP_2, test_case_document, completeness,
       "Are all fields of the test case completely filled out?", obj, Method::rule, 13},
      {IndicatorId::CONS_1, test_case_document, consistency,
       "Is the description of the operation steps consistent with the logic of the test script?", subj, Method::llm, 0},
      {IndicatorId::CONS_2, test_case_document, consistency,
       "Are the input data of the test case consistent with the parameterized data in the test script?", subj,
       Method::llm, 0},
      {IndicatorId::READ_1, test_case_document, readability,
       "Are the test cases clearly describing the purpose, steps, and expected results of the test?", subj, Method::llm,
       5},
      {IndicatorId::READ_2, test_case_document, readability, "Do the test cases follow a consistent structure and format?",
       subj, Method::llm, 5},
      {IndicatorId::READ_3, test_case_document, readability,
       "Do the test cases provide enough detail to ensure the repeatability and accuracy of the tests?", subj,
       Method::llm, 5},
      {IndicatorId::STAN_4, test_script_code, standardization,
       "Does the code include the necessary structure of the test script?", obj, Method::rule, 10},
      {IndicatorId::STAN_5, test_script_code, standardization, "Are there any syntax errors in the code?", obj,
       Method::rule, 10},
      {IndicatorId::STAN_6, test_script_code, standardization, "Is the coding style standardized?", subj, Method::llm, 5},
      {IndicatorId::RUNN_1, test_script_code, runnability,
       "Does the screenshot naming timestamp conform to the required format?", obj, Method::rule, 39},
      {IndicatorId::RUNN_2, test_script_code, runnability,
       "Does the content of the screenshot match the expected results described in the requirements?", subj,
       Method::llm, 0},
      {IndicatorId::SUFF_2, test_script_code, sufficiency,
       "Does the screenshots cover the results generated by all input data?", subj, Method::llm, 25},
  };
}

constexpr std::string_view kIds[] = {"STAN_1", "STAN_2", "STAN_3", "SUFF_1", "COMP_1", "COMP_2",
                                     "CONS_1", "CONS_2", "READ_1", "READ_2", "READ_3", "STAN_4",
                                     "STAN_5", "STAN_6", "RUNN_1", "RUNN_2", "SUFF_2"};

}  // namespace

const std::vector<Indicator>& indicator_registry() {
  static const std::vector<Indicator> registry = build_registry();
  return registry;
}

const Indicator& indicator(IndicatorId id) { return indicator_registry().at(static_cast<std::size_t>(id)); }

std::string_view to_string(IndicatorId id) { return kIds[static_cast<std::size_t>(id)]; }

std::optional<IndicatorId> parse_indicator(std::string_view s) {
  for (std::size_t i = 0; i < std::size(kIds); ++i)
    if (kIds[i] == s) return static_cast<IndicatorId>(i);
  return std::nullopt;
}

std::string_view to_string(WorkProduct w) {
  return w == WorkProduct::test_case_document ? "test_case_document" : "test_script_code";
}

std::string_view to_string(Dimension d) {
  switch (d) {
    case standardization: return "standardization";
    case sufficiency: return "sufficiency";
    case completeness: return "completeness";
    case consistency: return "consistency";
    case readability: return "readability";
    case runnability: return "runnability";
  }
  return "unknown";
}

std::string_view to_string(Perspective p) {
  switch (p) {
    case Perspective::objective: return "objective";
    case Perspective::subjective: return "subjective";
    case Perspective::hybrid: return "hybrid";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::rule: return "rule";
    case Method::llm: return "llm";
    case Method::rule_llm: return "rule_llm";
  }
  return "unknown";
}

bool uses_rules(Method m) { return m == Method::rule || m == Method::rule_llm; }
bool uses_llm(Method m) { return m == Method::llm || m == Method::rule_llm; }

PointTable default_point_table() {
  PointTable table;
  for (const auto& ind : indicator_registry()) table[ind.id] = ind.max_points;
  return table;
}

}  // namespace skillgrade
