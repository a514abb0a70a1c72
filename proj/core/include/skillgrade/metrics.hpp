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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace skillgrade::metrics {

// ---------------------------------------------------------------------------
// Agreement
// ---------------------------------------------------------------------------

inline constexpr double kDefaultQwkStep = 0.5;

/// metric_error on length mismatch or empty input.
double mae(const std::vector<double>& a, const std::vector<double>& b);

/// Sample correlation. undefined_metric when either side is constant.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Pearson over tie-averaged ranks.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Tau-b with tie corrections, O(n log n). undefined_metric when either
/// side is entirely tied.
double kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b);

/// Quadratic weighted kappa over bins of width `step` (round half away
/// from zero). With a single occupied bin the result is 1.0 for identical
/// inputs and undefined_metric otherwise.
double qwk(const std::vector<double>& a, const std::vector<double>& b, double step = kDefaultQwkStep);

/// 1-based ranks; ties share the mean of their block.
std::vector<double> average_ranks(const std::vector<double>& v);

/// Bin index of x for a given step.
std::int64_t quantize(double x, double step);

struct PairedScores {
  std::string category;
  std::vector<double> system;
  std::vector<double> human;
};

/// Cells are empty where the metric is undefined for the data.
struct AgreementRow {
  std::string category;
  std::size_t n = 0;
  std::optional<double> kendall;
  std::optional<double> mae;
  std::optional<double> pearson;
  std::optional<double> qwk;
  std::optional<double> spearman;
};

struct AgreementReport {
  std::vector<AgreementRow> rows;
};

AgreementReport agreement_report(const std::vector<PairedScores>& pairs, double qwk_step = kDefaultQwkStep);

nlohmann::ordered_json to_json(const AgreementReport& r);
/// Kendall/Pearson/QWK/Spearman to three decimals, MAE to two; "n/a" for
/// undefined cells.
std::string format_table(const AgreementReport& r);

// ---------------------------------------------------------------------------
// Efficiency
// ---------------------------------------------------------------------------

struct Rates {
  double labor_per_hour = 20.0;
  double api_per_million_tokens = 1.67;
};

struct CapacityParams {
  double manual_hours_per_day = 8;
  double system_hours_per_day = 24;
  double manual_parallelism = 1;
  double system_parallelism = 1;
};

struct TokenUsage {
  std::uint64_t prompt_tokens = 0;
  std::uint64_t completion_tokens = 0;
};

struct EfficiencyInputs {
  std::vector<double> manual_seconds;
  std::vector<double> system_seconds;
  /// One entry per system-assessed submission.
  std::vector<TokenUsage> system_tokens;
  /// Human supervision time charged to each system-assessed submission.
  double system_labor_seconds = 0;
  Rates rates;
  CapacityParams capacity;
};

/// Per-submission figures for one method.
struct MethodSummary {
  double avg_time = 0;
  double std_dev_time = 0;
  double tokens_in = 0;
  double tokens_out = 0;
  double labor_cost = 0;
  double api_cost = 0;
};

struct MethodStats {
  double avg_time = 0;
  double std_dev_time = 0;
  double tokens_in = 0;
  double tokens_out = 0;
  double labor_cost = 0;
  double api_cost = 0;
  double total_cost = 0;
  double capacity = 0;  // submissions per day
};

/// Fractions, not percentages. Reductions are 1 - new/old; the capacity
/// gain is new/old - 1.
struct Improvements {
  double time = 0;
  double std_dev = 0;
  double labor_cost = 0;
  double total_cost = 0;
  double capacity = 0;
};

struct EfficiencyReport {
  MethodStats manual;
  MethodStats system;
  Improvements improvements;
};

/// Sample (n-1) standard deviation; 0 for a single value.
double sample_std_dev(const std::vector<double>& v);

/// Derives totals, capacities and improvements from per-method summaries.
/// undefined_metric when an average time is not positive.
EfficiencyReport efficiency_from_summaries(const MethodSummary& manual, const MethodSummary& system,
                                           const CapacityParams& capacity);

/// metric_error on empty duration lists or non-positive rates.
EfficiencyReport efficiency_report(const EfficiencyInputs& in);

nlohmann::ordered_json to_json(const EfficiencyReport& r);
std::string format_table(const EfficiencyReport& r);

}  // namespace skillgrade::metrics
