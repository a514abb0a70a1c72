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
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skillgrade/config.hpp"
#include "skillgrade/criteria.hpp"
#include "skillgrade/llm_backend.hpp"
#include "skillgrade/llm_engine.hpp"
#include "skillgrade/metrics.hpp"
#include "skillgrade/rule_engine.hpp"
#include "skillgrade/scoring.hpp"
#include "skillgrade/workspace.hpp"

namespace skillgrade::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitConfig = 2;

struct RunOptions {
  std::size_t repeats = 1;
  std::size_t parallelism = 1;
  /// Overrides the configured backend kind.
  std::optional<llm::BackendKind> backend;
  /// Overrides the configured seed for dispatch order.
  std::optional<std::uint64_t> seed;
  /// Answer prompts with the synthesizing backend and record them as mock
  /// fixtures.
  bool record_fixtures = false;

  void validate() const;
};

/// Everything an assessment run shares read-only across workers.
struct Assessor {
  Config config;
  std::optional<rules::RuleEngine> engine;
  std::vector<criteria::SubjectiveCriterion> criteria;
  std::vector<criteria::Checklist> checklists;
  std::map<llm::TemplateKind, llm::PromptTemplate> templates;
  std::string requirement;
};

/// Enforces the review gate: gate_error when any criterion is pending or
/// nothing is approved. Rejected items are left out.
Assessor load_assessor(const Workspace& ws, const Config& config);

/// Builds an assessor from an in-memory store without the gate, for
/// priming fixtures.
Assessor make_assessor(const Workspace& ws, const Config& config, const criteria::CriteriaStore& store,
                       bool approved_only);

/// ingest -> rule engine -> one LLM call per template kind -> merge.
scoring::AssessmentReport assess_submission(const Assessor& assessor, llm::LlmBackend& backend,
                                            const ingest::TextRecognizer& recognizer,
                                            const std::filesystem::path& submission_dir,
                                            const std::string& submission_id, std::size_t run_index);

std::unique_ptr<ingest::TextRecognizer> make_recognizer(const Config& config);

struct AssessOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> reports;
  std::filesystem::path manifest;
  std::vector<std::string> failed;
};

AssessOutcome cmd_assess(const Workspace& ws, const RunOptions& options, std::ostream& out, std::ostream& err);

/// `sample` also writes five demo submissions, human scores, manual
/// timings, pending criteria and the mock fixtures they need.
int cmd_init(const std::filesystem::path& root, bool sample, std::ostream& out, std::ostream& err);

int cmd_criteria_generate(const Workspace& ws, std::optional<llm::BackendKind> backend, bool record_fixtures,
                          std::ostream& out, std::ostream& err);
/// `ids` may be empty when `all_pending` is set.
int cmd_criteria_review(const Workspace& ws, const std::vector<std::string>& ids, bool all_pending,
                        criteria::Verdict verdict, const std::string& reviewer, std::ostream& out, std::ostream& err);
int cmd_criteria_list(const Workspace& ws, std::ostream& out, std::ostream& err);

struct HumanScore {
  std::string submission_id;
  std::string category;
  double score = 0;
};

/// CSV with header `submission_id,category,score`. parse_error on bad rows.
std::vector<HumanScore> parse_human_scores(std::string_view csv);

/// Pairs the latest report of each submission with human scores per
/// category, in `column_order`. metric_error listing every missing pair.
std::vector<metrics::PairedScores> pair_scores(const std::vector<scoring::AssessmentReport>& reports,
                                               const std::vector<HumanScore>& human,
                                               const std::vector<std::string>& column_order);

int cmd_evaluate(const Workspace& ws, const std::filesystem::path& human_file, std::ostream& out, std::ostream& err);
int cmd_report_stability(const Workspace& ws, std::ostream& out, std::ostream& err);
/// `manual_file`: one duration per line, seconds or mm:ss(.ff).
int cmd_report_efficiency(const Workspace& ws, const std::filesystem::path& manual_file, std::ostream& out,
                          std::ostream& err);

/// Parses "1277.61" or "21:17.61" into seconds.
double parse_duration(std::string_view s);

/// Writes the demo requirement, submissions and evaluation inputs.
void write_sample_workspace(const Workspace& ws);

/// Records mock fixtures for every prompt that generation and assessment
/// of the current workspace will issue, treating pending items as approved.
void prime_fixtures(const Workspace& ws);

}  // namespace skillgrade::app
