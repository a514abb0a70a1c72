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

// Command-line front end for a skillgrade workspace.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skillgrade/pipeline.hpp"

namespace {

using skillgrade::app::Workspace;
namespace llm = skillgrade::llm;

std::string default_reviewer() {
  if (const char* user = std::getenv("USER"); user && *user) return user;
  return "reviewer";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch grading of software testing work: rules, LLM judging and agreement reports"};
  app.require_subcommand(1);
  std::string workspace = ".";
  app.add_option("-w,--workspace", workspace, "Workspace directory")->capture_default_str();

  const std::map<std::string, llm::BackendKind> backends{{"mock", llm::BackendKind::deterministic_mock},
                                                         {"http", llm::BackendKind::http_chat}};

  auto* init = app.add_subcommand("init", "Create a workspace skeleton");
  bool sample = false;
  init->add_flag("--sample", sample, "Also write five demo submissions, pending criteria and mock fixtures");

  auto* criteria = app.add_subcommand("criteria", "Generate, review and list assessment criteria");
  criteria->require_subcommand(1);
  auto* generate = criteria->add_subcommand("generate", "Generate checklists, rules and rubrics (pending review)");
  std::optional<llm::BackendKind> gen_backend;
  bool gen_record = false;
  generate->add_option("--backend", gen_backend, "mock or http")->transform(CLI::CheckedTransformer(backends));
  generate->add_flag("--record-fixtures", gen_record, "Answer with the synthesizing backend and record fixtures");

  auto* review = criteria->add_subcommand("review", "Approve or reject pending items");
  std::string verdict;
  std::vector<std::string> ids;
  bool all_pending = false;
  std::string reviewer = default_reviewer();
  review->add_option("verdict", verdict, "approve or reject")->required()->check(CLI::IsMember({"approve", "reject"}));
  review->add_option("ids", ids, "Item ids, e.g. rule-STAN_1");
  review->add_flag("--all", all_pending, "Apply the verdict to every pending item");
  review->add_option("--reviewer", reviewer, "Name stamped on the review")->capture_default_str();

  auto* list = criteria->add_subcommand("list", "List items and their review status");

  auto* assess = app.add_subcommand("assess", "Assess every submission");
  skillgrade::app::RunOptions options;
  std::optional<llm::BackendKind> run_backend;
  std::optional<std::uint64_t> seed;
  assess->add_option("--repeats", options.repeats, "Assessments per submission")->capture_default_str();
  assess->add_option("--parallel", options.parallelism, "Submissions assessed concurrently")->capture_default_str();
  assess->add_option("--backend", run_backend, "mock or http")->transform(CLI::CheckedTransformer(backends));
  assess->add_option("--seed", seed, "Seed for dispatch order");
  assess->add_flag("--record-fixtures", options.record_fixtures,
                   "Answer with the synthesizing backend and record fixtures");

  auto* evaluate = app.add_subcommand("evaluate", "Agreement between the latest reports and human scores");
  std::string human;
  evaluate->add_option("--human", human, "CSV of submission_id,category,score")->required();

  auto* report = app.add_subcommand("report", "Stability or efficiency report");
  report->require_subcommand(1);
  auto* stability = report->add_subcommand("stability", "Score ranges across repeated runs");
  auto* efficiency = report->add_subcommand("efficiency", "Time, cost and capacity against manual grading");
  std::string manual;
  efficiency->add_option("--manual", manual, "Manual grading durations, one per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors share the configuration exit code.
    return app.exit(e) == 0 ? skillgrade::app::kExitOk : skillgrade::app::kExitConfig;
  }

  const Workspace ws(workspace);
  auto& out = std::cout;
  auto& err = std::cerr;

  if (*init) return skillgrade::app::cmd_init(workspace, sample, out, err);
  if (*generate) return skillgrade::app::cmd_criteria_generate(ws, gen_backend, gen_record, out, err);
  if (*review) {
    const auto v = verdict == "approve" ? skillgrade::criteria::Verdict::approve : skillgrade::criteria::Verdict::reject;
    return skillgrade::app::cmd_criteria_review(ws, ids, all_pending, v, reviewer, out, err);
  }
  if (*list) return skillgrade::app::cmd_criteria_list(ws, out, err);
  if (*assess) {
    options.backend = run_backend;
    options.seed = seed;
    return skillgrade::app::cmd_assess(ws, options, out, err).exit_code;
  }
  if (*evaluate) return skillgrade::app::cmd_evaluate(ws, human, out, err);
  if (*stability) return skillgrade::app::cmd_report_stability(ws, out, err);
  if (*efficiency) return skillgrade::app::cmd_report_efficiency(ws, manual, out, err);
  return skillgrade::app::kExitConfig;
}
