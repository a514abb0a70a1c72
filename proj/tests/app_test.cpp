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


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "skillgrade/error.hpp"
#include "skillgrade/pipeline.hpp"
#include "skillgrade/text.hpp"
#include "tempdir.hpp"

namespace {

namespace fs = std::filesystem;
using namespace skillgrade;
using namespace skillgrade::app;
using testing_support::TempDir;

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  if (!fs::exists(dir)) return 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) ++n;
  return n;
}

/// Sample workspace with every generated criterion approved.
struct SampleWorkspace {
  TempDir dir;
  Workspace ws{dir / "ws"};

  explicit SampleWorkspace(bool approve = true) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_init(ws.root(), true, out, err), kExitOk) << err.str();
    if (approve) {
      EXPECT_EQ(cmd_criteria_review(ws, {}, true, criteria::Verdict::approve, "tester", out, err), kExitOk)
          << err.str();
    }
  }
};

TEST(Config, JsonRoundTripAndValidate) {
  Config c;
  c.supervision_seconds = 12.5;
  c.qwk_step = 1.0;
  c.seed = 7;
  c.rates.labor_per_hour = 30;
  const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  EXPECT_NO_THROW(back.validate());

  EXPECT_EQ(to_json(config_from_json(nlohmann::json::object())).dump(), to_json(Config{}).dump());

  Config bad;
  bad.qwk_step = 0;
  try {
    bad.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config_error);
    EXPECT_EQ(e.detail(), "qwk_step");
  }
  bad = Config{};
  bad.languages.clear();
  EXPECT_THROW(bad.validate(), Error);
  bad = Config{};
  bad.capacity.system_parallelism = 0;
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), Error);
}

TEST(Workspace, CreateAndReports) {
  TempDir dir;
  const auto ws = Workspace::create(dir / "w");
  fs::create_directories(ws.submission_dir("s1"));
  EXPECT_TRUE(fs::exists(ws.config_path()));
  EXPECT_TRUE(fs::is_directory(ws.criteria_dir()));
  EXPECT_EQ(ws.submission_ids(), std::vector<std::string>{"s1"});
  EXPECT_EQ(ws.next_run_index("s1"), 1u);

  scoring::AssessmentReport r;
  r.submission_id = "s1";
  r.run_index = 1;
  r.total = 10;
  const auto path = ws.write_report(r);
  EXPECT_EQ(path, ws.report_path("s1", 1));
  EXPECT_EQ(ws.next_run_index("s1"), 2u);
  try {
    ws.write_report(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io_error);
  }
  r.run_index = 2;
  ws.write_report(r);
  const auto reports = ws.load_reports();
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[1].run_index, 2u);

  EXPECT_NE(ws.next_artifact_path("assess"), ws.next_artifact_path("stability"));
}

TEST(Workspace, LoadSubmissionDiagnostics) {
  TempDir dir;
  dir.write("s/testcases.csv", "case_id,title,steps,expected\nTC_1,Login,open,ok\n,broken,,\n");
  dir.write("s/scripts/notes.rb", "puts 1\n");
  dir.write("s/scripts/test_a.py", "def test_a():\n    capture(\"TC_1_home.png\")\n");
  dir.write("s/screenshots/TC_1_home.png", "png");
  dir.write("s/screenshots/TC_1_home.png.txt", "Home\n");
  dir.write("s/screenshots/orphan.png", "png");
  const ingest::SidecarRecognizer ocr;
  const auto content = load_submission(dir / "s", "s", Config{}, ocr);
  ASSERT_EQ(content.test_cases.size(), 1u);
  EXPECT_EQ(content.snippets.size(), 1u);
  EXPECT_EQ(content.image_texts.size(), 2u);
  EXPECT_EQ(content.links.at("TC_1"), std::vector<std::string>{"TC_1_home.png"});
  const auto has = [&](const std::string& needle) {
    for (const auto& d : content.diagnostics)
      if (d.find(needle) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(has("testcases.csv row 2"));
  EXPECT_TRUE(has("notes.rb: no language profile"));
  EXPECT_TRUE(has("orphan.png: no OCR text"));

  dir.write("t/scripts/x.py", "");
  try {
    load_submission(dir / "t", "t", Config{}, ocr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
  EXPECT_THROW(load_submission(dir / "missing", "missing", Config{}, ocr), Error);
}

TEST(Evaluation, HumanScoresAndPairing) {
  const auto human = parse_human_scores("submission_id,category,score\ns1,Basics,20\ns1,Total Score,80.5\n");
  ASSERT_EQ(human.size(), 2u);
  EXPECT_DOUBLE_EQ(human[1].score, 80.5);
  EXPECT_THROW(parse_human_scores(""), Error);
  EXPECT_THROW(parse_human_scores("a,b,c\n"), Error);
  EXPECT_THROW(parse_human_scores("submission_id,category,score\ns1,Basics,abc\n"), Error);

  scoring::AssessmentReport r1, r2;
  r1.submission_id = "s1";
  r1.run_index = 1;
  r1.category_scores = {{"Basics", 10}};
  r2 = r1;
  r2.run_index = 2;
  r2.category_scores = {{"Basics", 15}};
  const auto pairs = pair_scores({r1, r2}, {{"s1", "Basics", 20}}, {"Basics"});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].system, std::vector<double>{15});
  EXPECT_EQ(pairs[0].human, std::vector<double>{20});

  try {
    pair_scores({r2}, {{"s1", "Basics", 20}, {"s9", "Basics", 3}}, {"Basics"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::metric_error);
    EXPECT_NE(e.detail().find("s9"), std::string::npos);
  }
}

TEST(Evaluation, ParseDuration) {
  EXPECT_DOUBLE_EQ(parse_duration("1277.61"), 1277.61);
  EXPECT_NEAR(parse_duration("21:17.61"), 1277.61, 1e-9);
  EXPECT_DOUBLE_EQ(parse_duration(" 1:00:00 "), 3600);
  EXPECT_THROW(parse_duration(""), Error);
  EXPECT_THROW(parse_duration("-3"), Error);
  EXPECT_THROW(parse_duration("1:x"), Error);
}

TEST(Pipeline, ReviewGateBlocksAssessment) {
  SampleWorkspace sample(false);
  std::ostringstream out, err;
  const auto outcome = cmd_assess(sample.ws, RunOptions{}, out, err);
  EXPECT_EQ(outcome.exit_code, kExitConfig);
  EXPECT_TRUE(outcome.reports.empty());
  EXPECT_EQ(count_files(sample.ws.results_dir(), ".json"), 0u);
  EXPECT_NE(err.str().find("pending"), std::string::npos) << err.str();
}

TEST(Pipeline, AssessTwoSubmissions) {
  SampleWorkspace sample;
  const auto ids = sample.ws.submission_ids();
  ASSERT_EQ(ids.size(), 5u);
  for (std::size_t i = 2; i < ids.size(); ++i) fs::remove_all(sample.ws.submission_dir(ids[i]));
  std::ostringstream out, err;
  const auto outcome = cmd_assess(sample.ws, RunOptions{}, out, err);
  EXPECT_EQ(outcome.exit_code, kExitOk) << err.str();
  EXPECT_EQ(outcome.reports.size(), 2u);
  EXPECT_EQ(count_files(sample.ws.results_dir(), ".json"), 2u);
  EXPECT_EQ(sample.ws.artifacts("assess").size(), 1u);
  const auto manifest = nlohmann::json::parse(text::read_file(outcome.manifest));
  EXPECT_EQ(manifest["submissions"].size(), 2u);
  EXPECT_EQ(manifest["exit_code"], 0);

  // A single run per submission gives no spread to measure.
  EXPECT_EQ(cmd_report_stability(sample.ws, out, err), kExitConfig);
}

TEST(Pipeline, RepeatedRunsAreStable) {
  SampleWorkspace sample;
  RunOptions options;
  options.repeats = 5;
  options.parallelism = 2;
  std::ostringstream out, err;
  const auto outcome = cmd_assess(sample.ws, options, out, err);
  ASSERT_EQ(outcome.exit_code, kExitOk) << err.str();
  EXPECT_EQ(outcome.reports.size(), 25u);

  const auto report = scoring::stability(sample.ws.load_reports(), sample.ws.config().weights.score_columns());
  for (const auto& [column, summary] : report.summary) EXPECT_EQ(summary.max_range, 0.0) << column;
  EXPECT_EQ(cmd_report_stability(sample.ws, out, err), kExitOk);

  EXPECT_EQ(cmd_evaluate(sample.ws, sample.ws.root() / "human_scores.csv", out, err), kExitOk) << err.str();
  const auto agreement = nlohmann::json::parse(text::read_file(sample.ws.artifacts("agreement").back()));
  EXPECT_EQ(agreement["rows"].size(), 9u);

  EXPECT_EQ(cmd_report_efficiency(sample.ws, sample.ws.root() / "manual_times.txt", out, err), kExitOk) << err.str();
  EXPECT_EQ(cmd_evaluate(sample.ws, sample.ws.root() / "absent.csv", out, err), kExitConfig);
}

TEST(Pipeline, ReviewOfDecidedItemFails) {
  SampleWorkspace sample;
  const auto store = criteria::CriteriaStore::load(sample.ws.criteria_dir(), sample.ws.config().weights.indicator_max);
  const auto items = store.list();
  ASSERT_FALSE(items.empty());
  std::ostringstream out, err;
  EXPECT_EQ(cmd_criteria_review(sample.ws, {items.front().id}, false, criteria::Verdict::reject, "tester", out, err),
            kExitConfig);
  EXPECT_NE(err.str().find("invalid_transition"), std::string::npos) << err.str();
}

TEST(Pipeline, RunOptionsValidate) {
  RunOptions o;
  EXPECT_NO_THROW(o.validate());
  o.repeats = 0;
  EXPECT_THROW(o.validate(), Error);
  o.repeats = 1;
  o.parallelism = 0;
  EXPECT_THROW(o.validate(), Error);
}

}  // namespace
