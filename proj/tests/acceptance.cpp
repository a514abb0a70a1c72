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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"
#include "skillgrade/error.hpp"
#include "skillgrade/indicators.hpp"
#include "skillgrade/llm_engine.hpp"
#include "skillgrade/metrics.hpp"
#include "skillgrade/pipeline.hpp"
#include "skillgrade/rule_engine.hpp"
#include "skillgrade/scoring.hpp"
#include "skillgrade/text.hpp"
#include "tempdir.hpp"

namespace {

namespace fs = std::filesystem;
using namespace skillgrade;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kOracleTol = 1e-9;
constexpr double kOracleSeconds = 5.0;
constexpr double kTable4RelTol = 0.01;
constexpr double kTable3Tol = 1e-9;
constexpr double kDeterminismSeconds = 30.0;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<double> guarded_metric(const std::function<double()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::undefined_metric) throw;
    return std::nullopt;
  }
}

bool same(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::fabs(*a - *b) <= tol;
}

Verdict metric_oracles() {
  Verdict v;
  gen::Rng rng(20240601);
  const auto start = Clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const auto [a, b] = gen::paired_vectors(rng);
    const auto tag = "trial " + std::to_string(trial) + " ";
    v.require(same(metrics::mae(a, b), oracle::mae(a, b), kOracleTol), tag + "mae");
    v.require(same(guarded_metric([&] { return metrics::pearson(a, b); }), oracle::pearson(a, b), kOracleTol),
              tag + "pearson");
    v.require(same(guarded_metric([&] { return metrics::spearman(a, b); }), oracle::spearman(a, b), kOracleTol),
              tag + "spearman");
    v.require(
        same(guarded_metric([&] { return metrics::kendall_tau_b(a, b); }), oracle::kendall_tau_b(a, b), kOracleTol),
        tag + "kendall");
    v.require(same(guarded_metric([&] { return metrics::qwk(a, b, 0.5); }), oracle::qwk(a, b, 0.5), kOracleTol),
              tag + "qwk");
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed < kOracleSeconds, "runtime " + fmt(elapsed) + " s");
  v.notes.push_back("100 vectors in " + fmt(elapsed, 3) + " s");
  return v;
}

bool within_rel(double got, double want, double tol) { return std::fabs(got - want) <= tol * std::fabs(want); }

Verdict table4() {
  Verdict v;
  metrics::MethodSummary manual, system;
  manual.avg_time = 1277.61;
  manual.std_dev_time = 109.24;
  manual.labor_cost = 7.10;
  system.avg_time = 245.71;
  system.std_dev_time = 29.83;
  system.tokens_in = 713.88;
  system.tokens_out = 240.53;
  system.labor_cost = 0.17;
  system.api_cost = 0.016;
  metrics::CapacityParams cap;
  cap.manual_hours_per_day = 8;
  cap.system_hours_per_day = 24;
  const auto r = metrics::efficiency_from_summaries(manual, system, cap);
  const auto check = [&](const char* name, double got, double want) {
    v.require(within_rel(got, want, kTable4RelTol), std::string(name) + " " + fmt(got) + " vs " + fmt(want));
    v.notes.push_back(std::string(name) + "=" + fmt(got, 2));
  };
  check("total_cost_system", r.system.total_cost, 0.186);
  check("time_improvement_pct", r.improvements.time * 100, 80.77);
  check("cost_reduction_pct", r.improvements.total_cost * 100, 97.38);
  check("capacity_manual", r.manual.capacity, 22.56);
  check("capacity_system", r.system.capacity, 351.84);
  return v;
}

Verdict table3() {
  Verdict v;
  const auto report = scoring::stability_from_rows(reference::bound_runs());
  const auto check = [&](const std::string& column, double got, double want, const char* which) {
    v.require(std::fabs(got - want) <= kTable3Tol, column + " " + which + " " + fmt(got, 2) + " vs " + fmt(want, 1));
  };
  const auto& s = report.summary;
  check("Test Case Total", s.at("Test Case Total").max_range, 7.0, "max_range");
  check("Test Case Total", s.at("Test Case Total").avg_range, 4.2, "avg_range");
  check("Total Score", s.at("Total Score").max_range, 7.0, "max_range");
  check("Total Score", s.at("Total Score").avg_range, 4.8, "avg_range");
  check("Basics", s.at("Basics").avg_range, 1.5, "avg_range");
  check("Standardization", s.at("Standardization").avg_range, 2.4, "avg_range");
  return v;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = text::read_file(e.path());
  return files;
}

struct Workspaces {
  testing_support::TempDir dir;
  app::Workspace serial{dir / "serial"};
  app::Workspace parallel{dir / "parallel"};
  std::string setup_error;
};

Verdict review_gate(Workspaces& w) {
  Verdict v;
  std::ostringstream out, err;
  const int init = app::cmd_init(w.serial.root(), true, out, err);
  v.require(init == app::kExitOk, "init exit " + std::to_string(init) + ": " + err.str());
  if (!v.pass) return v;
  std::ostringstream aout, aerr;
  const auto outcome = app::cmd_assess(w.serial, app::RunOptions{}, aout, aerr);
  v.require(outcome.exit_code == app::kExitConfig, "exit " + std::to_string(outcome.exit_code));
  v.require(aerr.str().find("gate_error") != std::string::npos, "no gate_error reported");
  v.require(outcome.reports.empty(), "reports returned");
  v.require(!fs::exists(w.serial.results_dir()) || fs::is_empty(w.serial.results_dir()), "results written");
  return v;
}

Verdict determinism(Workspaces& w) {
  Verdict v;
  std::ostringstream out, err;
  v.require(app::cmd_criteria_review(w.serial, {}, true, criteria::Verdict::approve, "acceptance", out, err) ==
                app::kExitOk,
            "approve: " + err.str());
  if (!v.pass) return v;
  fs::copy(w.serial.root(), w.parallel.root(), fs::copy_options::recursive);

  const auto run = [&](const app::Workspace& ws, std::size_t parallelism) {
    app::RunOptions o;
    o.repeats = 5;
    o.parallelism = parallelism;
    o.backend = llm::BackendKind::deterministic_mock;
    std::ostringstream rout, rerr;
    const auto outcome = app::cmd_assess(ws, o, rout, rerr);
    v.require(outcome.exit_code == app::kExitOk, "assess exit " + std::to_string(outcome.exit_code) + ": " + rerr.str());
    v.require(outcome.reports.size() == 25, std::to_string(outcome.reports.size()) + " reports");
  };
  const auto start = Clock::now();
  run(w.serial, 1);
  run(w.parallel, 4);
  const double elapsed = seconds_since(start);
  v.require(elapsed < kDeterminismSeconds, "runtime " + fmt(elapsed) + " s");
  if (!v.pass) return v;

  const auto a = snapshot(w.serial.results_dir());
  const auto b = snapshot(w.parallel.results_dir());
  v.require(a.size() == 25, std::to_string(a.size()) + " result files");
  v.require(a == b, "results directories differ");
  std::map<std::string, std::string> first;
  for (const auto& [path, bytes] : b) {
    const auto sub = path.substr(0, path.find('/'));
    const auto [it, inserted] = first.emplace(sub, bytes);
    v.require(inserted || it->second == bytes, path + " differs from first run");
  }
  const auto config = w.parallel.config();
  const auto report = scoring::stability(w.parallel.load_reports(), config.weights.score_columns());
  for (const auto& [column, summary] : report.summary)
    v.require(summary.max_range == 0.0, column + " range " + fmt(summary.max_range));
  v.notes.push_back("two 5x5 runs in " + fmt(elapsed, 2) + " s");
  return v;
}

Verdict agreement(Workspaces& w) {
  Verdict v;
  std::ostringstream out, err;
  const int code = app::cmd_evaluate(w.parallel, w.parallel.root() / "human_scores.csv", out, err);
  v.require(code == app::kExitOk, "evaluate exit " + std::to_string(code) + ": " + err.str());
  if (!v.pass) return v;
  const auto j = nlohmann::json::parse(text::read_file(w.parallel.artifacts("agreement").back()));
  const auto columns = w.parallel.config().weights.score_columns();
  v.require(j["rows"].size() == columns.size() && columns.size() == 9, std::to_string(j["rows"].size()) + " rows");
  for (std::size_t i = 0; i < j["rows"].size() && i < columns.size(); ++i) {
    const auto& row = j["rows"][i];
    v.require(row["category"] == columns[i], "row " + std::to_string(i) + " category");
    for (const char* m : {"kendall", "mae", "pearson", "qwk", "spearman"})
      v.require(row.contains(m) && row[m].is_number(), columns[i] + " " + m + " missing");
  }

  const std::vector<double> stamp = {39, 26, 39, 39, 13, 26, 39};
  const auto r = metrics::agreement_report({{"Timestamp", stamp, stamp}});
  const auto& t = r.rows.at(0);
  v.require(t.kendall == 1.0 && t.mae == 0.0 && t.pearson == 1.0 && t.qwk == 1.0 && t.spearman == 1.0,
            "identical Timestamp row is not (1.000, 0.00, 1.000, 1.000, 1.000)");
  return v;
}

Verdict rule_engine() {
  Verdict v;
  gen::Rng rng(4242);
  const auto table = default_point_table();
  for (int trial = 0; trial < 1000 && v.pass; ++trial) {
    const auto tag = "instance " + std::to_string(trial) + ": ";
    std::vector<criteria::RuleDefinition> defs;
    for (std::size_t i = gen::uniform(rng, 1, 4); i > 0; --i) defs.push_back(gen::random_rule(rng, defs.size()));
    const auto content = gen::random_content(rng);
    const auto engine = rules::RuleEngine::load(defs, table);
    const auto recs = engine.execute(content);

    std::map<std::string, std::size_t> per_rule;
    for (const auto& rec : recs) {
      const auto def = std::find_if(defs.begin(), defs.end(), [&](const auto& d) { return d.rule_id == rec.rule_id; });
      v.require(def != defs.end(), tag + "record from unknown rule");
      if (def == defs.end()) break;
      ++per_rule[def->rule_id];
      v.require(rec.score >= def->fail_points && rec.score <= def->pass_points, tag + "score out of bounds");
      v.require(def->pass_points <= table.at(def->indicator), tag + "pass points above indicator max");
    }
    for (const auto& d : defs)
      v.require(per_rule[d.rule_id] == gen::expected_scope_count(d, content), tag + "scope count for " + d.rule_id);

    std::vector<ResultRecord> threaded;
    std::thread t([&] { threaded = engine.execute(content); });
    t.join();
    v.require(engine.execute(content) == recs && threaded == recs, tag + "nondeterministic output");
  }

  std::size_t seeded = 0, detected = 0;
  for (int i = 0; i < 400; ++i) {
    const bool python = i % 2 == 0;
    const auto script = gen::clean_script(rng, python);
    const auto& profile = python ? ingest::python_profile() : ingest::java_profile();
    v.require(ingest::analyze_script("s", script.text, profile).syntax_ok, "clean script flagged");
    ++seeded;
    if (!ingest::analyze_script("s", gen::seed_fault(rng, script), profile).syntax_ok) ++detected;
  }
  v.require(detected == seeded, "recall " + std::to_string(detected) + "/" + std::to_string(seeded));
  v.notes.push_back("1000 instances; fault recall " + std::to_string(detected) + "/" + std::to_string(seeded));
  return v;
}

// First SCORE line per indicator, read independently of the engine.
std::map<std::string, double> first_scores(const std::string& text) {
  static const std::regex line_re(R"(^\s*SCORE\[(\w+)\]\s*:\s*(-?\d+(?:\.\d+)?))");
  std::map<std::string, double> found;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_search(line, m, line_re)) found.emplace(m[1].str(), std::strtod(m[2].str().c_str(), nullptr));
  }
  return found;
}

Verdict extraction() {
  Verdict v;
  gen::Rng rng(9001);
  const std::vector<std::pair<IndicatorId, double>> expected = {
      {IndicatorId::STAN_1, 10}, {IndicatorId::SUFF_1, 24}, {IndicatorId::READ_2, 5}, {IndicatorId::CONS_2, 0}};
  const std::vector<std::string> noise = {"SCORE[", "]:", "FEEDBACK[STAN_1]: fine", "\n", "\t", "-", "1e308",
                                          "99999999999999999999999", "nan", "SCORE[READ_2]", ": 7", "Score[SUFF_1]: 3",
                                          "\xc3\x28", "\r\n", "SCORE[SUFF_1]: -4\n", "```", "SCORE[STAN_1]:"};
  std::size_t complete = 0, incomplete = 0, clamped = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::string t;
    for (const auto& [id, max] : expected) {
      for (std::size_t k = gen::uniform(rng, 0, 2); k > 0; --k) t += gen::pick(rng, noise);
      if (gen::coin(rng, 0.9)) {
        if (gen::coin(rng, 0.8)) t += "\n";
        const double value = (static_cast<double>(gen::uniform(rng, 0, 120)) - 30.0) / 2.0;
        t += "SCORE[" + std::string(to_string(id)) + "]: " + fmt(value, 1) + "\n";
      }
    }
    const auto oracle_scores = first_scores(t);
    bool all_present = true;
    for (const auto& [id, max] : expected) all_present &= oracle_scores.count(std::string(to_string(id))) > 0;
    const auto tag = "completion " + std::to_string(trial) + ": ";
    try {
      const auto recs = llm::extract_results(t, expected);
      ++complete;
      v.require(all_present, tag + "returned records for a missing id");
      v.require(recs.size() == expected.size(), tag + "partial list");
      for (std::size_t i = 0; i < recs.size() && i < expected.size(); ++i) {
        const auto [id, max] = expected[i];
        const double raw = oracle_scores.count(std::string(to_string(id))) ? oracle_scores.at(std::string(to_string(id))) : 0;
        const double want = std::clamp(raw, 0.0, max);
        const bool out_of_range = raw != want;
        clamped += out_of_range;
        v.require(recs[i].indicator == id, tag + "order");
        v.require(recs[i].score == want, tag + std::string(to_string(id)) + " score " + fmt(recs[i].score) + " vs " + fmt(want));
        v.require(recs[i].has_flag(RecordFlag::clamped) == out_of_range, tag + "clamp flag");
      }
    } catch (const Error& e) {
      ++incomplete;
      v.require(e.code() == ErrorCode::extraction_incomplete, tag + e.what());
      v.require(!all_present, tag + "incomplete despite all ids present");
    } catch (const std::exception& e) {
      v.require(false, tag + "unexpected " + e.what());
    }
  }
  v.notes.push_back(std::to_string(complete) + " complete, " + std::to_string(incomplete) + " incomplete, " +
                    std::to_string(clamped) + " clamped");
  return v;
}

}  // namespace

int main() {
  bool all = true;
  const auto report = [&](int n, const std::string& name, const std::function<Verdict()>& fn) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.notes.push_back(std::string("exception: ") + e.what());
    }
    all &= v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n << " " << name;
    if (!v.notes.empty()) {
      std::cout << " (";
      for (std::size_t i = 0; i < v.notes.size() && i < 6; ++i) std::cout << (i ? "; " : "") << v.notes[i];
      if (v.notes.size() > 6) std::cout << "; +" << v.notes.size() - 6 << " more";
      std::cout << ")";
    }
    std::cout << std::endl;
  };

  Workspaces w;
  report(1, "metric oracle suite", metric_oracles);
  report(2, "efficiency arithmetic", table4);
  report(3, "stability ranges from reference bounds", table3);
  const Verdict gate = [&] {
    try {
      return review_gate(w);
    } catch (const std::exception& e) {
      Verdict v;
      v.require(false, std::string("exception: ") + e.what());
      return v;
    }
  }();
  const Verdict det = [&] {
    if (!fs::exists(w.serial.config_path())) {
      Verdict v;
      v.require(false, "sample workspace not initialised");
      return v;
    }
    try {
      return determinism(w);
    } catch (const std::exception& e) {
      Verdict v;
      v.require(false, std::string("exception: ") + e.what());
      return v;
    }
  }();
  report(4, "agreement report over sample fixtures", [&] {
    if (!det.pass) {
      Verdict v;
      v.require(false, "no assessed workspace");
      return v;
    }
    return agreement(w);
  });
  report(5, "end-to-end determinism", [&] { return det; });
  report(6, "rule engine property suite", rule_engine);
  report(7, "extraction robustness", extraction);
  report(8, "review gate", [&] { return gate; });
  return all ? 0 : 1;
}
