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

#include "skillgrade/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::app {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

/// Forwards to a shared backend and tallies usage for one submission.
class CountingBackend final : public llm::LlmBackend {
 public:
  explicit CountingBackend(llm::LlmBackend& inner) : inner_(inner) {}
  std::string id() const override { return inner_.id(); }
  llm::LlmResponse complete(const std::string& prompt) override {
    auto r = inner_.complete(prompt);
    tally_.add(r);
    return r;
  }
  llm::UsageSnapshot usage() const { return tally_.snapshot(); }

 private:
  llm::LlmBackend& inner_;
  llm::UsageTally tally_;
};

std::shared_ptr<llm::ThrottledBackend> backend_for(const Workspace& ws, Config config,
                                                   std::optional<llm::BackendKind> kind, bool record) {
  if (record) {
    return std::make_shared<llm::ThrottledBackend>(std::make_shared<llm::SynthesizingBackend>(ws.fixtures_dir()),
                                                   config.backend.concurrency_limit);
  }
  if (kind) config.backend.kind = *kind;
  if (config.backend.fixtures_dir.empty()) config.backend.fixtures_dir = ws.fixtures_dir();
  return llm::make_backend(config.backend);
}

std::string report_error(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return e.what();
}

int exit_for(const Error& e) {
  (void)e;
  return kExitConfig;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    report_error(err, e);
    return exit_for(e);
  } catch (const std::exception& e) {
    report_error(err, e);
    return kExitConfig;
  }
}

std::string guidance_for(const Workspace& ws, const Config& config, IndicatorId id) {
  const auto custom = ws.guidance_dir() / (std::string(to_string(id)) + ".md");
  if (fs::exists(custom)) return text::read_file(custom);
  return criteria::default_guidance(id, config.rules, config.weights.indicator_max.at(id));
}

std::string read_requirement(const Workspace& ws) {
  return fs::exists(ws.requirements_path()) ? text::read_file(ws.requirements_path()) : std::string();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void RunOptions::validate() const {
  if (repeats < 1) throw Error(ErrorCode::config_error, "repeats must be >= 1");
  if (parallelism < 1) throw Error(ErrorCode::config_error, "parallel must be >= 1");
}

Assessor make_assessor(const Workspace& ws, const Config& config, const criteria::CriteriaStore& store,
                       bool approved_only) {
  const auto status = approved_only ? std::optional(criteria::ReviewStatus::approved) : std::nullopt;
  Assessor a;
  a.config = config;
  auto rules = store.rules(status);
  auto crits = store.criteria(status);
  auto lists = store.checklists(status);
  if (!approved_only) {
    const auto approve = [](auto& items) {
      items.erase(std::remove_if(items.begin(), items.end(),
                                 [](const auto& x) { return x.status == criteria::ReviewStatus::rejected; }),
                  items.end());
      for (auto& x : items) x.status = criteria::ReviewStatus::approved;
    };
    approve(rules);
    approve(crits);
    approve(lists);
  }
  a.engine = rules::RuleEngine::load(std::move(rules), config.weights.indicator_max);
  a.criteria = std::move(crits);
  a.checklists = std::move(lists);
  for (auto kind : llm::all_template_kinds()) {
    const auto path = ws.templates_dir() / (std::string(to_string(kind)) + ".md");
    a.templates.emplace(kind, fs::exists(path) ? llm::PromptTemplate::parse(kind, text::read_file(path))
                                               : llm::PromptTemplate::default_for(kind));
  }
  a.requirement = read_requirement(ws);
  return a;
}

Assessor load_assessor(const Workspace& ws, const Config& config) {
  const auto store = criteria::CriteriaStore::load(ws.criteria_dir(), config.weights.indicator_max);
  if (store.count(criteria::ReviewStatus::pending) > 0) {
    std::vector<std::string> pending;
    for (const auto& item : store.list())
      if (item.status == criteria::ReviewStatus::pending) pending.push_back(item.id);
    if (pending.size() > 5) {
      const auto more = pending.size() - 5;
      pending.resize(5);
      pending.push_back("and " + std::to_string(more) + " more");
    }
    throw Error(ErrorCode::gate_error, "pending review: " + text::join(pending, ", "));
  }
  if (store.count(criteria::ReviewStatus::approved) == 0)
    throw Error(ErrorCode::gate_error, "no approved criteria; run `criteria generate` and review them");
  return make_assessor(ws, config, store, true);
}

std::unique_ptr<ingest::TextRecognizer> make_recognizer(const Config& config) {
  if (config.ocr.backend == ingest::OcrBackend::http_ocr)
    return std::make_unique<ingest::HttpOcrRecognizer>(config.ocr.http);
  return std::make_unique<ingest::SidecarRecognizer>();
}

scoring::AssessmentReport assess_submission(const Assessor& assessor, llm::LlmBackend& backend,
                                            const ingest::TextRecognizer& recognizer, const fs::path& submission_dir,
                                            const std::string& submission_id, std::size_t run_index) {
  const auto content = load_submission(submission_dir, submission_id, assessor.config, recognizer);
  const auto& max_points = assessor.config.weights.indicator_max;
  std::vector<ResultRecord> objective;
  if (assessor.engine) objective = assessor.engine->execute(content);

  std::vector<ResultRecord> subjective;
  for (auto kind : llm::all_template_kinds()) {
    const auto& wanted = llm::template_indicators(kind);
    std::vector<criteria::SubjectiveCriterion> crits;
    for (const auto& c : assessor.criteria)
      if (std::find(wanted.begin(), wanted.end(), c.indicator) != wanted.end()) crits.push_back(c);
    if (crits.empty()) continue;
    auto result = llm::assess(backend, assessor.templates.at(kind), assessor.requirement, content,
                              assessor.checklists, crits, max_points);
    subjective.insert(subjective.end(), result.records.begin(), result.records.end());
  }

  auto report = scoring::merge_results(objective, subjective, assessor.config.weights, submission_id, run_index);
  report.diagnostics.insert(report.diagnostics.begin(), content.diagnostics.begin(), content.diagnostics.end());
  return report;
}

AssessOutcome cmd_assess(const Workspace& ws, const RunOptions& options, std::ostream& out, std::ostream& err) {
  AssessOutcome outcome;
  const auto started_at = text::utc_timestamp();
  const auto wall_start = std::chrono::steady_clock::now();

  Config config;
  Assessor assessor;
  std::vector<std::string> ids;
  try {
    options.validate();
    config = ws.config();
    assessor = load_assessor(ws, config);
    ids = ws.submission_ids();
    if (ids.empty()) throw Error(ErrorCode::config_error, "no submissions under " + ws.submissions_dir().string());
  } catch (const std::exception& e) {
    report_error(err, e);
    outcome.exit_code = kExitConfig;
    return outcome;
  }

  std::shared_ptr<llm::ThrottledBackend> backend;
  std::unique_ptr<ingest::TextRecognizer> recognizer;
  try {
    backend = backend_for(ws, config, options.backend, options.record_fixtures);
    recognizer = make_recognizer(config);
  } catch (const std::exception& e) {
    report_error(err, e);
    outcome.exit_code = kExitConfig;
    return outcome;
  }

  struct RunRecord {
    std::size_t run_index = 0;
    double seconds = 0;
    llm::UsageSnapshot usage;
    fs::path report;
  };
  struct SubmissionOutcome {
    std::vector<RunRecord> runs;
    std::string error;
  };

  std::vector<std::size_t> base(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) base[i] = ws.next_run_index(ids[i]);
  std::vector<SubmissionOutcome> results(ids.size());

  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed.value_or(config.seed));
  std::shuffle(order.begin(), order.end(), rng);

  std::atomic<std::size_t> next{0};
  std::mutex log_mu;
  const auto worker = [&] {
    for (std::size_t slot = next++; slot < order.size(); slot = next++) {
      const auto i = order[slot];
      auto& result = results[i];
      for (std::size_t r = 0; r < options.repeats; ++r) {
        CountingBackend counting(*backend);
        const auto start = std::chrono::steady_clock::now();
        try {
          auto report =
              assess_submission(assessor, counting, *recognizer, ws.submission_dir(ids[i]), ids[i], base[i] + r);
          const auto path = ws.write_report(report);
          result.runs.push_back({base[i] + r, seconds_since(start), counting.usage(), path});
        } catch (const std::exception& e) {
          result.error = e.what();
          std::lock_guard lock(log_mu);
          err << "error: submission " << ids[i] << " run " << base[i] + r << ": " << e.what() << "\n";
          break;
        }
      }
    }
  };
  const std::size_t threads = std::min(options.parallelism, ids.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ordered_json subs = ordered_json::array();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& res = results[i];
    ordered_json runs = ordered_json::array();
    for (const auto& run : res.runs) {
      runs.push_back({{"run_index", run.run_index},
                      {"seconds", run.seconds},
                      {"llm_calls", run.usage.calls},
                      {"prompt_tokens", run.usage.prompt_tokens},
                      {"completion_tokens", run.usage.completion_tokens},
                      {"report", fs::relative(run.report, ws.root()).generic_string()}});
      outcome.reports.push_back(run.report);
    }
    const bool ok = res.error.empty();
    if (!ok) outcome.failed.push_back(ids[i]);
    subs.push_back({{"submission_id", ids[i]},
                    {"status", ok ? "ok" : "failed"},
                    {"error", ok ? ordered_json(nullptr) : ordered_json(res.error)},
                    {"runs", runs}});
  }
  outcome.exit_code = outcome.failed.empty() ? kExitOk : kExitPartial;

  const auto usage = backend->usage().snapshot();
  ordered_json manifest;
  manifest["kind"] = "assess";
  manifest["started_at"] = started_at;
  manifest["finished_at"] = text::utc_timestamp();
  manifest["wall_seconds"] = seconds_since(wall_start);
  manifest["backend"] = backend->id();
  manifest["repeats"] = options.repeats;
  manifest["parallelism"] = options.parallelism;
  manifest["seed"] = options.seed.value_or(config.seed);
  manifest["exit_code"] = outcome.exit_code;
  manifest["usage"] = {{"calls", usage.calls},
                       {"prompt_tokens", usage.prompt_tokens},
                       {"completion_tokens", usage.completion_tokens}};
  manifest["submissions"] = subs;
  try {
    outcome.manifest = ws.next_artifact_path("assess");
    text::write_file_atomic(outcome.manifest, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    report_error(err, e);
    outcome.exit_code = kExitPartial;
  }

  out << "assessed " << ids.size() - outcome.failed.size() << "/" << ids.size() << " submission(s), "
      << outcome.reports.size() << " report(s); manifest "
      << fs::relative(outcome.manifest, ws.root()).generic_string() << "\n";
  return outcome;
}

int cmd_criteria_generate(const Workspace& ws, std::optional<llm::BackendKind> kind, bool record_fixtures,
                          std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    auto backend = backend_for(ws, config, kind, record_fixtures);
    auto store = criteria::CriteriaStore::load(ws.criteria_dir(), config.weights.indicator_max);
    const auto& max_points = config.weights.indicator_max;
    const auto settled = [&](const std::string& id) {
      for (const auto& item : store.list())
        if (item.id == id) return item.status != criteria::ReviewStatus::pending;
      return false;
    };

    int failures = 0, generated = 0;
    criteria::Diagnostics diagnostics;
    const auto attempt = [&](const std::string& what, auto&& fn) {
      try {
        fn();
        ++generated;
      } catch (const Error& e) {
        ++failures;
        err << "error: " << what << ": " << e.what() << "\n";
      }
    };

    const auto requirement = read_requirement(ws);
    if (requirement.empty()) err << "warning: no requirements.md; no checklists generated\n";
    for (const auto& unit : criteria::decompose_requirements(requirement, config.granularity)) {
      if (settled("checklist-" + unit.unit_id)) continue;
      attempt("checklist-" + unit.unit_id,
              [&] { store.put(criteria::generate_checklist(unit, *backend, diagnostics)); });
    }

    for (const auto& ind : indicator_registry()) {
      const std::string name(to_string(ind.id));
      const double max = max_points.at(ind.id);
      if (uses_rules(ind.method)) {
        bool has_settled_rule = false;
        for (const auto& r : store.rules())
          if (r.indicator == ind.id && r.status != criteria::ReviewStatus::pending) has_settled_rule = true;
        if (max <= 0) {
          out << "skipping rule for " << name << ": zero weight\n";
        } else if (!has_settled_rule) {
          attempt("rule for " + name, [&] {
            store.put(criteria::generate_rule_definition(ind.id, guidance_for(ws, config, ind.id), *backend,
                                                         max_points, diagnostics));
          });
        }
      }
      if (uses_llm(ind.method) && !settled("criterion-" + name)) {
        attempt("criterion for " + name, [&] {
          store.put(criteria::refine_subjective_criterion(ind.id, guidance_for(ws, config, ind.id), *backend,
                                                          diagnostics));
        });
      }
    }
    store.save(ws.criteria_dir());
    for (const auto& d : diagnostics) err << "note: " << d << "\n";
    out << "generated " << generated << " item(s); " << store.count(criteria::ReviewStatus::pending)
        << " pending review\n";
    return failures ? kExitPartial : kExitOk;
  });
}

int cmd_criteria_review(const Workspace& ws, const std::vector<std::string>& ids, bool all_pending,
                        criteria::Verdict verdict, const std::string& reviewer, std::ostream& out,
                        std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    auto store = criteria::CriteriaStore::load(ws.criteria_dir(), config.weights.indicator_max);
    std::vector<std::string> targets = ids;
    if (all_pending)
      for (const auto& item : store.list())
        if (item.status == criteria::ReviewStatus::pending) targets.push_back(item.id);
    if (targets.empty()) throw Error(ErrorCode::not_found, "no item ids given");
    // Validate every id before touching disk so a bad id changes nothing.
    for (const auto& id : targets)
      if (!store.contains(id)) throw Error(ErrorCode::not_found, id);
    const auto stamp = text::utc_timestamp();
    for (const auto& id : targets) {
      const auto status = store.review(id, verdict, reviewer, stamp);
      store.save_item(ws.criteria_dir(), id);
      out << id << ": " << to_string(status) << "\n";
    }
    return kExitOk;
  });
}

int cmd_criteria_list(const Workspace& ws, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    const auto store = criteria::CriteriaStore::load(ws.criteria_dir(), config.weights.indicator_max);
    std::size_t width = 2;
    const auto items = store.list();
    for (const auto& item : items) width = std::max(width, item.id.size());
    for (const auto& item : items) {
      out << item.id << std::string(width - item.id.size() + 2, ' ') << to_string(item.kind)
          << std::string(11 - to_string(item.kind).size(), ' ') << to_string(item.status)
          << std::string(10 - to_string(item.status).size(), ' ') << item.subject << "\n";
    }
    out << items.size() << " item(s): " << store.count(criteria::ReviewStatus::approved) << " approved, "
        << store.count(criteria::ReviewStatus::pending) << " pending, "
        << store.count(criteria::ReviewStatus::rejected) << " rejected\n";
    return kExitOk;
  });
}

std::vector<HumanScore> parse_human_scores(std::string_view csv) {
  std::vector<HumanScore> out;
  const auto lines = text::lines(csv);
  bool header = true;
  std::size_t row = 0;
  for (const auto& raw : lines) {
    const std::string line(text::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    const auto cells = text::split(line, ',');
    if (header) {
      header = false;
      if (cells.size() != 3 || text::trim(cells[0]) != "submission_id" || text::trim(cells[1]) != "category" ||
          text::trim(cells[2]) != "score")
        throw Error(ErrorCode::parse_error, "human scores header must be submission_id,category,score");
      continue;
    }
    ++row;
    if (cells.size() != 3) throw Error(ErrorCode::parse_error, "human scores row " + std::to_string(row));
    HumanScore h{std::string(text::trim(cells[0])), std::string(text::trim(cells[1])), 0};
    const std::string value(text::trim(cells[2]));
    char* end = nullptr;
    h.score = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      throw Error(ErrorCode::parse_error, "human scores row " + std::to_string(row) + ": score " + value);
    out.push_back(std::move(h));
  }
  if (header) throw Error(ErrorCode::parse_error, "human scores file is empty");
  return out;
}

std::vector<metrics::PairedScores> pair_scores(const std::vector<scoring::AssessmentReport>& reports,
                                               const std::vector<HumanScore>& human,
                                               const std::vector<std::string>& column_order) {
  std::map<std::string, const scoring::AssessmentReport*> latest;
  for (const auto& r : reports) {
    auto& slot = latest[r.submission_id];
    if (!slot || r.run_index > slot->run_index) slot = &r;
  }
  std::map<std::pair<std::string, std::string>, double> by_key;
  std::set<std::string> human_subs, categories;
  for (const auto& h : human) {
    if (!by_key.emplace(std::make_pair(h.submission_id, h.category), h.score).second)
      throw Error(ErrorCode::parse_error, "duplicate human score " + h.submission_id + "/" + h.category);
    human_subs.insert(h.submission_id);
    categories.insert(h.category);
  }

  std::vector<std::string> ordered;
  for (const auto& c : column_order)
    if (categories.count(c)) ordered.push_back(c);
  std::vector<std::string> missing;
  for (const auto& c : categories)
    if (std::find(ordered.begin(), ordered.end(), c) == ordered.end()) missing.push_back("unknown category " + c);

  std::set<std::string> subs = human_subs;
  for (const auto& [id, r] : latest) subs.insert(id);
  for (const auto& s : subs) {
    if (!latest.count(s)) missing.push_back("no report for " + s);
    for (const auto& c : ordered)
      if (!by_key.count({s, c})) missing.push_back("no human score for " + s + "/" + c);
  }
  if (!missing.empty()) throw Error(ErrorCode::metric_error, text::join(missing, "; "));

  std::vector<metrics::PairedScores> pairs;
  for (const auto& c : ordered) {
    metrics::PairedScores p{c, {}, {}};
    for (const auto& s : subs) {
      p.system.push_back(latest.at(s)->column(c));
      p.human.push_back(by_key.at({s, c}));
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

int cmd_evaluate(const Workspace& ws, const fs::path& human_file, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    if (!fs::exists(human_file)) throw Error(ErrorCode::not_found, human_file.string());
    const auto human = parse_human_scores(text::read_file(human_file));
    const auto reports = ws.load_reports();
    const auto pairs = pair_scores(reports, human, config.weights.score_columns());
    const auto report = metrics::agreement_report(pairs, config.qwk_step);
    const auto path = ws.next_artifact_path("agreement");
    auto j = metrics::to_json(report);
    j["human_scores"] = fs::absolute(human_file).generic_string();
    j["qwk_step"] = config.qwk_step;
    text::write_file_atomic(path, j.dump(2) + "\n");
    out << metrics::format_table(report) << "written " << fs::relative(path, ws.root()).generic_string() << "\n";
    return kExitOk;
  });
}

int cmd_report_stability(const Workspace& ws, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    const auto reports = ws.load_reports();
    if (reports.empty()) throw Error(ErrorCode::stability_error, "no reports; run assess with --repeats 2 or more");
    const auto report = scoring::stability(reports, config.weights.score_columns());
    const auto path = ws.next_artifact_path("stability");
    text::write_file_atomic(path, scoring::to_json(report).dump(2) + "\n");
    out << scoring::format_table(report) << "written " << fs::relative(path, ws.root()).generic_string() << "\n";
    return kExitOk;
  });
}

double parse_duration(std::string_view s) {
  const std::string t(text::trim(s));
  const auto fail = [&] { return Error(ErrorCode::parse_error, "duration " + t); };
  const auto number = [&](const std::string& part) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size() || v < 0) throw fail();
    return v;
  };
  const auto parts = text::split(t, ':');
  double seconds = 0;
  for (const auto& p : parts) seconds = seconds * 60 + number(std::string(text::trim(p)));
  if (parts.size() > 3) throw fail();
  return seconds;
}

int cmd_report_efficiency(const Workspace& ws, const fs::path& manual_file, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto config = ws.config();
    if (!fs::exists(manual_file)) throw Error(ErrorCode::not_found, manual_file.string());
    metrics::EfficiencyInputs in;
    for (const auto& line : text::lines(text::read_file(manual_file))) {
      const auto t = text::trim(line);
      if (t.empty() || t.front() == '#') continue;
      in.manual_seconds.push_back(parse_duration(t));
    }
    for (const auto& path : ws.artifacts("assess")) {
      const auto manifest = json::parse(text::read_file(path));
      for (const auto& sub : manifest.at("submissions")) {
        for (const auto& run : sub.at("runs")) {
          in.system_seconds.push_back(run.at("seconds").get<double>());
          in.system_tokens.push_back(
              {run.at("prompt_tokens").get<std::uint64_t>(), run.at("completion_tokens").get<std::uint64_t>()});
        }
      }
    }
    if (in.system_seconds.empty()) throw Error(ErrorCode::metric_error, "no assessed runs in runs/");
    if (in.manual_seconds.empty()) throw Error(ErrorCode::metric_error, "no manual durations in " + manual_file.string());
    in.system_labor_seconds = config.supervision_seconds;
    in.rates = config.rates;
    in.capacity = config.capacity;
    const auto report = metrics::efficiency_report(in);
    const auto path = ws.next_artifact_path("efficiency");
    auto j = metrics::to_json(report);
    j["inputs"] = {{"manual_submissions", in.manual_seconds.size()},
                   {"system_runs", in.system_seconds.size()},
                   {"supervision_seconds", in.system_labor_seconds},
                   {"labor_per_hour", in.rates.labor_per_hour},
                   {"api_per_million_tokens", in.rates.api_per_million_tokens}};
    text::write_file_atomic(path, j.dump(2) + "\n");
    out << metrics::format_table(report) << "written " << fs::relative(path, ws.root()).generic_string() << "\n";
    return kExitOk;
  });
}

void prime_fixtures(const Workspace& ws) {
  const auto config = ws.config();
  const auto store = criteria::CriteriaStore::load(ws.criteria_dir(), config.weights.indicator_max);
  const auto assessor = make_assessor(ws, config, store, false);
  llm::SynthesizingBackend backend(ws.fixtures_dir());
  const auto recognizer = make_recognizer(config);
  for (const auto& id : ws.submission_ids())
    (void)assess_submission(assessor, backend, *recognizer, ws.submission_dir(id), id, 0);
}

int cmd_init(const fs::path& root, bool sample, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (sample && fs::exists(root / "submissions") && !fs::is_empty(root / "submissions"))
      throw Error(ErrorCode::config_error, "refusing to add samples: " + (root / "submissions").string() + " is not empty");
    const auto ws = Workspace::create(root);
    out << "workspace ready at " << ws.root().string() << "\n";
    if (!sample) return kExitOk;
    write_sample_workspace(ws);
    std::ostringstream quiet;
    const int code = cmd_criteria_generate(ws, std::nullopt, true, quiet, err);
    if (code != kExitOk) return code;
    prime_fixtures(ws);
    out << "sample submissions: " << text::join(ws.submission_ids(), ", ") << "\n"
        << "criteria generated and pending review; approve them with `criteria review approve --all`\n";
    return kExitOk;
  });
}

}  // namespace skillgrade::app
