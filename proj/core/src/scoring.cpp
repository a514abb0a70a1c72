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

#include "skillgrade/scoring.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::scoring {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::vector<IndicatorId>* members_of(const WeightConfig& w, const std::string& name) {
  for (const auto& [cat, ids] : w.categories)
    if (cat == name) return &ids;
  return nullptr;
}

double mean_ratio(const std::vector<const ResultRecord*>& records) {
  double sum = 0;
  for (const auto* r : records) sum += r->max_points > 0 ? r->score / r->max_points : 0.0;
  return sum / static_cast<double>(records.size());
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

void WeightConfig::validate() const {
  if (!(hybrid_alpha >= 0 && hybrid_alpha <= 1)) throw Error(ErrorCode::config_error, "hybrid_alpha");
  std::map<IndicatorId, int> seen;
  std::set<std::string> names;
  for (const auto& [name, ids] : categories) {
    if (name.empty() || !names.insert(name).second) throw Error(ErrorCode::config_error, "category " + name);
    for (auto id : ids) ++seen[id];
  }
  for (const auto& ind : indicator_registry()) {
    const auto it = indicator_max.find(ind.id);
    if (it == indicator_max.end() || !(it->second >= 0))
      throw Error(ErrorCode::config_error, "indicator_max " + std::string(to_string(ind.id)));
    if (seen[ind.id] != 1)
      throw Error(ErrorCode::config_error, "indicator " + std::string(to_string(ind.id)) + " must be in exactly one category");
  }
  for (const auto& [name, cats] : groups) {
    if (name.empty() || name == kTotalColumn || !names.insert(name).second)
      throw Error(ErrorCode::config_error, "group " + name);
    if (cats.empty()) throw Error(ErrorCode::config_error, "group " + name + " is empty");
    for (const auto& c : cats)
      if (!members_of(*this, c)) throw Error(ErrorCode::config_error, "group " + name + " names unknown category " + c);
  }
}

double WeightConfig::category_max(const std::string& category) const {
  const auto* ids = members_of(*this, category);
  if (!ids) throw Error(ErrorCode::not_found, category);
  double sum = 0;
  for (auto id : *ids) sum += indicator_max.at(id);
  return sum;
}

double WeightConfig::total_max() const {
  double sum = 0;
  for (const auto& [name, ids] : categories) sum += category_max(name);
  return sum;
}

std::vector<std::string> WeightConfig::score_columns() const {
  std::vector<std::string> out;
  for (const auto& [name, ids] : categories) {
    out.push_back(name);
    for (const auto& [group, cats] : groups)
      if (!cats.empty() && cats.back() == name) out.push_back(group);
  }
  for (const auto& [group, cats] : groups)
    if (std::find(out.begin(), out.end(), group) == out.end()) out.push_back(group);
  out.emplace_back(kTotalColumn);
  return out;
}

WeightConfig WeightConfig::defaults() {
  using I = IndicatorId;
  WeightConfig w;
  w.indicator_max = default_point_table();
  w.categories = {
      {"Basics", {I::STAN_4, I::STAN_5, I::STAN_6}},
      {"Coverage", {I::SUFF_2}},
      {"Timestamp", {I::RUNN_1, I::RUNN_2}},
      {"Standardization", {I::STAN_1, I::STAN_2, I::STAN_3, I::READ_1, I::READ_2, I::READ_3, I::CONS_1, I::CONS_2}},
      {"Adequacy", {I::SUFF_1}},
      {"Completeness", {I::COMP_1, I::COMP_2}},
  };
  w.groups = {
      {"Code Total", {"Basics", "Coverage", "Timestamp"}},
      {"Test Case Total", {"Standardization", "Adequacy", "Completeness"}},
  };
  return w;
}

ordered_json to_json(const WeightConfig& w) {
  ordered_json j;
  j["hybrid_alpha"] = w.hybrid_alpha;
  ordered_json maxima = ordered_json::object();
  for (const auto& ind : indicator_registry()) maxima[std::string(to_string(ind.id))] = w.indicator_max.at(ind.id);
  j["indicator_max"] = maxima;
  ordered_json cats = ordered_json::array();
  for (const auto& [name, ids] : w.categories) {
    ordered_json members = ordered_json::array();
    for (auto id : ids) members.push_back(std::string(to_string(id)));
    cats.push_back({{"name", name}, {"indicators", members}});
  }
  j["categories"] = cats;
  ordered_json groups = ordered_json::array();
  for (const auto& [name, members] : w.groups) groups.push_back({{"name", name}, {"categories", members}});
  j["groups"] = groups;
  return j;
}

WeightConfig weights_from_json(const json& j) {
  WeightConfig w = WeightConfig::defaults();
  try {
    if (!j.is_object()) throw Error(ErrorCode::config_error, "weights must be an object");
    w.hybrid_alpha = get_or<double>(j, "hybrid_alpha", w.hybrid_alpha);
    if (j.contains("indicator_max")) {
      for (const auto& [key, value] : j.at("indicator_max").items()) {
        const auto id = parse_indicator(key);
        if (!id) throw Error(ErrorCode::config_error, "unknown indicator " + key);
        w.indicator_max[*id] = value.get<double>();
      }
    }
    if (j.contains("categories")) {
      w.categories.clear();
      for (const auto& c : j.at("categories")) {
        Category cat{c.at("name").get<std::string>(), {}};
        for (const auto& s : c.at("indicators")) {
          const auto id = parse_indicator(s.get<std::string>());
          if (!id) throw Error(ErrorCode::config_error, "unknown indicator " + s.get<std::string>());
          cat.second.push_back(*id);
        }
        w.categories.push_back(std::move(cat));
      }
    }
    if (j.contains("groups")) {
      w.groups.clear();
      for (const auto& g : j.at("groups"))
        w.groups.emplace_back(g.at("name").get<std::string>(), g.at("categories").get<std::vector<std::string>>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config_error, std::string("weights: ") + e.what());
  }
  w.validate();
  return w;
}

double AssessmentReport::column(const std::string& name) const {
  if (name == kTotalColumn) return total;
  for (const auto& [n, v] : category_scores)
    if (n == name) return v;
  for (const auto& [n, v] : group_scores)
    if (n == name) return v;
  throw Error(ErrorCode::not_found, name);
}

std::map<std::string, double> AssessmentReport::columns() const {
  std::map<std::string, double> out(category_scores.begin(), category_scores.end());
  out.insert(group_scores.begin(), group_scores.end());
  out.emplace(kTotalColumn, total);
  return out;
}

AssessmentReport merge_results(const std::vector<ResultRecord>& objective, const std::vector<ResultRecord>& subjective,
                               const WeightConfig& weights, std::string submission_id, std::size_t run_index) {
  AssessmentReport report;
  report.submission_id = std::move(submission_id);
  report.run_index = run_index;

  std::map<IndicatorId, std::vector<const ResultRecord*>> rule_part, llm_part;
  for (const auto* list : {&objective, &subjective}) {
    for (const auto& r : *list) {
      if (!weights.indicator_max.count(r.indicator))
        throw Error(ErrorCode::merge_error, std::string(to_string(r.indicator)));
      (r.origin == Origin::rule ? rule_part : llm_part)[r.indicator].push_back(&r);
    }
  }
  report.records = objective;
  report.records.insert(report.records.end(), subjective.begin(), subjective.end());

  std::map<IndicatorId, double> merged;
  for (const auto& ind : indicator_registry()) {
    const auto max_it = weights.indicator_max.find(ind.id);
    if (max_it == weights.indicator_max.end()) continue;
    const double imax = max_it->second;
    const auto& rules = rule_part[ind.id];
    const auto& llms = llm_part[ind.id];
    const std::string name(to_string(ind.id));
    double score = 0;
    if (rules.empty() && llms.empty()) {
      if (imax > 0) report.diagnostics.push_back(name + ": no records, scored 0");
    } else if (ind.method == Method::rule_llm) {
      if (rules.empty()) report.diagnostics.push_back(name + ": rule part missing, counted as 0");
      if (llms.empty()) report.diagnostics.push_back(name + ": llm part missing, counted as 0");
      const double r = rules.empty() ? 0.0 : mean_ratio(rules);
      const double l = llms.empty() ? 0.0 : mean_ratio(llms);
      score = weights.hybrid_alpha * r * imax + (1 - weights.hybrid_alpha) * l * imax;
    } else {
      const auto& own = ind.method == Method::rule ? rules : llms;
      if (own.empty()) {
        report.diagnostics.push_back(name + ": no " + std::string(to_string(ind.method)) + " records, scored 0");
      } else {
        score = mean_ratio(own) * imax;
      }
    }
    merged[ind.id] = score;
    report.indicator_scores.emplace_back(ind.id, score);
  }

  std::map<std::string, double> by_category;
  for (const auto& [name, ids] : weights.categories) {
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0;
    for (auto id : sorted) sum += merged[id];
    report.category_scores.emplace_back(name, sum);
    by_category[name] = sum;
    report.total += sum;
  }
  for (const auto& [name, cats] : weights.groups) {
    double sum = 0;
    for (const auto& c : cats) sum += by_category[c];
    report.group_scores.emplace_back(name, sum);
  }
  return report;
}

ordered_json to_json(const ResultRecord& r) {
  ordered_json j;
  j["indicator"] = std::string(to_string(r.indicator));
  j["rule_id"] = r.rule_id ? ordered_json(*r.rule_id) : ordered_json(nullptr);
  j["scope"] = r.scope;
  j["score"] = r.score;
  j["max_points"] = r.max_points;
  j["feedback"] = r.feedback;
  j["origin"] = std::string(to_string(r.origin));
  ordered_json flags = ordered_json::array();
  for (auto f : r.flags) flags.push_back(std::string(to_string(f)));
  j["flags"] = flags;
  return j;
}

ResultRecord record_from_json(const ordered_json& j) {
  ResultRecord r;
  const auto id = parse_indicator(j.at("indicator").get<std::string>());
  if (!id) throw Error(ErrorCode::parse_error, "indicator " + j.at("indicator").get<std::string>());
  r.indicator = *id;
  if (!j.at("rule_id").is_null()) r.rule_id = j.at("rule_id").get<std::string>();
  r.scope = j.at("scope").get<std::string>();
  r.score = j.at("score").get<double>();
  r.max_points = j.at("max_points").get<double>();
  r.feedback = j.at("feedback").get<std::string>();
  r.origin = j.at("origin").get<std::string>() == "llm" ? Origin::llm : Origin::rule;
  for (const auto& f : j.at("flags")) {
    const auto s = f.get<std::string>();
    if (s == "clamped") r.flags.push_back(RecordFlag::clamped);
    else if (s == "retried") r.flags.push_back(RecordFlag::retried);
    else if (s == "dangling_reference") r.flags.push_back(RecordFlag::dangling_reference);
  }
  return r;
}

ordered_json to_json(const AssessmentReport& r) {
  ordered_json j;
  j["submission_id"] = r.submission_id;
  j["run_index"] = r.run_index;
  j["total"] = r.total;
  ordered_json cats = ordered_json::object();
  for (const auto& [name, v] : r.category_scores) cats[name] = v;
  j["category_scores"] = cats;
  ordered_json groups = ordered_json::object();
  for (const auto& [name, v] : r.group_scores) groups[name] = v;
  j["group_scores"] = groups;
  ordered_json inds = ordered_json::object();
  for (const auto& [id, v] : r.indicator_scores) inds[std::string(to_string(id))] = v;
  j["indicator_scores"] = inds;
  ordered_json records = ordered_json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  j["records"] = records;
  j["diagnostics"] = r.diagnostics;
  return j;
}

AssessmentReport report_from_json(const ordered_json& j) {
  try {
    AssessmentReport r;
    r.submission_id = j.at("submission_id").get<std::string>();
    r.run_index = j.at("run_index").get<std::size_t>();
    r.total = j.at("total").get<double>();
    for (const auto& [k, v] : j.at("category_scores").items()) r.category_scores.emplace_back(k, v.get<double>());
    for (const auto& [k, v] : j.at("group_scores").items()) r.group_scores.emplace_back(k, v.get<double>());
    for (const auto& [k, v] : j.at("indicator_scores").items()) {
      const auto id = parse_indicator(k);
      if (!id) throw Error(ErrorCode::parse_error, "indicator " + k);
      r.indicator_scores.emplace_back(*id, v.get<double>());
    }
    for (const auto& rec : j.at("records")) r.records.push_back(record_from_json(rec));
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("report: ") + e.what());
  }
}

StabilityReport stability_from_rows(const std::map<std::string, std::vector<ScoreRow>>& runs,
                                    const std::vector<std::string>& column_order) {
  StabilityReport out;
  std::set<std::string> column_set;
  bool first = true;
  for (const auto& [sub, rows] : runs) {
    if (rows.size() < 2)
      throw Error(ErrorCode::stability_error, "submission " + sub + " has " + std::to_string(rows.size()) + " run(s)");
    for (const auto& row : rows) {
      std::set<std::string> keys;
      for (const auto& [k, v] : row) keys.insert(k);
      if (first) {
        column_set = keys;
        first = false;
      } else if (keys != column_set) {
        throw Error(ErrorCode::stability_error, "column sets differ for submission " + sub);
      }
    }
  }
  for (const auto& c : column_order)
    if (column_set.count(c)) out.columns.push_back(c);
  for (const auto& c : column_set)
    if (std::find(out.columns.begin(), out.columns.end(), c) == out.columns.end()) out.columns.push_back(c);

  for (const auto& [sub, rows] : runs) {
    SubmissionStability s{sub, rows.size(), {}};
    for (const auto& c : out.columns) {
      ColumnRange cr{rows.front().at(c), rows.front().at(c), 0};
      for (const auto& row : rows) {
        cr.min = std::min(cr.min, row.at(c));
        cr.max = std::max(cr.max, row.at(c));
      }
      cr.range = cr.max - cr.min;
      s.columns[c] = cr;
    }
    out.submissions.push_back(std::move(s));
  }
  for (const auto& c : out.columns) {
    ColumnSummary summary;
    double sum = 0;
    for (const auto& s : out.submissions) {
      summary.max_range = std::max(summary.max_range, s.columns.at(c).range);
      sum += s.columns.at(c).range;
    }
    summary.avg_range = out.submissions.empty() ? 0.0 : sum / static_cast<double>(out.submissions.size());
    out.summary[c] = summary;
  }
  return out;
}

StabilityReport stability(const std::vector<AssessmentReport>& reports, const std::vector<std::string>& column_order) {
  std::map<std::string, std::vector<ScoreRow>> runs;
  std::vector<const AssessmentReport*> sorted;
  for (const auto& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->submission_id, a->run_index) < std::tie(b->submission_id, b->run_index);
  });
  for (const auto* r : sorted) runs[r->submission_id].push_back(r->columns());
  return stability_from_rows(runs, column_order);
}

ordered_json to_json(const StabilityReport& r) {
  ordered_json j;
  j["columns"] = r.columns;
  ordered_json subs = ordered_json::array();
  for (const auto& s : r.submissions) {
    ordered_json cols = ordered_json::object();
    for (const auto& c : r.columns) {
      const auto& cr = s.columns.at(c);
      cols[c] = {{"min", cr.min}, {"max", cr.max}, {"range", cr.range}};
    }
    subs.push_back({{"submission_id", s.submission_id}, {"runs", s.runs}, {"columns", cols}});
  }
  j["submissions"] = subs;
  ordered_json summary = ordered_json::object();
  for (const auto& c : r.columns)
    summary[c] = {{"max_range", r.summary.at(c).max_range}, {"avg_range", r.summary.at(c).avg_range}};
  j["summary"] = summary;
  return j;
}

std::string format_table(const StabilityReport& r) {
  const auto fixed1 = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << v;
    return s.str();
  };
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Submission"};
  header.insert(header.end(), r.columns.begin(), r.columns.end());
  rows.push_back(header);
  for (const auto& s : r.submissions) {
    std::vector<std::string> row{s.submission_id};
    for (const auto& c : r.columns) {
      const auto& cr = s.columns.at(c);
      row.push_back(cr.range == 0 ? fixed1(cr.min) : fixed1(cr.min) + "-" + fixed1(cr.max));
    }
    rows.push_back(row);
  }
  std::vector<std::string> max_row{"Max Range"}, avg_row{"Avg Range"};
  for (const auto& c : r.columns) {
    max_row.push_back(fixed1(r.summary.at(c).max_range));
    avg_row.push_back(fixed1(r.summary.at(c).avg_range));
  }
  rows.push_back(max_row);
  rows.push_back(avg_row);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << (i == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << row[i];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace skillgrade::scoring
