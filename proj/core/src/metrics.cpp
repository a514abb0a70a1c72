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

#include "skillgrade/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "skillgrade/error.hpp"

namespace skillgrade::metrics {

namespace {

using nlohmann::ordered_json;

void check_pair(const std::vector<double>& a, const std::vector<double>& b, std::size_t min_n) {
  if (a.size() != b.size())
    throw Error(ErrorCode::metric_error, "length mismatch " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  if (a.size() < min_n) throw Error(ErrorCode::metric_error, "need at least " + std::to_string(min_n) + " pairs");
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double pearson_unchecked(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) throw Error(ErrorCode::undefined_metric, "constant input");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::int64_t tie_pairs(const std::vector<double>& sorted) {
  std::int64_t total = 0, run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

// Sorts v ascending and returns the number of strict inversions.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string mmss(double seconds) {
  const auto minutes = static_cast<long>(seconds / 60);
  const double rest = seconds - static_cast<double>(minutes) * 60;
  std::ostringstream s;
  s << std::setfill('0') << std::setw(2) << minutes << ":" << std::setw(5) << std::fixed << std::setprecision(2) << rest;
  return s.str();
}

ordered_json cell(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json stats_json(const MethodStats& m) {
  return {{"avg_time", m.avg_time},     {"std_dev_time", m.std_dev_time}, {"tokens_in", m.tokens_in},
          {"tokens_out", m.tokens_out}, {"labor_cost", m.labor_cost},     {"api_cost", m.api_cost},
          {"total_cost", m.total_cost}, {"capacity", m.capacity}};
}

}  // namespace

double mae(const std::vector<double>& a, const std::vector<double>& b) {
  check_pair(a, b, 1);
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  check_pair(a, b, 2);
  return pearson_unchecked(a, b);
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  check_pair(a, b, 2);
  return pearson_unchecked(average_ranks(a), average_ranks(b));
}

double kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  check_pair(a, b, 2);
  const std::size_t n = a.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x] != a[y] ? a[x] < a[y] : b[x] < b[y];
  });

  std::int64_t n1 = 0, n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && a[order[j + 1]] == a[order[i]]) ++j;
    const auto t = static_cast<std::int64_t>(j - i + 1);
    n1 += t * (t - 1) / 2;
    for (std::size_t k = i; k <= j;) {
      std::size_t m = k;
      while (m + 1 <= j && b[order[m + 1]] == b[order[k]]) ++m;
      const auto u = static_cast<std::int64_t>(m - k + 1);
      n3 += u * (u - 1) / 2;
      k = m + 1;
    }
    i = j + 1;
  }

  std::vector<double> bs(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = b[order[i]];
  const std::int64_t swaps = merge_count(bs, buf, 0, n);
  const std::int64_t n2 = tie_pairs(bs);
  const auto n0 = static_cast<std::int64_t>(n * (n - 1) / 2);
  if (n0 == n1 || n0 == n2) throw Error(ErrorCode::undefined_metric, "all values tied");
  const double numerator = static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps);
  const double denominator = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  return std::clamp(numerator / denominator, -1.0, 1.0);
}

std::int64_t quantize(double x, double step) { return static_cast<std::int64_t>(std::llround(x / step)); }

double qwk(const std::vector<double>& a, const std::vector<double>& b, double step) {
  check_pair(a, b, 2);
  if (!(step > 0)) throw Error(ErrorCode::metric_error, "quantization step must be positive");
  const std::size_t n = a.size();
  std::vector<std::int64_t> qa(n), qb(n);
  for (std::size_t i = 0; i < n; ++i) {
    qa[i] = quantize(a[i], step);
    qb[i] = quantize(b[i], step);
  }
  const auto lo = std::min(*std::min_element(qa.begin(), qa.end()), *std::min_element(qb.begin(), qb.end()));
  const auto hi = std::max(*std::max_element(qa.begin(), qa.end()), *std::max_element(qb.begin(), qb.end()));
  if (hi == lo) {
    if (a == b) return 1.0;
    throw Error(ErrorCode::undefined_metric, "single bin with differing scores");
  }
  // With quadratic weights both weighted sums reduce to moments of the bin
  // indices; the (K-1)^2 normalizer cancels.
  double observed = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<double>(qa[i] - lo), y = static_cast<double>(qb[i] - lo);
    observed += (x - y) * (x - y);
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
  }
  const double expected = saa + sbb - 2.0 * sa * sb / static_cast<double>(n);
  return 1.0 - observed / expected;
}

AgreementReport agreement_report(const std::vector<PairedScores>& pairs, double qwk_step) {
  AgreementReport report;
  for (const auto& p : pairs) {
    check_pair(p.system, p.human, 2);
    AgreementRow row;
    row.category = p.category;
    row.n = p.system.size();
    const auto attempt = [&](auto&& fn) -> std::optional<double> {
      try {
        return fn();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::undefined_metric) throw;
        return std::nullopt;
      }
    };
    row.kendall = attempt([&] { return kendall_tau_b(p.system, p.human); });
    row.mae = mae(p.system, p.human);
    row.pearson = attempt([&] { return pearson(p.system, p.human); });
    row.qwk = attempt([&] { return qwk(p.system, p.human, qwk_step); });
    row.spearman = attempt([&] { return spearman(p.system, p.human); });
    report.rows.push_back(std::move(row));
  }
  return report;
}

ordered_json to_json(const AgreementReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"category", row.category},
                    {"n", row.n},
                    {"kendall", cell(row.kendall)},
                    {"mae", cell(row.mae)},
                    {"pearson", cell(row.pearson)},
                    {"qwk", cell(row.qwk)},
                    {"spearman", cell(row.spearman)}});
  }
  return {{"rows", rows}};
}

std::string format_table(const AgreementReport& r) {
  std::size_t width = 8;
  for (const auto& row : r.rows) width = std::max(width, row.category.size());
  const auto show = [](const std::optional<double>& v, int digits) { return v ? fixed(*v, digits) : std::string("n/a"); };
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "Category" << std::right << std::setw(9) << "Kendall"
      << std::setw(8) << "MAE" << std::setw(9) << "Pearson" << std::setw(8) << "QWK" << std::setw(10) << "Spearman"
      << "\n";
  for (const auto& row : r.rows) {
    out << std::left << std::setw(static_cast<int>(width)) << row.category << std::right << std::setw(9)
        << show(row.kendall, 3) << std::setw(8) << show(row.mae, 2) << std::setw(9) << show(row.pearson, 3)
        << std::setw(8) << show(row.qwk, 3) << std::setw(10) << show(row.spearman, 3) << "\n";
  }
  return out.str();
}

double sample_std_dev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

EfficiencyReport efficiency_from_summaries(const MethodSummary& manual, const MethodSummary& system,
                                           const CapacityParams& capacity) {
  if (!(manual.avg_time > 0) || !(system.avg_time > 0))
    throw Error(ErrorCode::undefined_metric, "capacity needs a positive average time");
  const auto stats = [](const MethodSummary& s, double hours, double parallelism) {
    MethodStats m;
    m.avg_time = s.avg_time;
    m.std_dev_time = s.std_dev_time;
    m.tokens_in = s.tokens_in;
    m.tokens_out = s.tokens_out;
    m.labor_cost = s.labor_cost;
    m.api_cost = s.api_cost;
    m.total_cost = s.labor_cost + s.api_cost;
    m.capacity = hours * 3600.0 / s.avg_time * parallelism;
    return m;
  };
  EfficiencyReport r;
  r.manual = stats(manual, capacity.manual_hours_per_day, capacity.manual_parallelism);
  r.system = stats(system, capacity.system_hours_per_day, capacity.system_parallelism);
  const auto reduction = [](double before, double after) { return before > 0 ? 1.0 - after / before : 0.0; };
  r.improvements.time = reduction(r.manual.avg_time, r.system.avg_time);
  r.improvements.std_dev = reduction(r.manual.std_dev_time, r.system.std_dev_time);
  r.improvements.labor_cost = reduction(r.manual.labor_cost, r.system.labor_cost);
  r.improvements.total_cost = reduction(r.manual.total_cost, r.system.total_cost);
  r.improvements.capacity = r.system.capacity / r.manual.capacity - 1.0;
  return r;
}

EfficiencyReport efficiency_report(const EfficiencyInputs& in) {
  if (in.manual_seconds.empty() || in.system_seconds.empty())
    throw Error(ErrorCode::metric_error, "duration lists must be non-empty");
  if (!(in.rates.labor_per_hour > 0) || !(in.rates.api_per_million_tokens > 0))
    throw Error(ErrorCode::metric_error, "rates must be positive");
  MethodSummary manual, system;
  manual.avg_time = mean(in.manual_seconds);
  manual.std_dev_time = sample_std_dev(in.manual_seconds);
  manual.labor_cost = manual.avg_time * in.rates.labor_per_hour / 3600.0;

  system.avg_time = mean(in.system_seconds);
  system.std_dev_time = sample_std_dev(in.system_seconds);
  if (!in.system_tokens.empty()) {
    double pin = 0, pout = 0;
    for (const auto& t : in.system_tokens) {
      pin += static_cast<double>(t.prompt_tokens);
      pout += static_cast<double>(t.completion_tokens);
    }
    system.tokens_in = pin / static_cast<double>(in.system_tokens.size());
    system.tokens_out = pout / static_cast<double>(in.system_tokens.size());
  }
  system.api_cost = (system.tokens_in + system.tokens_out) * in.rates.api_per_million_tokens / 1e6;
  system.labor_cost = in.system_labor_seconds * in.rates.labor_per_hour / 3600.0;
  return efficiency_from_summaries(manual, system, in.capacity);
}

ordered_json to_json(const EfficiencyReport& r) {
  return {{"manual", stats_json(r.manual)},
          {"system", stats_json(r.system)},
          {"improvements",
           {{"time_pct", r.improvements.time * 100},
            {"std_dev_pct", r.improvements.std_dev * 100},
            {"labor_cost_pct", r.improvements.labor_cost * 100},
            {"cost_pct", r.improvements.total_cost * 100},
            {"capacity_pct", r.improvements.capacity * 100}}}};
}

std::string format_table(const EfficiencyReport& r) {
  std::ostringstream out;
  const auto line = [&](const std::string& name, const MethodStats& m, bool tokens) {
    out << std::left << std::setw(12) << name << std::right << std::setw(10) << mmss(m.avg_time) << std::setw(10)
        << mmss(m.std_dev_time) << std::setw(9) << (tokens ? fixed(m.tokens_in, 2) : "--") << std::setw(9)
        << (tokens ? fixed(m.tokens_out, 2) : "--") << std::setw(8) << fixed(m.labor_cost, 2) << std::setw(9)
        << (tokens ? fixed(m.api_cost, 4) : "--") << std::setw(9) << fixed(m.total_cost, 3) << std::setw(12)
        << fixed(m.capacity, 2) << "\n";
  };
  out << std::left << std::setw(12) << "Method" << std::right << std::setw(10) << "Avg" << std::setw(10) << "StdDev"
      << std::setw(9) << "TokIn" << std::setw(9) << "TokOut" << std::setw(8) << "Labor" << std::setw(9) << "API"
      << std::setw(9) << "Total" << std::setw(12) << "Sub/day" << "\n";
  line("Manual", r.manual, false);
  line("System", r.system, true);
  const auto pct = [](double f) { return fixed(f * 100, 2) + "%"; };
  out << "Improvement: time " << pct(r.improvements.time) << ", std dev " << pct(r.improvements.std_dev)
      << ", labor " << pct(r.improvements.labor_cost) << ", total cost " << pct(r.improvements.total_cost)
      << ", capacity +" << pct(r.improvements.capacity) << "\n";
  return out.str();
}

}  // namespace skillgrade::metrics
