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

// Brute-force reference implementations for the agreement metrics. They
// share no code with the library and favor the textbook definitions over
// speed.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

inline double mae(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(static_cast<long double>(a[i]) - b[i]);
  return static_cast<double>(s / a.size());
}

/// Raw-sum formula in long double; nullopt for constant input.
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = x.size();
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double vx = n * sxx - sx * sx, vy = n * syy - sy * sy;
  if (vx <= 1e-12L * n * sxx || vy <= 1e-12L * n * syy) return std::nullopt;
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt(vx * vy));
}

/// Rank by counting: 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) ++less;
      if (w == v[i]) ++equal;
    }
    r[i] = 1.0 + static_cast<double>(less) + (static_cast<double>(equal) - 1.0) / 2.0;
  }
  return r;
}

inline std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

/// Enumerates all pairs. nullopt when either side is entirely tied.
inline std::optional<double> kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  std::int64_t concordant = 0, discordant = 0, tied_x = 0, tied_y = 0, n0 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ++n0;
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0) ++tied_x;
      if (dy == 0) ++tied_y;
      if (dx != 0 && dy != 0) (dx * dy > 0 ? concordant : discordant)++;
    }
  }
  if (n0 == tied_x || n0 == tied_y) return std::nullopt;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(n0 - tied_x) * static_cast<double>(n0 - tied_y));
}

/// Explicit observed and expected matrices over the occupied bin span.
inline std::optional<double> qwk(const std::vector<double>& x, const std::vector<double>& y, double step) {
  const auto bin = [&](double v) {
    const double q = v / step;
    return static_cast<std::int64_t>(q < 0 ? -std::floor(-q + 0.5) : std::floor(q + 0.5));
  };
  std::int64_t lo = bin(x[0]), hi = lo;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (auto b : {bin(x[i]), bin(y[i])}) {
      lo = std::min(lo, b);
      hi = std::max(hi, b);
    }
  }
  const auto k = static_cast<std::size_t>(hi - lo + 1);
  if (k == 1) {
    if (x == y) return 1.0;
    return std::nullopt;
  }
  std::vector<std::vector<double>> observed(k, std::vector<double>(k, 0.0));
  std::vector<double> row(k, 0.0), col(k, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto a = static_cast<std::size_t>(bin(x[i]) - lo), b = static_cast<std::size_t>(bin(y[i]) - lo);
    observed[a][b] += 1;
    row[a] += 1;
    col[b] += 1;
  }
  const double n = static_cast<double>(x.size());
  long double num = 0, den = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      const double w = d * d / (static_cast<double>(k - 1) * static_cast<double>(k - 1));
      num += w * observed[i][j];
      den += w * row[i] * col[j] / n;
    }
  }
  return static_cast<double>(1.0L - num / den);
}

}  // namespace oracle
