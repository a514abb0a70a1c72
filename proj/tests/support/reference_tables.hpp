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

// Reference score bounds for five students, each column given as the
// lowest and highest value seen over five repeat assessments.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skillgrade/scoring.hpp"

namespace reference {

using Bounds = std::pair<double, double>;

struct StudentBounds {
  std::string id;
  std::map<std::string, Bounds> columns;
};

inline const std::vector<StudentBounds>& student_bounds() {
  static const std::vector<StudentBounds> rows = {
      {"stu1",
       {{"Standardization", {47, 50}}, {"Adequacy", {20, 24}}, {"Completeness", {26, 26}}, {"Basics", {23.5, 24.5}},
        {"Timestamp", {39, 39}}, {"Coverage", {25, 25}}, {"Test Case Total", {94, 100}}, {"Code Total", {87.5, 88.5}},
        {"Total Score", {182.5, 188.5}}}},
      {"stu2",
       {{"Standardization", {49, 49}}, {"Adequacy", {23, 24}}, {"Completeness", {26, 26}}, {"Basics", {21.5, 22.0}},
        {"Timestamp", {39, 39}}, {"Coverage", {20, 20}}, {"Test Case Total", {98, 99}}, {"Code Total", {80.5, 81.0}},
        {"Total Score", {178.5, 180.0}}}},
      {"stu3",
       {{"Standardization", {44, 46}}, {"Adequacy", {22, 24}}, {"Completeness", {26, 26}}, {"Basics", {22, 24}},
        {"Timestamp", {39, 39}}, {"Coverage", {23, 23}}, {"Test Case Total", {92, 96}}, {"Code Total", {84, 85.5}},
        {"Total Score", {176, 180.5}}}},
      {"stu4",
       {{"Standardization", {44, 47}}, {"Adequacy", {23, 24}}, {"Completeness", {26, 26}}, {"Basics", {18.5, 20.5}},
        {"Timestamp", {39, 39}}, {"Coverage", {19, 19}}, {"Test Case Total", {93, 96}}, {"Code Total", {76.5, 78.5}},
        {"Total Score", {170.5, 174.5}}}},
      {"stu5",
       {{"Standardization", {35, 39}}, {"Adequacy", {18, 21}}, {"Completeness", {26, 26}}, {"Basics", {22.5, 23}},
        {"Timestamp", {39, 39}}, {"Coverage", {25, 25}}, {"Test Case Total", {79, 86}}, {"Code Total", {86.5, 87}},
        {"Total Score", {166, 173}}}},
  };
  return rows;
}

/// Two synthetic runs per student: every column at its low bound, then at
/// its high bound.
inline std::map<std::string, std::vector<skillgrade::scoring::ScoreRow>> bound_runs() {
  std::map<std::string, std::vector<skillgrade::scoring::ScoreRow>> runs;
  for (const auto& s : student_bounds()) {
    skillgrade::scoring::ScoreRow lo, hi;
    for (const auto& [col, b] : s.columns) {
      lo[col] = b.first;
      hi[col] = b.second;
    }
    runs[s.id] = {lo, hi};
  }
  return runs;
}

}  // namespace reference
