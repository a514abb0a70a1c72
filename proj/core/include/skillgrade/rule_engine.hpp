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

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrade/criteria.hpp"
#include "skillgrade/indicators.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/records.hpp"

namespace skillgrade::rules {

/// Locates a timestamp written in `format` (%Y %m %d %H %M %S plus literal
/// characters) inside `name`. The match must not touch other digits and must
/// be a real calendar date and time.
std::optional<std::string> find_timestamp(std::string_view name, std::string_view format);

/// Immutable set of approved rules. Safe to share across threads.
class RuleEngine {
 public:
  /// All-or-nothing: load_error on a non-approved rule ("status"), a
  /// repeated rule id ("duplicate") or a definition that fails validation.
  static RuleEngine load(std::vector<criteria::RuleDefinition> definitions, const PointTable& max_points);

  /// Parses rule documents first; an unknown primitive surfaces as
  /// load_error("unknown_primitive ...").
  static RuleEngine load_documents(const std::vector<std::string>& documents, const PointTable& max_points);

  std::size_t size() const { return rules_.size(); }
  const std::vector<criteria::RuleDefinition>& definitions() const { return definitions_; }

  /// One record per (rule, scope), sorted by (indicator, rule_id, scope).
  /// A rule whose scope is empty emits a single failing record with scope
  /// "(none)".
  std::vector<ResultRecord> execute(const ingest::StructuredContent& content) const;

 private:
  struct CompiledRule {
    const criteria::RuleDefinition* def;
    std::optional<std::regex> pattern;
  };

  RuleEngine() = default;

  std::vector<criteria::RuleDefinition> definitions_;
  std::vector<CompiledRule> rules_;
};

inline RuleEngine load_rules(std::vector<criteria::RuleDefinition> definitions, const PointTable& max_points) {
  return RuleEngine::load(std::move(definitions), max_points);
}

inline std::vector<ResultRecord> execute(const RuleEngine& engine, const ingest::StructuredContent& content) {
  return engine.execute(content);
}

}  // namespace skillgrade::rules
