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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skillgrade/criteria.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/llm_backend.hpp"
#include "skillgrade/metrics.hpp"
#include "skillgrade/scoring.hpp"

namespace skillgrade::app {

struct OcrSettings {
  ingest::OcrBackend backend = ingest::OcrBackend::sidecar_stub;
  ingest::HttpOcrConfig http;
};

/// Workspace configuration. Every key is optional in the file; missing
/// keys take the defaults below.
struct Config {
  std::vector<ingest::LanguageProfile> languages = {ingest::python_profile(), ingest::java_profile()};
  scoring::WeightConfig weights = scoring::WeightConfig::defaults();
  criteria::RuleSettings rules;
  criteria::Granularity granularity = criteria::Granularity::heading;
  llm::LlmBackendConfig backend;
  OcrSettings ocr;
  metrics::Rates rates;
  metrics::CapacityParams capacity;
  /// Human supervision time per system-assessed submission.
  double supervision_seconds = 30.0;
  double qwk_step = metrics::kDefaultQwkStep;
  std::uint64_t seed = 20240101;

  /// config_error naming the first invalid field.
  void validate() const;
};

/// Languages are objects with a "name" of a built-in profile ("python",
/// "java") and optional overrides for its list fields.
Config config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Config& c);

Config load_config(const std::filesystem::path& path);

}  // namespace skillgrade::app
