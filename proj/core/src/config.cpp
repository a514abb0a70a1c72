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

#include "skillgrade/config.hpp"

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::app {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

ingest::LanguageProfile language_from_json(const json& j) {
  const auto name = j.at("name").get<std::string>();
  const std::string base = j.value("base", name);
  ingest::LanguageProfile p;
  if (base == "python") {
    p = ingest::python_profile();
  } else if (base == "java") {
    p = ingest::java_profile();
  } else {
    throw Error(ErrorCode::config_error, "languages: no built-in profile " + base);
  }
  p.name = name;
  read(j, "extensions", p.extensions);
  read(j, "comment_prefixes", p.comment_prefixes);
  read(j, "function_pattern", p.function_pattern);
  read(j, "screenshot_call_names", p.screenshot_call_names);
  read(j, "data_annotation_names", p.data_annotation_names);
  read(j, "keywords", p.keywords);
  read(j, "string_quotes", p.string_quotes);
  p.validate();
  return p;
}

std::string backend_kind_name(llm::BackendKind k) { return k == llm::BackendKind::http_chat ? "http" : "mock"; }

}  // namespace

void Config::validate() const {
  if (languages.empty()) throw Error(ErrorCode::config_error, "languages: at least one profile required");
  for (const auto& l : languages) l.validate();
  weights.validate();
  backend.validate();
  if (!criteria::is_valid_timestamp_format(rules.timestamp_format))
    throw Error(ErrorCode::config_error, "rules.timestamp_format");
  if (!(rates.labor_per_hour > 0) || !(rates.api_per_million_tokens > 0))
    throw Error(ErrorCode::config_error, "rates must be positive");
  if (!(capacity.manual_hours_per_day > 0) || !(capacity.system_hours_per_day > 0) ||
      !(capacity.manual_parallelism >= 1) || !(capacity.system_parallelism >= 1))
    throw Error(ErrorCode::config_error, "capacity");
  if (!(supervision_seconds >= 0)) throw Error(ErrorCode::config_error, "supervision_seconds");
  if (!(qwk_step > 0)) throw Error(ErrorCode::config_error, "qwk_step");
}

Config config_from_json(const json& j) {
  Config c;
  if (!j.is_object()) throw Error(ErrorCode::config_error, "config must be a JSON object");
  try {
    if (j.contains("languages")) {
      c.languages.clear();
      for (const auto& l : j.at("languages")) c.languages.push_back(language_from_json(l));
    }
    if (j.contains("weights")) c.weights = scoring::weights_from_json(j.at("weights"));
    if (j.contains("rules")) {
      const auto& r = j.at("rules");
      read(r, "case_id_pattern", c.rules.case_id_pattern);
      read(r, "allowed_modules", c.rules.allowed_modules);
      read(r, "step_pattern", c.rules.step_pattern);
      read(r, "required_calls", c.rules.required_calls);
      read(r, "timestamp_format", c.rules.timestamp_format);
    }
    if (j.contains("granularity")) {
      const auto g = j.at("granularity").get<std::string>();
      if (g == "heading") c.granularity = criteria::Granularity::heading;
      else if (g == "paragraph") c.granularity = criteria::Granularity::paragraph;
      else throw Error(ErrorCode::config_error, "granularity " + g);
    }
    if (j.contains("backend")) {
      const auto& b = j.at("backend");
      if (b.contains("kind")) {
        const auto k = b.at("kind").get<std::string>();
        if (k == "mock") c.backend.kind = llm::BackendKind::deterministic_mock;
        else if (k == "http") c.backend.kind = llm::BackendKind::http_chat;
        else throw Error(ErrorCode::config_error, "backend.kind " + k);
      }
      read(b, "endpoint", c.backend.endpoint);
      read(b, "model", c.backend.model);
      read(b, "temperature", c.backend.temperature);
      read(b, "max_tokens", c.backend.max_tokens);
      read(b, "retries", c.backend.retries);
      read(b, "concurrency_limit", c.backend.concurrency_limit);
      read(b, "timeout_ms", c.backend.timeout_ms);
      read(b, "api_key_env", c.backend.api_key_env);
    }
    if (j.contains("ocr")) {
      const auto& o = j.at("ocr");
      const auto k = o.value("backend", std::string("sidecar"));
      if (k == "sidecar") c.ocr.backend = ingest::OcrBackend::sidecar_stub;
      else if (k == "http") c.ocr.backend = ingest::OcrBackend::http_ocr;
      else throw Error(ErrorCode::config_error, "ocr.backend " + k);
      read(o, "endpoint", c.ocr.http.endpoint);
      read(o, "timeout_ms", c.ocr.http.timeout_ms);
      read(o, "retries", c.ocr.http.retries);
      read(o, "max_in_flight", c.ocr.http.max_in_flight);
      read(o, "api_key_env", c.ocr.http.api_key_env);
    }
    if (j.contains("rates")) {
      read(j.at("rates"), "labor_per_hour", c.rates.labor_per_hour);
      read(j.at("rates"), "api_per_million_tokens", c.rates.api_per_million_tokens);
    }
    if (j.contains("capacity")) {
      const auto& k = j.at("capacity");
      read(k, "manual_hours_per_day", c.capacity.manual_hours_per_day);
      read(k, "system_hours_per_day", c.capacity.system_hours_per_day);
      read(k, "manual_parallelism", c.capacity.manual_parallelism);
      read(k, "system_parallelism", c.capacity.system_parallelism);
    }
    read(j, "supervision_seconds", c.supervision_seconds);
    read(j, "qwk_step", c.qwk_step);
    read(j, "seed", c.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config_error, e.what());
  }
  if (c.ocr.backend == ingest::OcrBackend::http_ocr && c.ocr.http.endpoint.empty())
    throw Error(ErrorCode::config_error, "ocr.endpoint");
  c.validate();
  return c;
}

ordered_json to_json(const Config& c) {
  ordered_json j;
  ordered_json langs = ordered_json::array();
  for (const auto& l : c.languages) langs.push_back({{"name", l.name}, {"extensions", l.extensions}});
  j["languages"] = langs;
  j["weights"] = scoring::to_json(c.weights);
  j["rules"] = {{"case_id_pattern", c.rules.case_id_pattern},
                {"allowed_modules", c.rules.allowed_modules},
                {"step_pattern", c.rules.step_pattern},
                {"required_calls", c.rules.required_calls},
                {"timestamp_format", c.rules.timestamp_format}};
  j["granularity"] = c.granularity == criteria::Granularity::heading ? "heading" : "paragraph";
  j["backend"] = {{"kind", backend_kind_name(c.backend.kind)},
                  {"endpoint", c.backend.endpoint},
                  {"model", c.backend.model},
                  {"temperature", c.backend.temperature},
                  {"max_tokens", c.backend.max_tokens},
                  {"retries", c.backend.retries},
                  {"concurrency_limit", c.backend.concurrency_limit},
                  {"timeout_ms", c.backend.timeout_ms},
                  {"api_key_env", c.backend.api_key_env}};
  j["ocr"] = {{"backend", c.ocr.backend == ingest::OcrBackend::sidecar_stub ? "sidecar" : "http"},
              {"endpoint", c.ocr.http.endpoint},
              {"timeout_ms", c.ocr.http.timeout_ms},
              {"retries", c.ocr.http.retries},
              {"max_in_flight", c.ocr.http.max_in_flight},
              {"api_key_env", c.ocr.http.api_key_env}};
  j["rates"] = {{"labor_per_hour", c.rates.labor_per_hour},
                {"api_per_million_tokens", c.rates.api_per_million_tokens}};
  j["capacity"] = {{"manual_hours_per_day", c.capacity.manual_hours_per_day},
                   {"system_hours_per_day", c.capacity.system_hours_per_day},
                   {"manual_parallelism", c.capacity.manual_parallelism},
                   {"system_parallelism", c.capacity.system_parallelism}};
  j["supervision_seconds"] = c.supervision_seconds;
  j["qwk_step"] = c.qwk_step;
  j["seed"] = c.seed;
  return j;
}

Config load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::config_error, "missing " + path.string());
  json j;
  try {
    j = json::parse(text::read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config_error, path.filename().string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace skillgrade::app
