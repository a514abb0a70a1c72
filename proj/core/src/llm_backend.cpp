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

#include "skillgrade/llm_backend.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "http_util.hpp"
#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::llm {

void LlmBackendConfig::validate() const {
  if (temperature < 0.0 || temperature > 1.0) throw Error(ErrorCode::config_error, "temperature must lie in [0,1]");
  if (retries < 0) throw Error(ErrorCode::config_error, "retries must be >= 0");
  if (concurrency_limit < 1) throw Error(ErrorCode::config_error, "concurrency_limit must be >= 1");
  if (max_tokens < 1) throw Error(ErrorCode::config_error, "max_tokens must be >= 1");
  if (kind == BackendKind::http_chat && endpoint.empty()) throw Error(ErrorCode::config_error, "http backend needs an endpoint");
}

std::size_t whitespace_token_count(std::string_view s) {
  std::size_t count = 0;
  bool in_token = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

std::string fixture_file_name(std::string_view prompt) { return text::digest_hex(prompt) + ".txt"; }

// --- MockBackend ------------------------------------------------------------

MockBackend::MockBackend(std::filesystem::path fixtures_dir) : dir_(std::move(fixtures_dir)) {}

void MockBackend::register_fixture(std::string_view prompt, std::string response) {
  std::lock_guard lock(mu_);
  fixtures_[text::digest_hex(prompt)] = std::move(response);
}

LlmResponse MockBackend::complete(const std::string& prompt) {
  const auto digest = text::digest_hex(prompt);
  std::optional<std::string> body;
  {
    std::lock_guard lock(mu_);
    if (auto it = fixtures_.find(digest); it != fixtures_.end()) body = it->second;
  }
  if (!body && !dir_.empty()) {
    const auto path = dir_ / (digest + ".txt");
    if (std::filesystem::exists(path)) body = text::read_file(path);
  }
  if (!body) throw Error(ErrorCode::fixture_missing, digest);
  LlmResponse r;
  r.text = std::move(*body);
  r.prompt_tokens = whitespace_token_count(prompt);
  r.completion_tokens = whitespace_token_count(r.text);
  r.backend_id = id();
  return r;
}

// --- SynthesizingBackend ----------------------------------------------------

namespace {

std::uint64_t mix(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string between(std::string_view prompt, std::string_view open, std::string_view close) {
  const auto a = prompt.find(open);
  if (a == std::string_view::npos) return {};
  const auto start = a + open.size();
  const auto b = prompt.find(close, start);
  return std::string(text::trim(prompt.substr(start, b == std::string_view::npos ? std::string_view::npos : b - start)));
}

std::string respond_checklist(std::string_view prompt) {
  const auto requirement = between(prompt, "REQUIREMENT:\n", "\nEND REQUIREMENT");
  std::ostringstream out;
  int n = 0;
  for (auto sentence : text::split_nonempty(requirement, '.')) {
    for (auto& c : sentence)
      if (c == '\n' || c == '|') c = ' ';
    out << "ITEM: " << sentence << " | EVIDENCE: a test case or screenshot demonstrating: " << sentence << "\n";
    if (++n == 6) break;
  }
  return out.str();
}

std::string respond_rule(std::string_view prompt) {
  auto reference = between(prompt, "REFERENCE RULE:\n", "\nEND REFERENCE");
  return reference.empty() ? std::string("No rule can be derived from this guidance.\n") : "```json\n" + reference + "\n```\n";
}

std::string respond_rubric(std::string_view prompt) {
  const auto guidance = between(prompt, "GUIDANCE:\n", "\nEND GUIDANCE");
  std::ostringstream out;
  bool rubric = false;
  for (const auto& line : text::lines(guidance)) {
    auto t = text::trim(line);
    if (t.empty()) continue;
    if (text::starts_with(t, "- ")) {
      out << "DEDUCT: " << t.substr(2) << "\n";
    } else if (!rubric) {
      out << "RUBRIC: " << t << "\n";
      rubric = true;
    }
  }
  if (!rubric) out << "RUBRIC: " << between(prompt, "INDICATOR:", "\n") << "\n";
  return out.str();
}

std::string respond_assessment(std::string_view prompt) {
  static const std::regex score_re(R"(SCORE\[([A-Z]+_[0-9]+)\]: <number between 0 and ([0-9.]+)>)");
  const auto digest = text::digest_hex(prompt);
  std::ostringstream out;
  std::string s(prompt);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), score_re); it != std::sregex_iterator(); ++it) {
    const auto id = (*it)[1].str();
    const double max = std::stod((*it)[2].str());
    const auto h = mix(digest + id);
    const double fraction = 0.6 + 0.4 * static_cast<double>(h % 9) / 8.0;
    const double score = std::round(max * fraction * 2.0) / 2.0;
    out << "SCORE[" << id << "]: " << text::format_number(score) << "\n";
    out << "FEEDBACK[" << id << "]: assessed against the checklist (ref " << digest.substr(0, 8) << ")\n";
  }
  return out.str();
}

}  // namespace

SynthesizingBackend::SynthesizingBackend(std::filesystem::path record_dir) : record_dir_(std::move(record_dir)) {}

std::string SynthesizingBackend::respond(std::string_view prompt) {
  if (text::starts_with(prompt, "TASK: CHECKLIST")) return respond_checklist(prompt);
  if (text::starts_with(prompt, "TASK: RULE")) return respond_rule(prompt);
  if (text::starts_with(prompt, "TASK: RUBRIC")) return respond_rubric(prompt);
  return respond_assessment(prompt);
}

LlmResponse SynthesizingBackend::complete(const std::string& prompt) {
  LlmResponse r;
  r.text = respond(prompt);
  r.prompt_tokens = whitespace_token_count(prompt);
  r.completion_tokens = whitespace_token_count(r.text);
  r.backend_id = id();
  if (!record_dir_.empty()) text::write_file_atomic(record_dir_ / fixture_file_name(prompt), r.text);
  return r;
}

// --- HttpChatBackend --------------------------------------------------------

HttpChatBackend::HttpChatBackend(LlmBackendConfig config) : config_(std::move(config)) { config_.validate(); }

LlmResponse HttpChatBackend::complete(const std::string& prompt) {
  const auto url = detail::split_url(config_.endpoint);
  nlohmann::json body;
  body["model"] = config_.model;
  body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_tokens;
  const auto payload = body.dump();

  httplib::Headers headers;
  if (const auto key = detail::env_or_empty(config_.api_key_env); !key.empty())
    headers.emplace("Authorization", "Bearer " + key);

  const auto started = std::chrono::steady_clock::now();
  int last_status = 0;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config_.timeout_ms));
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_status = 0;
      continue;
    }
    last_status = res->status;
    if (res->status >= 200 && res->status < 300) {
      LlmResponse r;
      try {
        const auto doc = nlohmann::json::parse(res->body);
        r.text = doc.at("choices").at(0).at("message").at("content").get<std::string>();
        if (doc.contains("usage")) {
          r.prompt_tokens = doc["usage"].value("prompt_tokens", 0ULL);
          r.completion_tokens = doc["usage"].value("completion_tokens", 0ULL);
        }
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::backend_error, std::string("malformed response: ") + e.what());
      }
      r.latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
      r.backend_id = id();
      return r;
    }
    if (!detail::retriable_status(res->status)) break;
  }
  throw Error(ErrorCode::backend_error, last_status ? std::to_string(last_status) : "timeout");
}

// --- Usage and throttling ---------------------------------------------------

void UsageTally::add(const LlmResponse& r) {
  calls_.fetch_add(1, std::memory_order_relaxed);
  prompt_tokens_.fetch_add(r.prompt_tokens, std::memory_order_relaxed);
  completion_tokens_.fetch_add(r.completion_tokens, std::memory_order_relaxed);
}

UsageSnapshot UsageTally::snapshot() const {
  return {calls_.load(), prompt_tokens_.load(), completion_tokens_.load()};
}

ThrottledBackend::ThrottledBackend(std::shared_ptr<LlmBackend> inner, int concurrency_limit)
    : inner_(std::move(inner)), slots_(std::max(1, concurrency_limit)) {}

LlmResponse ThrottledBackend::complete(const std::string& prompt) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{slots_};
  auto r = inner_->complete(prompt);
  usage_.add(r);
  return r;
}

std::shared_ptr<ThrottledBackend> make_backend(const LlmBackendConfig& config) {
  config.validate();
  std::shared_ptr<LlmBackend> inner;
  if (config.kind == BackendKind::http_chat) {
    inner = std::make_shared<HttpChatBackend>(config);
  } else {
    inner = std::make_shared<MockBackend>(config.fixtures_dir);
  }
  return std::make_shared<ThrottledBackend>(std::move(inner), config.concurrency_limit);
}

}  // namespace skillgrade::llm
