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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>

namespace skillgrade::llm {

struct LlmResponse {
  std::string text;
  std::uint64_t prompt_tokens = 0;
  std::uint64_t completion_tokens = 0;
  std::chrono::milliseconds latency{0};
  std::string backend_id;
};

enum class BackendKind { http_chat, deterministic_mock };

struct LlmBackendConfig {
  BackendKind kind = BackendKind::deterministic_mock;
  std::string endpoint;  // full chat-completions URL for http_chat
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;
  int retries = 1;
  int concurrency_limit = 4;
  int timeout_ms = 60000;
  std::string api_key_env = "SKILLGRADE_API_KEY";
  std::filesystem::path fixtures_dir;

  /// config_error when a field is out of range.
  void validate() const;
};

std::size_t whitespace_token_count(std::string_view s);

/// Name of the fixture file a mock backend looks up for `prompt`.
std::string fixture_file_name(std::string_view prompt);

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string id() const = 0;
  virtual LlmResponse complete(const std::string& prompt) = 0;
};

/// Replays fixtures keyed by the prompt digest. Token counts are synthetic:
/// whitespace-separated tokens of the prompt and of the fixture text.
class MockBackend final : public LlmBackend {
 public:
  explicit MockBackend(std::filesystem::path fixtures_dir = {});
  std::string id() const override { return "mock"; }
  void register_fixture(std::string_view prompt, std::string response);
  LlmResponse complete(const std::string& prompt) override;

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
  std::map<std::string, std::string> fixtures_;
};

/// Answers every prompt the pipeline issues with a deterministic,
/// well-formed completion derived from the prompt digest. Used to produce
/// mock fixtures for new workspaces; optionally records each exchange into
/// `record_dir` in the MockBackend layout.
class SynthesizingBackend final : public LlmBackend {
 public:
  explicit SynthesizingBackend(std::filesystem::path record_dir = {});
  std::string id() const override { return "synthesizer"; }
  LlmResponse complete(const std::string& prompt) override;

  static std::string respond(std::string_view prompt);

 private:
  std::filesystem::path record_dir_;
};

/// OpenAI-style chat-completions client. Retries transport failures,
/// timeouts, 408, 429 and 5xx up to `retries` times.
class HttpChatBackend final : public LlmBackend {
 public:
  explicit HttpChatBackend(LlmBackendConfig config);
  std::string id() const override { return "http:" + config_.model; }
  LlmResponse complete(const std::string& prompt) override;

 private:
  LlmBackendConfig config_;
};

struct UsageSnapshot {
  std::uint64_t calls = 0;
  std::uint64_t prompt_tokens = 0;
  std::uint64_t completion_tokens = 0;
};

class UsageTally {
 public:
  void add(const LlmResponse& r);
  UsageSnapshot snapshot() const;

 private:
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> prompt_tokens_{0};
  std::atomic<std::uint64_t> completion_tokens_{0};
};

/// Caps in-flight calls on the wrapped backend and tallies usage.
class ThrottledBackend final : public LlmBackend {
 public:
  ThrottledBackend(std::shared_ptr<LlmBackend> inner, int concurrency_limit);
  std::string id() const override { return inner_->id(); }
  LlmResponse complete(const std::string& prompt) override;
  const UsageTally& usage() const { return usage_; }

 private:
  std::shared_ptr<LlmBackend> inner_;
  std::counting_semaphore<> slots_;
  UsageTally usage_;
};

std::shared_ptr<ThrottledBackend> make_backend(const LlmBackendConfig& config);

}  // namespace skillgrade::llm
