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

#include <chrono>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "http_util.hpp"
#include "skillgrade/error.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::ingest {

std::string_view to_string(OcrBackend backend) {
  return backend == OcrBackend::http_ocr ? "http_ocr" : "sidecar_stub";
}

std::vector<std::string> normalize_ocr_lines(std::string_view body) {
  std::vector<std::string> out;
  for (const auto& line : text::lines(body)) {
    auto t = text::trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

ImageTextUnit SidecarRecognizer::recognize(const std::filesystem::path& image) const {
  auto sidecar = image;
  sidecar += ".txt";
  if (!std::filesystem::exists(sidecar)) throw Error(ErrorCode::stub_missing, sidecar.filename().string());
  ImageTextUnit unit;
  unit.image_ref = image.filename().string();
  unit.lines = normalize_ocr_lines(text::read_file(sidecar));
  unit.backend = OcrBackend::sidecar_stub;
  return unit;
}

HttpOcrRecognizer::HttpOcrRecognizer(HttpOcrConfig config)
    : config_(std::move(config)), in_flight_(std::max(1, config_.max_in_flight)) {}

HttpOcrRecognizer::~HttpOcrRecognizer() = default;

ImageTextUnit HttpOcrRecognizer::recognize(const std::filesystem::path& image) const {
  if (!std::filesystem::exists(image)) throw Error(ErrorCode::io_error, "missing image " + image.string());
  const auto url = detail::split_url(config_.endpoint);

  nlohmann::json body;
  body["image_ref"] = image.filename().string();
  body["image_base64"] = httplib::detail::base64_encode(text::read_file(image));
  const auto payload = body.dump();

  httplib::Headers headers;
  if (const auto key = detail::env_or_empty(config_.api_key_env); !key.empty())
    headers.emplace("Authorization", "Bearer " + key);

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  int last_status = 0;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config_.timeout_ms));
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_status = 0;  // transport failure or timeout
      continue;
    }
    last_status = res->status;
    if (res->status >= 200 && res->status < 300) {
      ImageTextUnit unit;
      unit.image_ref = image.filename().string();
      unit.backend = OcrBackend::http_ocr;
      try {
        const auto doc = nlohmann::json::parse(res->body);
        for (const auto& line : doc.at("lines")) {
          auto t = text::trim(line.get<std::string>());
          if (!t.empty()) unit.lines.emplace_back(t);
        }
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ocr_backend_error, std::string("malformed OCR response: ") + e.what());
      }
      return unit;
    }
    if (!detail::retriable_status(res->status)) break;
  }
  throw Error(ErrorCode::ocr_backend_error, last_status ? std::to_string(last_status) : "timeout");
}

ImageTextUnit recognize_screenshot(const std::filesystem::path& image, const TextRecognizer& recognizer) {
  return recognizer.recognize(image);
}

}  // namespace skillgrade::ingest
