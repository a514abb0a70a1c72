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

#include "skillgrade/error.hpp"

namespace skillgrade {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::content_error: return "content_error";
    case ErrorCode::stub_missing: return "stub_missing";
    case ErrorCode::ocr_backend_error: return "ocr_backend_error";
    case ErrorCode::generation_failed: return "generation_failed";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::invalid_transition: return "invalid_transition";
    case ErrorCode::load_error: return "load_error";
    case ErrorCode::render_error: return "render_error";
    case ErrorCode::backend_error: return "backend_error";
    case ErrorCode::fixture_missing: return "fixture_missing";
    case ErrorCode::extraction_incomplete: return "extraction_incomplete";
    case ErrorCode::merge_error: return "merge_error";
    case ErrorCode::stability_error: return "stability_error";
    case ErrorCode::metric_error: return "metric_error";
    case ErrorCode::undefined_metric: return "undefined_metric";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::gate_error: return "gate_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + "(" + detail + ")"),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace skillgrade
