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

#include <stdexcept>
#include <string>
#include <string_view>

namespace skillgrade {

enum class ErrorCode {
  parse_error,
  content_error,
  stub_missing,
  ocr_backend_error,
  generation_failed,
  not_found,
  invalid_transition,
  load_error,
  render_error,
  backend_error,
  fixture_missing,
  extraction_incomplete,
  merge_error,
  stability_error,
  metric_error,
  undefined_metric,
  config_error,
  gate_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library. `detail()` carries the
/// machine-checkable payload (a column name, a missing id list, an HTTP
/// status) so callers can branch without parsing `what()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace skillgrade
