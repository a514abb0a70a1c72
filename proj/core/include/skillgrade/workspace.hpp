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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "skillgrade/config.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/scoring.hpp"

namespace skillgrade::app {

/// On-disk layout:
///
///   config.json  requirements.md  criteria/  templates/  guidance/
///   fixtures/    submissions/<id>/{testcases.json|csv, scripts/, screenshots/}
///   results/<id>/run-NNN.json    runs/<kind>-NNN.json
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  /// Creates missing directories and writes a default config if none exists.
  static Workspace create(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path config_path() const { return root_ / "config.json"; }
  std::filesystem::path requirements_path() const { return root_ / "requirements.md"; }
  std::filesystem::path criteria_dir() const { return root_ / "criteria"; }
  std::filesystem::path templates_dir() const { return root_ / "templates"; }
  std::filesystem::path guidance_dir() const { return root_ / "guidance"; }
  std::filesystem::path fixtures_dir() const { return root_ / "fixtures"; }
  std::filesystem::path submissions_dir() const { return root_ / "submissions"; }
  std::filesystem::path results_dir() const { return root_ / "results"; }
  std::filesystem::path runs_dir() const { return root_ / "runs"; }

  Config config() const;

  /// Sorted submission directory names.
  std::vector<std::string> submission_ids() const;
  std::filesystem::path submission_dir(const std::string& id) const { return submissions_dir() / id; }

  /// One past the highest persisted run index for `id` (runs start at 1).
  std::size_t next_run_index(const std::string& id) const;
  std::filesystem::path report_path(const std::string& id, std::size_t run_index) const;

  /// Atomic write; io_error if that run index already has a report. The run
  /// index lives in the file name only, so repeats of an unchanged
  /// submission produce identical bytes.
  std::filesystem::path write_report(const scoring::AssessmentReport& report) const;
  std::vector<scoring::AssessmentReport> load_reports() const;

  /// Next free `runs/<kind>-NNN.json`.
  std::filesystem::path next_artifact_path(std::string_view kind) const;
  std::vector<std::filesystem::path> artifacts(std::string_view kind) const;

 private:
  std::filesystem::path root_;
};

/// Parses one submission directory into structured content. Row errors,
/// unreadable scripts and missing OCR text become diagnostics; a missing or
/// malformed test case document is a parse_error.
ingest::StructuredContent load_submission(const std::filesystem::path& dir, const std::string& submission_id,
                                          const Config& config, const ingest::TextRecognizer& recognizer);

}  // namespace skillgrade::app
