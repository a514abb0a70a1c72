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

#include "skillgrade/workspace.hpp"

#include <algorithm>
#include <regex>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::app {

namespace fs = std::filesystem;

namespace {

constexpr int kIndexWidth = 3;

std::vector<std::pair<std::size_t, fs::path>> numbered_files(const fs::path& dir, const std::string& prefix) {
  std::vector<std::pair<std::size_t, fs::path>> out;
  if (!fs::exists(dir)) return out;
  const std::regex re("^" + prefix + R"(-(\d+)\.json$)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, re)) out.emplace_back(std::stoul(m[1].str()), entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

Workspace Workspace::create(const fs::path& root) {
  Workspace ws(root);
  for (const auto& dir : {ws.criteria_dir(), ws.templates_dir(), ws.guidance_dir(), ws.fixtures_dir(),
                          ws.submissions_dir(), ws.results_dir(), ws.runs_dir()})
    fs::create_directories(dir);
  if (!fs::exists(ws.config_path())) text::write_file_atomic(ws.config_path(), to_json(Config{}).dump(2) + "\n");
  return ws;
}

Config Workspace::config() const { return load_config(config_path()); }

std::vector<std::string> Workspace::submission_ids() const {
  std::vector<std::string> ids;
  if (!fs::exists(submissions_dir())) return ids;
  for (const auto& entry : fs::directory_iterator(submissions_dir()))
    if (entry.is_directory()) ids.push_back(entry.path().filename().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t Workspace::next_run_index(const std::string& id) const {
  const auto files = numbered_files(results_dir() / id, "run");
  return files.empty() ? 1 : files.back().first + 1;
}

fs::path Workspace::report_path(const std::string& id, std::size_t run_index) const {
  return results_dir() / id / ("run-" + text::zero_pad(run_index, kIndexWidth) + ".json");
}

fs::path Workspace::write_report(const scoring::AssessmentReport& report) const {
  const auto path = report_path(report.submission_id, report.run_index);
  if (fs::exists(path)) throw Error(ErrorCode::io_error, "refusing to overwrite " + path.string());
  auto j = scoring::to_json(report);
  j.erase("run_index");
  text::write_file_atomic(path, j.dump(2) + "\n");
  return path;
}

std::vector<scoring::AssessmentReport> Workspace::load_reports() const {
  std::vector<scoring::AssessmentReport> out;
  for (const auto& id : submission_ids()) {
    for (const auto& [index, path] : numbered_files(results_dir() / id, "run")) {
      nlohmann::ordered_json j;
      try {
        j = nlohmann::ordered_json::parse(text::read_file(path));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
      }
      j["run_index"] = index;
      out.push_back(scoring::report_from_json(j));
    }
  }
  return out;
}

fs::path Workspace::next_artifact_path(std::string_view kind) const {
  const auto files = numbered_files(runs_dir(), std::string(kind));
  const std::size_t next = files.empty() ? 1 : files.back().first + 1;
  return runs_dir() / (std::string(kind) + "-" + text::zero_pad(next, kIndexWidth) + ".json");
}

std::vector<fs::path> Workspace::artifacts(std::string_view kind) const {
  std::vector<fs::path> out;
  for (const auto& [index, path] : numbered_files(runs_dir(), std::string(kind))) out.push_back(path);
  return out;
}

ingest::StructuredContent load_submission(const fs::path& dir, const std::string& submission_id, const Config& config,
                                          const ingest::TextRecognizer& recognizer) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::not_found, "submission " + submission_id);
  std::vector<std::string> diagnostics;

  std::vector<fs::path> documents;
  for (const auto& f : sorted_files(dir))
    if (f.stem() == "testcases" && ingest::format_for_path(f)) documents.push_back(f);
  if (documents.empty()) throw Error(ErrorCode::parse_error, submission_id + ": no testcases.json or testcases.csv");
  if (documents.size() > 1) throw Error(ErrorCode::parse_error, submission_id + ": more than one test case document");
  auto parsed = ingest::parse_testcase_document(text::read_file(documents.front()),
                                                *ingest::format_for_path(documents.front()));
  for (const auto& e : parsed.row_errors)
    diagnostics.push_back(documents.front().filename().string() + " row " + std::to_string(e.row) + ": " + e.message);

  std::vector<ingest::CodeSnippet> snippets;
  for (const auto& f : sorted_files(dir / "scripts")) {
    const auto ext = lower(f.extension().string());
    const auto profile = std::find_if(config.languages.begin(), config.languages.end(), [&](const auto& p) {
      return std::find(p.extensions.begin(), p.extensions.end(), ext) != p.extensions.end();
    });
    if (profile == config.languages.end()) {
      diagnostics.push_back("scripts/" + f.filename().string() + ": no language profile, skipped");
      continue;
    }
    const auto source = text::read_file(f);
    if (!text::is_valid_utf8(source)) {
      diagnostics.push_back("scripts/" + f.filename().string() + ": not UTF-8, skipped");
      continue;
    }
    snippets.push_back(ingest::analyze_script(f.filename().string(), source, *profile));
  }

  std::vector<ingest::ImageTextUnit> images;
  for (const auto& f : sorted_files(dir / "screenshots")) {
    const auto ext = lower(f.extension().string());
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
    try {
      images.push_back(ingest::recognize_screenshot(f, recognizer));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::stub_missing) throw;
      diagnostics.push_back("screenshots/" + f.filename().string() + ": no OCR text (" + e.detail() + ")");
      images.push_back({f.filename().string(), {}, recognizer.kind()});
    }
  }

  auto content = ingest::build_structured_content(submission_id, std::move(parsed.units), std::move(snippets),
                                                  std::move(images));
  diagnostics.insert(diagnostics.end(), content.diagnostics.begin(), content.diagnostics.end());
  content.diagnostics = std::move(diagnostics);
  return content;
}

}  // namespace skillgrade::app
