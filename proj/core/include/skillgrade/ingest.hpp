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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skillgrade::ingest {

// ---------------------------------------------------------------------------
// Test case documents
// ---------------------------------------------------------------------------

struct TestCaseTextUnit {
  std::string case_id;
  std::string module_name;
  std::string description;
  std::vector<std::string> steps;
  std::vector<std::string> input_data;
  std::string expected_result;
  std::string actual_result;
  std::vector<std::string> screenshot_refs;
  /// Columns/keys outside the canonical set, preserved verbatim.
  std::map<std::string, std::string> metadata;

  bool operator==(const TestCaseTextUnit&) const = default;
};

/// The canonical keys/columns, in document order.
const std::vector<std::string>& canonical_fields();

enum class DocumentFormat { canonical_json, csv };

std::optional<DocumentFormat> format_for_path(const std::filesystem::path& path);

struct RowError {
  std::size_t row = 0;  // 1-based record index (data rows for CSV)
  std::string message;
};

struct ParseResult {
  std::vector<TestCaseTextUnit> units;
  std::vector<RowError> row_errors;
};

/// Adapter seam for document formats. New formats (office documents, PDF
/// extractors) plug in here and produce the same unit list.
class TestCaseParser {
 public:
  virtual ~TestCaseParser() = default;
  virtual std::string_view name() const = 0;
  virtual ParseResult parse(std::string_view bytes) const = 0;
};

std::unique_ptr<TestCaseParser> make_parser(DocumentFormat format);

/// Throws parse_error when the bytes are not UTF-8, the document is not the
/// declared format, or the case_id column is absent. Row-level problems are
/// collected in `row_errors` and parsing continues.
ParseResult parse_testcase_document(std::string_view bytes, DocumentFormat format);

/// Canonical JSON array; metadata entries are written back as extra keys.
std::string to_canonical_json(const std::vector<TestCaseTextUnit>& units);

// ---------------------------------------------------------------------------
// Test scripts
// ---------------------------------------------------------------------------

enum class BlockStyle { braces, indentation };

struct LanguageProfile {
  std::string name;
  std::vector<std::string> extensions;  // ".py", ".java"
  std::vector<std::pair<char, char>> delimiter_pairs;
  std::string string_quotes = "\"'";
  bool triple_quoted_strings = false;
  std::vector<std::string> comment_prefixes;
  std::optional<std::pair<std::string, std::string>> block_comment;
  /// ECMAScript regex applied per line; group 1 = function name, group 2 =
  /// raw parameter list.
  std::string function_pattern;
  std::vector<std::string> screenshot_call_names;
  /// Matched against the full dotted annotation name or its last segment,
  /// without the leading '@'.
  std::vector<std::string> data_annotation_names;
  /// Identifiers that look like calls but are control flow.
  std::vector<std::string> keywords;
  BlockStyle block_style = BlockStyle::braces;

  /// Throws config_error on duplicate delimiter characters or a pattern that
  /// does not compile.
  void validate() const;
};

LanguageProfile python_profile();
LanguageProfile java_profile();

enum class SyntaxErrorKind { unbalanced_delimiter, unterminated_string, empty_file };
std::string_view to_string(SyntaxErrorKind kind);

struct SyntaxFault {
  int line = 0;
  SyntaxErrorKind kind = SyntaxErrorKind::unbalanced_delimiter;
  bool operator==(const SyntaxFault&) const = default;
};

struct FunctionInfo {
  std::string name;
  std::vector<std::string> params;
  int first_line = 0;
  int last_line = 0;
  bool operator==(const FunctionInfo&) const = default;
};

struct ScreenshotCall {
  std::string filename_argument;
  int line = 0;
  bool top_level = false;
  bool operator==(const ScreenshotCall&) const = default;
};

struct CodeSnippet {
  std::string source_id;
  std::vector<FunctionInfo> functions;
  std::vector<std::vector<std::string>> parameter_rows;
  std::vector<std::string> step_calls;
  std::vector<ScreenshotCall> screenshot_calls;
  bool syntax_ok = true;
  std::vector<SyntaxFault> syntax_errors;
  std::string source;

  bool operator==(const CodeSnippet&) const = default;
};

/// Lightweight two-pass analysis: a profile-driven tokenizer (strings,
/// comments, delimiters) followed by pattern extraction over the tokens.
/// Syntax faults are recorded, never thrown.
CodeSnippet analyze_script(std::string_view source_id, std::string_view text, const LanguageProfile& profile);

// ---------------------------------------------------------------------------
// Screenshots
// ---------------------------------------------------------------------------

enum class OcrBackend { http_ocr, sidecar_stub };
std::string_view to_string(OcrBackend backend);

struct ImageTextUnit {
  std::string image_ref;
  std::vector<std::string> lines;
  OcrBackend backend = OcrBackend::sidecar_stub;
  bool operator==(const ImageTextUnit&) const = default;
};

/// Trims every line and drops blank ones.
std::vector<std::string> normalize_ocr_lines(std::string_view text);

class TextRecognizer {
 public:
  virtual ~TextRecognizer() = default;
  virtual OcrBackend kind() const = 0;
  virtual ImageTextUnit recognize(const std::filesystem::path& image) const = 0;
};

/// Reads `<image>.txt` beside the image; stub_missing when absent.
class SidecarRecognizer final : public TextRecognizer {
 public:
  OcrBackend kind() const override { return OcrBackend::sidecar_stub; }
  ImageTextUnit recognize(const std::filesystem::path& image) const override;
};

struct HttpOcrConfig {
  std::string endpoint;  // "http://host:port/path"
  int timeout_ms = 10000;
  int retries = 2;
  int max_in_flight = 8;
  std::string api_key_env;
};

/// POSTs {"image_ref", "image_base64"} and expects {"lines": [...]} back.
class HttpOcrRecognizer final : public TextRecognizer {
 public:
  explicit HttpOcrRecognizer(HttpOcrConfig config);
  ~HttpOcrRecognizer() override;
  OcrBackend kind() const override { return OcrBackend::http_ocr; }
  ImageTextUnit recognize(const std::filesystem::path& image) const override;

 private:
  HttpOcrConfig config_;
  mutable std::counting_semaphore<> in_flight_;
};

ImageTextUnit recognize_screenshot(const std::filesystem::path& image, const TextRecognizer& recognizer);

// ---------------------------------------------------------------------------
// Structured content
// ---------------------------------------------------------------------------

struct StructuredContent {
  std::string submission_id;
  std::vector<TestCaseTextUnit> test_cases;
  std::vector<CodeSnippet> snippets;
  std::vector<ImageTextUnit> image_texts;
  /// case_id -> image refs, only refs that exist in `image_texts`.
  std::map<std::string, std::vector<std::string>> links;
  /// case_id -> explicit refs that name no image in the bundle.
  std::map<std::string, std::vector<std::string>> dangling;
  std::vector<std::string> diagnostics;
};

/// Links each case to its screenshots: explicit refs first, then images
/// named `<case_id>_*.png`. Throws content_error on a duplicate case_id.
StructuredContent build_structured_content(std::string submission_id, std::vector<TestCaseTextUnit> units,
                                           std::vector<CodeSnippet> snippets, std::vector<ImageTextUnit> images);

}  // namespace skillgrade::ingest
