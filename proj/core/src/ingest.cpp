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

#include "skillgrade/ingest.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::ingest {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kListSeparator = "|";

enum class Column { case_id, module_name, description, steps, input_data, expected_result, actual_result, screenshot_refs };

const std::vector<std::pair<std::string_view, Column>>& canonical_columns() {
  static const std::vector<std::pair<std::string_view, Column>> cols = {
      {"case_id", Column::case_id},
      {"module_name", Column::module_name},
      {"description", Column::description},
      {"steps", Column::steps},
      {"input_data", Column::input_data},
      {"expected_result", Column::expected_result},
      {"actual_result", Column::actual_result},
      {"screenshot_refs", Column::screenshot_refs},
  };
  return cols;
}

std::optional<Column> lookup_column(std::string_view name) {
  for (const auto& [key, col] : canonical_columns())
    if (key == name) return col;
  return std::nullopt;
}

void assign_scalar(TestCaseTextUnit& unit, Column col, std::string value) {
  switch (col) {
    case Column::case_id: unit.case_id = std::move(value); break;
    case Column::module_name: unit.module_name = std::move(value); break;
    case Column::description: unit.description = std::move(value); break;
    case Column::expected_result: unit.expected_result = std::move(value); break;
    case Column::actual_result: unit.actual_result = std::move(value); break;
    default: break;
  }
}

std::vector<std::string>* list_field(TestCaseTextUnit& unit, Column col) {
  switch (col) {
    case Column::steps: return &unit.steps;
    case Column::input_data: return &unit.input_data;
    case Column::screenshot_refs: return &unit.screenshot_refs;
    default: return nullptr;
  }
}

std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s.remove_prefix(3);
  return s;
}

void require_utf8(std::string_view bytes) {
  if (!text::is_valid_utf8(bytes)) throw Error(ErrorCode::parse_error, "input is not valid UTF-8");
}

// RFC 4180 records. A record that never closes its quote is reported through
// `unterminated` and consumes the rest of the input.
struct CsvRecord {
  std::vector<std::string> fields;
  bool unterminated = false;
};

std::vector<CsvRecord> read_csv_records(std::string_view s) {
  std::vector<CsvRecord> records;
  std::size_t i = 0;
  while (i < s.size()) {
    CsvRecord rec;
    std::string field;
    bool in_quotes = false;
    bool record_done = false;
    while (i < s.size() && !record_done) {
      const char c = s[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          field += c;
          ++i;
        }
        continue;
      }
      if (c == '"' && text::trim(field).empty()) {
        field.clear();
        in_quotes = true;
        ++i;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        ++i;
      } else if (c == '\r' || c == '\n') {
        if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
        ++i;
        record_done = true;
      } else {
        field += c;
        ++i;
      }
    }
    rec.unterminated = in_quotes;
    rec.fields.push_back(std::move(field));
    // Skip blank lines.
    if (rec.fields.size() == 1 && text::trim(rec.fields.front()).empty() && !rec.unterminated) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

class CsvParser final : public TestCaseParser {
 public:
  std::string_view name() const override { return "csv"; }

  ParseResult parse(std::string_view bytes) const override {
    require_utf8(bytes);
    auto records = read_csv_records(strip_bom(bytes));
    if (records.empty()) throw Error(ErrorCode::parse_error, "case_id");

    std::vector<std::string> header;
    for (const auto& f : records.front().fields) header.emplace_back(text::trim(f));
    if (std::find(header.begin(), header.end(), "case_id") == header.end())
      throw Error(ErrorCode::parse_error, "case_id");

    ParseResult result;
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      if (rec.unterminated) {
        result.row_errors.push_back({r, "unterminated quoted field"});
        continue;
      }
      if (rec.fields.size() != header.size()) {
        result.row_errors.push_back({r, "expected " + std::to_string(header.size()) + " fields, found " +
                                            std::to_string(rec.fields.size())});
        continue;
      }
      TestCaseTextUnit unit;
      for (std::size_t c = 0; c < header.size(); ++c) {
        const auto col = lookup_column(header[c]);
        if (!col) {
          unit.metadata[header[c]] = rec.fields[c];
          continue;
        }
        if (auto* list = list_field(unit, *col)) {
          *list = text::split_nonempty(rec.fields[c], kListSeparator.front());
        } else {
          assign_scalar(unit, *col, std::string(text::trim(rec.fields[c])));
        }
      }
      if (unit.case_id.empty()) {
        result.row_errors.push_back({r, "empty case_id"});
        continue;
      }
      result.units.push_back(std::move(unit));
    }
    return result;
  }
};

class JsonParser final : public TestCaseParser {
 public:
  std::string_view name() const override { return "canonical_json"; }

  ParseResult parse(std::string_view bytes) const override {
    require_utf8(bytes);
    json doc;
    try {
      doc = json::parse(strip_bom(bytes));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorCode::parse_error, "expected a top-level array");

    ParseResult result;
    for (std::size_t r = 0; r < doc.size(); ++r) {
      const auto& obj = doc[r];
      const std::size_t row = r + 1;
      if (!obj.is_object()) {
        result.row_errors.push_back({row, "record is not an object"});
        continue;
      }
      if (!obj.contains("case_id")) {
        result.row_errors.push_back({row, "missing case_id"});
        continue;
      }
      TestCaseTextUnit unit;
      std::optional<std::string> problem;
      for (const auto& [key, value] : obj.items()) {
        const auto col = lookup_column(key);
        if (!col) {
          unit.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
          continue;
        }
        if (auto* list = list_field(unit, *col)) {
          if (value.is_array()) {
            for (const auto& item : value) {
              if (!item.is_string()) {
                problem = key + " must contain only strings";
                break;
              }
              list->push_back(item.get<std::string>());
            }
          } else if (value.is_string()) {
            *list = text::split_nonempty(value.get<std::string>(), kListSeparator.front());
          } else if (!value.is_null()) {
            problem = key + " must be an array";
          }
        } else if (value.is_string()) {
          assign_scalar(unit, *col, value.get<std::string>());
        } else if (value.is_number()) {
          assign_scalar(unit, *col, value.dump());
        } else if (!value.is_null()) {
          problem = key + " must be a string";
        }
        if (problem) break;
      }
      if (!problem && unit.case_id.empty()) problem = "empty case_id";
      if (problem) {
        result.row_errors.push_back({row, *problem});
        continue;
      }
      result.units.push_back(std::move(unit));
    }
    return result;
  }
};

}  // namespace

const std::vector<std::string>& canonical_fields() {
  static const std::vector<std::string> fields = [] {
    std::vector<std::string> out;
    for (const auto& [key, col] : canonical_columns()) out.emplace_back(key);
    return out;
  }();
  return fields;
}

std::optional<DocumentFormat> format_for_path(const std::filesystem::path& path) {
  const auto name = path.filename().string();
  if (text::ends_with_icase(name, ".json")) return DocumentFormat::canonical_json;
  if (text::ends_with_icase(name, ".csv")) return DocumentFormat::csv;
  return std::nullopt;
}

std::unique_ptr<TestCaseParser> make_parser(DocumentFormat format) {
  switch (format) {
    case DocumentFormat::canonical_json: return std::make_unique<JsonParser>();
    case DocumentFormat::csv: return std::make_unique<CsvParser>();
  }
  return nullptr;
}

ParseResult parse_testcase_document(std::string_view bytes, DocumentFormat format) {
  return make_parser(format)->parse(bytes);
}

std::string to_canonical_json(const std::vector<TestCaseTextUnit>& units) {
  ordered_json doc = ordered_json::array();
  for (const auto& u : units) {
    ordered_json obj;
    obj["case_id"] = u.case_id;
    obj["module_name"] = u.module_name;
    obj["description"] = u.description;
    obj["steps"] = u.steps;
    obj["input_data"] = u.input_data;
    obj["expected_result"] = u.expected_result;
    obj["actual_result"] = u.actual_result;
    obj["screenshot_refs"] = u.screenshot_refs;
    for (const auto& [k, v] : u.metadata) obj[k] = v;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

StructuredContent build_structured_content(std::string submission_id, std::vector<TestCaseTextUnit> units,
                                           std::vector<CodeSnippet> snippets, std::vector<ImageTextUnit> images) {
  StructuredContent content;
  content.submission_id = std::move(submission_id);

  std::set<std::string> seen;
  for (const auto& u : units) {
    if (!seen.insert(u.case_id).second)
      throw Error(ErrorCode::content_error, "duplicate case_id " + u.case_id);
  }

  std::set<std::string> image_names;
  for (const auto& img : images) image_names.insert(img.image_ref);

  for (const auto& u : units) {
    std::vector<std::string> linked;
    auto add = [&linked](const std::string& ref) {
      if (std::find(linked.begin(), linked.end(), ref) == linked.end()) linked.push_back(ref);
    };
    for (const auto& ref : u.screenshot_refs) {
      if (image_names.count(ref)) {
        add(ref);
      } else {
        content.dangling[u.case_id].push_back(ref);
        content.diagnostics.push_back("dangling screenshot ref " + ref + " in " + u.case_id);
      }
    }
    const std::string prefix = u.case_id + "_";
    for (const auto& img : images) {
      if (text::starts_with(img.image_ref, prefix) && text::ends_with_icase(img.image_ref, ".png")) add(img.image_ref);
    }
    if (!linked.empty()) content.links[u.case_id] = std::move(linked);
  }

  for (const auto& snip : snippets) {
    for (const auto& call : snip.screenshot_calls) {
      const auto base = std::filesystem::path(call.filename_argument).filename().string();
      if (!base.empty() && !image_names.count(base))
        content.diagnostics.push_back("script " + snip.source_id + " line " + std::to_string(call.line) +
                                      " captures " + call.filename_argument + " which is not in the bundle");
    }
  }

  content.test_cases = std::move(units);
  content.snippets = std::move(snippets);
  content.image_texts = std::move(images);
  return content;
}

}  // namespace skillgrade::ingest
