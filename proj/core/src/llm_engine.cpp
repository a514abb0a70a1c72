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

#include "skillgrade/llm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <set>
#include <sstream>

#include "skillgrade/error.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::llm {

namespace {

const std::regex& placeholder_re() {
  static const std::regex re(R"(\{\{([^{}]*)\}\})");
  return re;
}

bool known_placeholder(const std::string& name) {
  const auto& names = placeholder_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string_view section_header(const std::string& name) {
  if (name == "input") return "### Input";
  if (name == "rules") return "### Rules";
  if (name == "criteria") return "### Criteria";
  return "### Output";
}

std::string work_product_phrase(TemplateKind k) {
  switch (k) {
    case TemplateKind::test_case_document: return "test case document";
    case TemplateKind::test_script_code: return "test script code";
    case TemplateKind::test_screenshot: return "test execution screenshots";
  }
  return "work product";
}

std::string render_checklists(const std::vector<criteria::Checklist>& checklists) {
  std::ostringstream out;
  bool any = false;
  for (const auto& c : checklists) {
    for (const auto& item : c.items) {
      out << "- [" << c.unit_id << "] " << item.text;
      if (!item.expected_evidence.empty()) out << " (evidence: " << item.expected_evidence << ")";
      out << "\n";
      any = true;
    }
  }
  if (!any) return std::string(kNoChecklistSentinel);
  auto s = out.str();
  s.pop_back();
  return s;
}

std::string render_criteria(const std::vector<criteria::SubjectiveCriterion>& criteria, const PointTable& max_points) {
  std::ostringstream out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto& ind = indicator(c.indicator);
    if (i) out << "\n";
    out << "- " << to_string(c.indicator) << " (max " << text::format_number(max_points.at(c.indicator))
        << " points): " << ind.description << "\n";
    out << "  Rubric: " << c.rubric;
    for (const auto& d : c.deduction_rules) out << "\n  Deduct: " << d;
  }
  return out.str();
}

double parse_number(const std::string& s) {
  // strtod saturates to +/-HUGE_VAL on overflow instead of throwing.
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::string_view to_string(TemplateKind k) {
  switch (k) {
    case TemplateKind::test_case_document: return "test_case_document";
    case TemplateKind::test_script_code: return "test_script_code";
    case TemplateKind::test_screenshot: return "test_screenshot";
  }
  return "unknown";
}

std::optional<TemplateKind> parse_template_kind(std::string_view s) {
  for (auto k : all_template_kinds())
    if (to_string(k) == s) return k;
  return std::nullopt;
}

const std::vector<TemplateKind>& all_template_kinds() {
  static const std::vector<TemplateKind> kinds = {TemplateKind::test_case_document, TemplateKind::test_script_code,
                                                  TemplateKind::test_screenshot};
  return kinds;
}

const std::vector<IndicatorId>& template_indicators(TemplateKind k) {
  // Screenshot evidence belongs to the script work product but gets its own
  // prompt: runnability and screenshot coverage are judged from OCR text.
  static const auto build = [](TemplateKind kind) {
    std::vector<IndicatorId> ids;
    for (const auto& ind : indicator_registry()) {
      if (!uses_llm(ind.method)) continue;
      const bool screenshot = ind.id == IndicatorId::RUNN_2 || ind.id == IndicatorId::SUFF_2;
      const bool code = ind.work_product == WorkProduct::test_script_code && !screenshot;
      const bool doc = ind.work_product == WorkProduct::test_case_document;
      if ((kind == TemplateKind::test_screenshot && screenshot) || (kind == TemplateKind::test_script_code && code) ||
          (kind == TemplateKind::test_case_document && doc))
        ids.push_back(ind.id);
    }
    return ids;
  };
  static const std::vector<IndicatorId> doc = build(TemplateKind::test_case_document);
  static const std::vector<IndicatorId> code = build(TemplateKind::test_script_code);
  static const std::vector<IndicatorId> shot = build(TemplateKind::test_screenshot);
  switch (k) {
    case TemplateKind::test_case_document: return doc;
    case TemplateKind::test_script_code: return code;
    case TemplateKind::test_screenshot: return shot;
  }
  return doc;
}

const std::vector<std::string>& placeholder_names() {
  static const std::vector<std::string> names = {"requirement", "content",       "checklist",
                                                 "criteria",    "output_format", "work_product"};
  return names;
}

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> names = {"input", "rules", "criteria", "output"};
  return names;
}

PromptTemplate PromptTemplate::load(TemplateKind kind, std::map<std::string, std::string> sections) {
  for (const auto& [name, body] : sections) {
    const auto& names = section_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(ErrorCode::render_error, "unknown section " + name);
  }
  for (const auto& name : section_names()) {
    if (!sections.count(name)) throw Error(ErrorCode::render_error, name);
    const auto& body = sections[name];
    for (std::sregex_iterator it(body.begin(), body.end(), placeholder_re()), end; it != end; ++it) {
      const std::string ph = (*it)[1];
      if (!known_placeholder(ph)) throw Error(ErrorCode::render_error, ph);
    }
  }
  if (sections["output"].find("{{output_format}}") == std::string::npos)
    throw Error(ErrorCode::render_error, "output_format");
  PromptTemplate t;
  t.kind_ = kind;
  t.sections_ = std::move(sections);
  return t;
}

PromptTemplate PromptTemplate::parse(TemplateKind kind, std::string_view text) {
  std::map<std::string, std::string> sections;
  std::string current;
  std::vector<std::string> body;
  const auto flush = [&] {
    if (current.empty()) return;
    while (!body.empty() && text::trim(body.back()).empty()) body.pop_back();
    while (!body.empty() && text::trim(body.front()).empty()) body.erase(body.begin());
    sections[current] = text::join(body, "\n");
    body.clear();
  };
  for (const auto& line : text::lines(text)) {
    std::string name;
    for (const auto& s : section_names())
      if (text::trim(line) == section_header(s)) name = s;
    if (!name.empty()) {
      flush();
      if (sections.count(name)) throw Error(ErrorCode::render_error, "duplicate section " + name);
      current = name;
    } else if (!current.empty()) {
      body.push_back(line);
    }
  }
  flush();
  return load(kind, std::move(sections));
}

PromptTemplate PromptTemplate::default_for(TemplateKind kind) {
  return load(kind, {
                        {"input",
                         "You are grading the {{work_product}} of a software testing submission.\n\n"
                         "Requirement:\n{{requirement}}\n\nSubmission content:\n{{content}}"},
                        {"rules", "Check the submission against every constraint below before scoring.\n{{checklist}}"},
                        {"criteria",
                         "Score each indicator on its own scale using the rubric and deductions.\n{{criteria}}"},
                        {"output",
                         "Reply with exactly these lines, one SCORE and one FEEDBACK per indicator, and nothing "
                         "else.\n{{output_format}}"},
                    });
}

std::string PromptTemplate::to_text() const {
  std::ostringstream out;
  for (const auto& name : section_names()) out << section_header(name) << "\n" << sections_.at(name) << "\n\n";
  return out.str();
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& values) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& name : section_names()) {
    const auto& body = sections_.at(name);
    if (!first) out << "\n\n";
    first = false;
    out << section_header(name) << "\n";
    std::size_t last = 0;
    for (std::sregex_iterator it(body.begin(), body.end(), placeholder_re()), end; it != end; ++it) {
      const auto& m = *it;
      const std::string ph = m[1];
      const auto v = values.find(ph);
      if (v == values.end()) throw Error(ErrorCode::render_error, ph);
      out << body.substr(last, static_cast<std::size_t>(m.position(0)) - last) << v->second;
      last = static_cast<std::size_t>(m.position(0) + m.length(0));
    }
    out << body.substr(last);
  }
  out << "\n";
  return out.str();
}

std::string serialize_content(TemplateKind kind, const ingest::StructuredContent& content) {
  std::ostringstream out;
  switch (kind) {
    case TemplateKind::test_case_document:
      if (content.test_cases.empty()) return "(no test cases)";
      return ingest::to_canonical_json(content.test_cases);
    case TemplateKind::test_script_code: {
      if (content.snippets.empty()) return "(no test scripts)";
      for (const auto& s : content.snippets) {
        out << "FILE " << s.source_id << "\n";
        std::vector<std::string> fns;
        for (const auto& f : s.functions) fns.push_back(f.name);
        out << "functions: " << (fns.empty() ? "(none)" : text::join(fns, ", ")) << "\n";
        out << "syntax: "
            << (s.syntax_ok ? std::string("ok") : std::to_string(s.syntax_errors.size()) + " fault(s)") << "\n";
        out << "```\n" << s.source;
        if (!s.source.empty() && s.source.back() != '\n') out << "\n";
        out << "```\n";
      }
      break;
    }
    case TemplateKind::test_screenshot: {
      if (content.image_texts.empty()) return "(no screenshots)";
      std::map<std::string, std::vector<std::string>> owners;
      for (const auto& [case_id, refs] : content.links)
        for (const auto& r : refs) owners[r].push_back(case_id);
      for (const auto& img : content.image_texts) {
        out << "IMAGE " << img.image_ref;
        if (auto it = owners.find(img.image_ref); it != owners.end()) out << " (cases " << text::join(it->second, ", ") << ")";
        out << "\n";
        for (const auto& l : img.lines) out << "  " << l << "\n";
      }
      std::vector<std::string> inputs;
      for (const auto& tc : content.test_cases)
        for (const auto& d : tc.input_data) inputs.push_back(tc.case_id + ": " + d);
      if (!inputs.empty()) out << "INPUT DATA\n  " << text::join(inputs, "\n  ") << "\n";
      break;
    }
  }
  auto s = out.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string output_format(const std::vector<std::pair<IndicatorId, double>>& expected) {
  std::ostringstream out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto id = to_string(expected[i].first);
    if (i) out << "\n";
    out << "SCORE[" << id << "]: <number between 0 and " << text::format_number(expected[i].second) << ">\n";
    out << "FEEDBACK[" << id << "]: <one sentence justifying the score>";
  }
  return out.str();
}

std::string render_prompt(const PromptTemplate& tmpl, std::string_view requirement, std::string_view content,
                          const std::vector<criteria::Checklist>& checklists,
                          const std::vector<criteria::SubjectiveCriterion>& criteria, const PointTable& max_points) {
  for (const auto& c : criteria)
    if (c.status != criteria::ReviewStatus::approved)
      throw Error(ErrorCode::render_error, "status: " + c.id + " is " + std::string(to_string(c.status)));
  for (const auto& c : checklists)
    if (c.status != criteria::ReviewStatus::approved)
      throw Error(ErrorCode::render_error, "status: " + c.id + " is " + std::string(to_string(c.status)));

  auto ordered = criteria;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.indicator < b.indicator; });
  std::vector<std::pair<IndicatorId, double>> expected;
  for (const auto& c : ordered) {
    if (!max_points.count(c.indicator))
      throw Error(ErrorCode::render_error, "criteria: no points for " + std::string(to_string(c.indicator)));
    expected.emplace_back(c.indicator, max_points.at(c.indicator));
  }

  return tmpl.render({
      {"requirement", requirement.empty() ? std::string("(no requirement text)") : std::string(requirement)},
      {"content", std::string(content)},
      {"checklist", render_checklists(checklists)},
      {"criteria", ordered.empty() ? std::string("(no criteria)") : render_criteria(ordered, max_points)},
      {"output_format", output_format(expected)},
      {"work_product", work_product_phrase(tmpl.kind())},
  });
}

std::vector<ResultRecord> extract_results(std::string_view text,
                                          const std::vector<std::pair<IndicatorId, double>>& expected) {
  static const std::regex score_re(R"(^\s*SCORE\[(\w+)\]\s*:\s*(-?\d+(?:\.\d+)?))");
  static const std::regex feedback_re(R"(^\s*FEEDBACK\[(\w+)\]\s*:\s*(.*?)\s*$)");
  if (expected.empty()) throw Error(ErrorCode::extraction_incomplete, "nothing expected");

  std::map<std::string, double> scores;
  std::map<std::string, std::string> feedback;
  for (const auto& line : text::lines(text)) {
    std::smatch m;
    if (std::regex_search(line, m, score_re)) {
      scores.emplace(m[1].str(), parse_number(m[2].str()));
    } else if (std::regex_search(line, m, feedback_re)) {
      feedback.emplace(m[1].str(), m[2].str());
    }
  }

  std::vector<std::string> missing;
  for (const auto& [id, max] : expected)
    if (!scores.count(std::string(to_string(id)))) missing.emplace_back(to_string(id));
  if (!missing.empty()) throw Error(ErrorCode::extraction_incomplete, text::join(missing, ","));

  std::vector<ResultRecord> out;
  out.reserve(expected.size());
  for (const auto& [id, max] : expected) {
    const std::string key(to_string(id));
    ResultRecord r;
    r.indicator = id;
    r.max_points = max;
    r.origin = Origin::llm;
    double s = scores.at(key);
    if (s < 0 || s > max) {
      s = std::clamp(s, 0.0, max);
      r.flags.push_back(RecordFlag::clamped);
    }
    r.score = s;
    if (auto f = feedback.find(key); f != feedback.end()) r.feedback = f->second;
    out.push_back(std::move(r));
  }
  return out;
}

LlmAssessment assess(LlmBackend& backend, const PromptTemplate& tmpl, std::string_view requirement,
                     const ingest::StructuredContent& content, const std::vector<criteria::Checklist>& checklists,
                     const std::vector<criteria::SubjectiveCriterion>& criteria, const PointTable& max_points) {
  LlmAssessment result;
  if (criteria.empty()) return result;
  const auto prompt = render_prompt(tmpl, requirement, serialize_content(tmpl.kind(), content), checklists, criteria,
                                    max_points);
  std::vector<std::pair<IndicatorId, double>> expected;
  for (const auto& c : criteria) expected.emplace_back(c.indicator, max_points.at(c.indicator));
  std::sort(expected.begin(), expected.end());

  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto response = backend.complete(prompt);
    ++result.calls;
    try {
      auto records = extract_results(response.text, expected);
      const bool clamped = std::any_of(records.begin(), records.end(),
                                       [](const ResultRecord& r) { return r.has_flag(RecordFlag::clamped); });
      if (clamped && attempt == 0) continue;
      if (attempt == 1)
        for (auto& r : records) r.flags.push_back(RecordFlag::retried);
      result.records = std::move(records);
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::extraction_incomplete || attempt == 1) throw;
    }
  }
  return result;
}

}  // namespace skillgrade::llm
