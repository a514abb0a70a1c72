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

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "skillgrade/error.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::ingest {

namespace {

enum class TokenKind { identifier, string, number, punct };

struct Token {
  TokenKind kind;
  std::string text;  // string tokens hold the raw contents between quotes
  int line;
  int depth = 0;  // open delimiters before this token
};

struct LexOutput {
  std::vector<Token> tokens;
  std::vector<SyntaxFault> faults;
  std::string mask;  // comments and string contents blanked, newlines kept
  int line_count = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

class Lexer {
 public:
  Lexer(std::string_view src, const LanguageProfile& profile) : src_(src), profile_(profile) {
    out_.mask.assign(src.begin(), src.end());
    comment_prefixes_ = profile.comment_prefixes;
    std::sort(comment_prefixes_.begin(), comment_prefixes_.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  LexOutput run() {
    while (pos_ < src_.size()) step();
    out_.line_count = line_;
    return std::move(out_);
  }

 private:
  bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void blank(std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to && k < out_.mask.size(); ++k)
      if (out_.mask[k] != '\n') out_.mask[k] = ' ';
  }

  void advance() {
    if (src_[pos_] == '\n') ++line_;
    ++pos_;
  }

  bool is_quote(char c) const { return profile_.string_quotes.find(c) != std::string::npos; }

  void step() {
    const char c = src_[pos_];
    if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
      advance();
      return;
    }
    if (profile_.block_comment && at(profile_.block_comment->first)) {
      const auto start = pos_;
      pos_ += profile_.block_comment->first.size();
      while (pos_ < src_.size() && !at(profile_.block_comment->second)) advance();
      pos_ = std::min(src_.size(), pos_ + profile_.block_comment->second.size());
      blank(start, pos_);
      return;
    }
    for (const auto& prefix : comment_prefixes_) {
      if (!prefix.empty() && at(prefix)) {
        const auto start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        blank(start, pos_);
        return;
      }
    }
    if (is_quote(c)) {
      lex_string();
      return;
    }
    if (is_ident_start(c)) {
      // Python-style string prefixes: r"..", b'..', f"..", rb"..".
      std::size_t end = pos_;
      while (end < src_.size() && is_ident_char(src_[end])) ++end;
      const auto word = src_.substr(pos_, end - pos_);
      if (profile_.triple_quoted_strings && word.size() <= 2 && end < src_.size() && is_quote(src_[end]) &&
          std::all_of(word.begin(), word.end(), [](char ch) { return std::string_view("rRbBuUfF").find(ch) != std::string_view::npos; })) {
        pos_ = end;
        lex_string();
        return;
      }
      out_.tokens.push_back({TokenKind::identifier, std::string(word), line_});
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && (is_ident_char(src_[end]) || src_[end] == '.')) ++end;
      out_.tokens.push_back({TokenKind::number, std::string(src_.substr(pos_, end - pos_)), line_});
      pos_ = end;
      return;
    }
    out_.tokens.push_back({TokenKind::punct, std::string(1, c), line_});
    ++pos_;
  }

  void lex_string() {
    const char q = src_[pos_];
    const int start_line = line_;
    const bool triple = profile_.triple_quoted_strings && src_.substr(pos_, 3) == std::string(3, q);
    const std::size_t open_len = triple ? 3 : 1;
    pos_ += open_len;
    const auto content_start = pos_;
    std::string value;
    while (true) {
      if (pos_ >= src_.size()) {
        out_.faults.push_back({start_line, SyntaxErrorKind::unterminated_string});
        blank(content_start, pos_);
        return;
      }
      const char c = src_[pos_];
      if (c == '\\' && pos_ + 1 < src_.size()) {
        value += src_[pos_ + 1];
        advance();
        advance();
        continue;
      }
      if (triple) {
        if (src_.substr(pos_, 3) == std::string(3, q)) break;
      } else {
        if (c == q) break;
        if (c == '\n') {
          out_.faults.push_back({start_line, SyntaxErrorKind::unterminated_string});
          blank(content_start, pos_);
          return;  // resume on the next line
        }
      }
      value += c;
      advance();
    }
    blank(content_start, pos_);
    pos_ += open_len;
    out_.tokens.push_back({TokenKind::string, std::move(value), start_line});
  }

  std::string_view src_;
  const LanguageProfile& profile_;
  std::vector<std::string> comment_prefixes_;
  std::size_t pos_ = 0;
  int line_ = 1;
  LexOutput out_;
};

// Balanced-delimiter check; also stamps each token with its nesting depth.
void check_delimiters(std::vector<Token>& tokens, const LanguageProfile& profile, std::vector<SyntaxFault>& faults) {
  struct Open {
    char close;
    int line;
  };
  std::vector<Open> stack;
  for (auto& tok : tokens) {
    tok.depth = static_cast<int>(stack.size());
    if (tok.kind != TokenKind::punct) continue;
    const char c = tok.text.front();
    for (const auto& [open, close] : profile.delimiter_pairs) {
      if (c == open) {
        stack.push_back({close, tok.line});
        break;
      }
      if (c == close) {
        if (stack.empty()) {
          faults.push_back({tok.line, SyntaxErrorKind::unbalanced_delimiter});
        } else {
          if (stack.back().close != c) faults.push_back({stack.back().line, SyntaxErrorKind::unbalanced_delimiter});
          stack.pop_back();
        }
        tok.depth = static_cast<int>(stack.size());
        break;
      }
    }
  }
  for (const auto& open : stack) faults.push_back({open.line, SyntaxErrorKind::unbalanced_delimiter});
}

bool is_open(const Token& t, const LanguageProfile& p) {
  if (t.kind != TokenKind::punct) return false;
  for (const auto& [o, c] : p.delimiter_pairs)
    if (t.text.front() == o) return true;
  return false;
}

bool is_close(const Token& t, const LanguageProfile& p) {
  if (t.kind != TokenKind::punct) return false;
  for (const auto& [o, c] : p.delimiter_pairs)
    if (t.text.front() == c) return true;
  return false;
}

// Index of the token closing the group opened at `open`, or tokens.size().
std::size_t matching_close(const std::vector<Token>& tokens, std::size_t open, const LanguageProfile& p) {
  int depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    if (is_open(tokens[i], p)) ++depth;
    if (is_close(tokens[i], p) && --depth == 0) return i;
  }
  return tokens.size();
}

int indentation_of(std::string_view line) {
  int width = 0;
  for (char c : line) {
    if (c == ' ') width += 1;
    else if (c == '\t') width += 4;
    else break;
  }
  return width;
}

std::vector<std::string> split_params(std::string_view raw) {
  std::vector<std::string> params;
  for (auto piece : text::split_nonempty(raw, ',')) {
    std::string_view p = piece;
    if (auto eq = p.find('='); eq != std::string_view::npos) p = p.substr(0, eq);
    if (auto colon = p.find(':'); colon != std::string_view::npos) p = p.substr(0, colon);
    p = text::trim(p);
    // Typed languages: "String user" -> "user".
    if (auto sp = p.find_last_of(" \t"); sp != std::string_view::npos) p = p.substr(sp + 1);
    while (!p.empty() && (p.front() == '*' || p.front() == '&')) p.remove_prefix(1);
    if (!p.empty()) params.emplace_back(p);
  }
  return params;
}

bool contains(const std::vector<std::string>& v, std::string_view s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string last_segment(const std::string& dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

struct CallSite {
  std::string name;
  int line;
  std::size_t open_index;
};

}  // namespace

std::string_view to_string(SyntaxErrorKind kind) {
  switch (kind) {
    case SyntaxErrorKind::unbalanced_delimiter: return "unbalanced_delimiter";
    case SyntaxErrorKind::unterminated_string: return "unterminated_string";
    case SyntaxErrorKind::empty_file: return "empty_file";
  }
  return "unknown";
}

void LanguageProfile::validate() const {
  std::set<char> seen;
  for (const auto& [open, close] : delimiter_pairs) {
    if (open == close || !seen.insert(open).second || !seen.insert(close).second)
      throw Error(ErrorCode::config_error, "profile " + name + ": delimiter characters must be distinct");
  }
  try {
    std::regex re(function_pattern);
    if (re.mark_count() < 2)
      throw Error(ErrorCode::config_error, "profile " + name + ": function_pattern needs two capture groups");
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::config_error, "profile " + name + ": function_pattern does not compile: " + e.what());
  }
}

LanguageProfile python_profile() {
  LanguageProfile p;
  p.name = "python";
  p.extensions = {".py"};
  p.delimiter_pairs = {{'(', ')'}, {'[', ']'}, {'{', '}'}};
  p.triple_quoted_strings = true;
  p.comment_prefixes = {"#"};
  p.function_pattern = R"(^\s*(?:async\s+)?def\s+([A-Za-z_]\w*)\s*\(([^)]*)\)?)";
  p.screenshot_call_names = {"capture", "screenshot", "save_screenshot", "get_screenshot_as_file", "take_screenshot"};
  p.data_annotation_names = {"pytest.mark.parametrize", "parametrize", "data", "ddt.data", "parameterized.expand"};
  p.keywords = {"if", "elif", "while", "for", "return", "and", "or", "not", "in", "is", "with", "assert", "lambda",
                "yield", "except", "raise", "del", "global", "nonlocal", "pass", "import", "from", "as", "class",
                "def", "await", "else"};
  p.block_style = BlockStyle::indentation;
  return p;
}

LanguageProfile java_profile() {
  LanguageProfile p;
  p.name = "java";
  p.extensions = {".java"};
  p.delimiter_pairs = {{'(', ')'}, {'[', ']'}, {'{', '}'}};
  p.comment_prefixes = {"//"};
  p.block_comment = std::make_pair(std::string("/*"), std::string("*/"));
  p.function_pattern =
      R"(^\s*(?:(?:public|private|protected|static|final|abstract|synchronized)\s+)*[\w<>\[\],.]+\s+([A-Za-z_]\w*)\s*\(([^)]*)\)?)";
  p.screenshot_call_names = {"capture", "takeScreenshot", "saveScreenshot", "screenshot", "getScreenshotAs"};
  p.data_annotation_names = {"CsvSource", "ValueSource", "Parameters"};
  p.keywords = {"if", "for", "while", "switch", "catch", "return", "new", "throw", "synchronized", "try", "else",
                "do", "case", "assert", "super", "this"};
  p.block_style = BlockStyle::braces;
  return p;
}

CodeSnippet analyze_script(std::string_view source_id, std::string_view text, const LanguageProfile& profile) {
  CodeSnippet snip;
  snip.source_id = std::string(source_id);
  snip.source = std::string(text);

  if (text::trim(text).empty()) {
    snip.syntax_errors.push_back({1, SyntaxErrorKind::empty_file});
    snip.syntax_ok = false;
    return snip;
  }

  auto lex = Lexer(text, profile).run();
  auto& tokens = lex.tokens;
  std::vector<SyntaxFault> faults = std::move(lex.faults);
  check_delimiters(tokens, profile, faults);
  std::sort(faults.begin(), faults.end(), [](const SyntaxFault& a, const SyntaxFault& b) {
    return a.line != b.line ? a.line < b.line : a.kind < b.kind;
  });
  faults.erase(std::unique(faults.begin(), faults.end()), faults.end());
  snip.syntax_errors = std::move(faults);
  snip.syntax_ok = snip.syntax_errors.empty();

  const auto mask_lines = text::lines(lex.mask);
  const auto raw_lines = text::lines(text);
  const int line_count = static_cast<int>(raw_lines.size());

  // Phase 1: function definitions and their spans.
  const std::regex fn_re(profile.function_pattern);
  for (int ln = 1; ln <= static_cast<int>(mask_lines.size()); ++ln) {
    std::smatch m;
    const auto& line = mask_lines[ln - 1];
    if (!std::regex_search(line, m, fn_re)) continue;
    if (contains(profile.keywords, m[1].str())) continue;
    FunctionInfo fn;
    fn.name = m[1].str();
    fn.params = split_params(m[2].str());
    fn.first_line = ln;
    fn.last_line = ln;

    std::size_t first_tok = 0;
    while (first_tok < tokens.size() && tokens[first_tok].line < ln) ++first_tok;

    if (profile.block_style == BlockStyle::braces) {
      for (std::size_t i = first_tok; i < tokens.size(); ++i) {
        if (tokens[i].kind != TokenKind::punct) continue;
        if (tokens[i].text == ";") break;  // declaration without a body
        if (tokens[i].text == "{") {
          const auto close = matching_close(tokens, i, profile);
          fn.last_line = close < tokens.size() ? tokens[close].line : line_count;
          break;
        }
      }
    } else {
      const int def_indent = indentation_of(raw_lines[ln - 1]);
      const int base_depth = first_tok < tokens.size() ? tokens[first_tok].depth : 0;
      int prev_line = ln;
      for (std::size_t i = first_tok; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.line == ln) continue;
        const bool line_start = tok.line != prev_line;
        prev_line = tok.line;
        if (line_start && tok.depth == base_depth && indentation_of(raw_lines[tok.line - 1]) <= def_indent) break;
        fn.last_line = std::max(fn.last_line, tok.line);
      }
    }
    snip.functions.push_back(std::move(fn));
  }

  auto enclosing = [&snip](int line) -> const FunctionInfo* {
    const FunctionInfo* best = nullptr;
    for (const auto& fn : snip.functions)
      if (line >= fn.first_line && line <= fn.last_line) best = &fn;
    return best;
  };

  // Phase 2: call sites and annotations, in token order.
  std::vector<CallSite> calls;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::identifier) continue;
    const Token* prev = i > 0 ? &tokens[i - 1] : nullptr;
    bool annotation = false;
    if (prev && prev->text == ".") {
      const bool on_result = i >= 2 && (tokens[i - 2].text == ")" || tokens[i - 2].text == "]");
      if (!on_result) continue;
    } else if (prev && prev->kind == TokenKind::punct && prev->text == "@") {
      annotation = true;
    }
    std::size_t j = i;
    std::string name = tokens[i].text;
    while (j + 2 < tokens.size() && tokens[j + 1].text == "." && tokens[j + 2].kind == TokenKind::identifier) {
      name += "." + tokens[j + 2].text;
      j += 2;
    }
    const bool has_parens = j + 1 < tokens.size() && tokens[j + 1].text == "(";

    if (annotation) {
      if (has_parens &&
          (contains(profile.data_annotation_names, name) || contains(profile.data_annotation_names, last_segment(name)))) {
        // Leaf groups nested inside the annotation's argument list are rows;
        // without nesting, each literal is a one-value row.
        const auto open = j + 1;
        const auto close = matching_close(tokens, open, profile);
        struct Group {
          bool has_child = false;
          std::vector<std::string> literals;
        };
        std::vector<Group> stack{Group{}};
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = open + 1; k < close && k < tokens.size(); ++k) {
          const auto& t = tokens[k];
          if (is_open(t, profile)) {
            stack.back().has_child = true;
            stack.push_back(Group{});
          } else if (is_close(t, profile)) {
            if (stack.size() > 1) {
              auto g = std::move(stack.back());
              stack.pop_back();
              if (!g.has_child && !g.literals.empty()) rows.push_back(std::move(g.literals));
            }
          } else if (t.kind == TokenKind::string || t.kind == TokenKind::number) {
            std::string lit = t.text;
            if (t.kind == TokenKind::number && k > open + 1 && tokens[k - 1].text == "-") lit.insert(0, "-");
            stack.back().literals.push_back(std::move(lit));
          }
        }
        const auto kind = last_segment(name);
        if (kind == "CsvSource" || kind == "Parameters" || kind == "ValueSource") {
          // Every literal is one row; CSV-style sources split it into cells.
          rows.clear();
          for (std::size_t k = open + 1; k < close && k < tokens.size(); ++k) {
            const auto& t = tokens[k];
            if (t.kind != TokenKind::string && t.kind != TokenKind::number) continue;
            if (kind == "ValueSource") {
              rows.push_back({t.text});
              continue;
            }
            std::vector<std::string> cells;
            for (const auto& cell : text::split(t.text, ',')) cells.emplace_back(text::trim(cell));
            rows.push_back(std::move(cells));
          }
        } else if (rows.empty()) {
          for (const auto& lit : stack.front().literals) rows.push_back({lit});
        }
        for (auto& r : rows) snip.parameter_rows.push_back(std::move(r));
      }
      i = j;
      continue;
    }
    if (!has_parens) continue;
    if (prev && prev->kind == TokenKind::identifier && (prev->text == "def" || prev->text == "class")) continue;
    if (contains(profile.keywords, name) || contains(profile.keywords, name.substr(0, name.find('.')))) continue;
    calls.push_back({std::move(name), tokens[i].line, j + 1});
  }

  for (const auto& call : calls) {
    const auto* fn = enclosing(call.line);
    const bool is_definition = fn && fn->first_line == call.line && fn->name == call.name;
    if (is_definition) continue;
    if (contains(profile.screenshot_call_names, last_segment(call.name))) {
      ScreenshotCall shot;
      shot.line = call.line;
      shot.top_level = fn == nullptr;
      const auto close = matching_close(tokens, call.open_index, profile);
      for (std::size_t k = call.open_index + 1; k < close && k < tokens.size(); ++k) {
        if (tokens[k].kind == TokenKind::string) {
          shot.filename_argument = tokens[k].text;
          break;
        }
      }
      snip.screenshot_calls.push_back(std::move(shot));
      continue;
    }
    if (fn) snip.step_calls.push_back(call.name);
  }
  return snip;
}

}  // namespace skillgrade::ingest
