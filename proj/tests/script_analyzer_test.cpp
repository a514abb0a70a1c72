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


#include <gtest/gtest.h>

#include <thread>

#include "generators.hpp"
#include "skillgrade/error.hpp"
#include "skillgrade/ingest.hpp"
#include "skillgrade/text.hpp"

namespace {

using namespace skillgrade;
using namespace skillgrade::ingest;

TEST(ScriptAnalyzer, FunctionCallsAndScreenshot) {
  const std::string src =
      "def test_login():\n"
      "    open_page(\"/login\")\n"
      "    submit(form)\n"
      "    capture(\"s1.png\")\n";
  const auto s = analyze_script("login.py", src, python_profile());
  EXPECT_TRUE(s.syntax_ok);
  ASSERT_EQ(s.functions.size(), 1u);
  EXPECT_EQ(s.functions[0].name, "test_login");
  EXPECT_EQ(s.functions[0].first_line, 1);
  EXPECT_EQ(s.functions[0].last_line, 4);
  EXPECT_EQ(s.step_calls, (std::vector<std::string>{"open_page", "submit"}));
  ASSERT_EQ(s.screenshot_calls.size(), 1u);
  EXPECT_EQ(s.screenshot_calls[0].filename_argument, "s1.png");
  EXPECT_EQ(s.screenshot_calls[0].line, 4);
  EXPECT_FALSE(s.screenshot_calls[0].top_level);
}

TEST(ScriptAnalyzer, UnmatchedBraceReportsOpeningLine) {
  const std::string src =
      "class T {\n"
      "  void run() {\n"
      "    go();\n"
      "}\n";
  const auto s = analyze_script("T.java", src, java_profile());
  EXPECT_FALSE(s.syntax_ok);
  ASSERT_EQ(s.syntax_errors.size(), 1u);
  EXPECT_EQ(s.syntax_errors[0], (SyntaxFault{1, SyntaxErrorKind::unbalanced_delimiter}));
}

TEST(ScriptAnalyzer, ParameterRowsFromFixture) {
  const auto src = text::read_file(std::filesystem::path(SKILLGRADE_TEST_FIXTURES) / "scripts" / "param_login.py");
  const auto s = analyze_script("param_login.py", src, python_profile());
  EXPECT_TRUE(s.syntax_ok);
  EXPECT_EQ(s.parameter_rows, (std::vector<std::vector<std::string>>{{"u1", "p1"}, {"u2", "p2"}}));
  ASSERT_EQ(s.functions.size(), 1u);
  EXPECT_EQ(s.functions[0].params, (std::vector<std::string>{"driver", "user", "password"}));
  EXPECT_EQ(s.step_calls, (std::vector<std::string>{"driver.open", "driver.type", "driver.type"}));
  ASSERT_EQ(s.screenshot_calls.size(), 1u);
  EXPECT_EQ(s.screenshot_calls[0].filename_argument, "login_result.png");
}

TEST(ScriptAnalyzer, JavaValueSourceRows) {
  const std::string src =
      "class T {\n"
      "  @ParameterizedTest\n"
      "  @ValueSource(strings = {\"a, b\", \"c\"})\n"
      "  void t(String v) { page.open(v); }\n"
      "}\n";
  const auto s = analyze_script("T.java", src, java_profile());
  EXPECT_EQ(s.parameter_rows, (std::vector<std::vector<std::string>>{{"a, b"}, {"c"}}));
}

TEST(ScriptAnalyzer, JavaCsvSourceRows) {
  const std::string src =
      "class LoginTest {\n"
      "  @ParameterizedTest\n"
      "  @CsvSource({\"u1, p1\", \"u2, p2\"})\n"
      "  void login(String user, String password) {\n"
      "    page.enter(user);\n"
      "    driver.takeScreenshot(\"a.png\");\n"
      "  }\n"
      "}\n";
  const auto s = analyze_script("LoginTest.java", src, java_profile());
  EXPECT_TRUE(s.syntax_ok);
  EXPECT_EQ(s.parameter_rows, (std::vector<std::vector<std::string>>{{"u1", "p1"}, {"u2", "p2"}}));
  ASSERT_EQ(s.functions.size(), 1u);
  EXPECT_EQ(s.functions[0].params, (std::vector<std::string>{"user", "password"}));
  EXPECT_EQ(s.step_calls, (std::vector<std::string>{"page.enter"}));
  EXPECT_EQ(s.screenshot_calls.size(), 1u);
}

TEST(ScriptAnalyzer, DelimitersInStringsAndCommentsIgnored) {
  const std::string py = "def f():\n    x = \"(((\"  # )))\n    y = '''\n]]]\n'''\n";
  EXPECT_TRUE(analyze_script("a.py", py, python_profile()).syntax_ok);
  const std::string java = "/* { */ class A { // }\n  String s = \"}\";\n}\n";
  EXPECT_TRUE(analyze_script("A.java", java, java_profile()).syntax_ok);
}

TEST(ScriptAnalyzer, UnterminatedString) {
  const auto s = analyze_script("a.py", "def f():\n    x = \"open\n", python_profile());
  EXPECT_FALSE(s.syntax_ok);
  ASSERT_FALSE(s.syntax_errors.empty());
  EXPECT_EQ(s.syntax_errors[0], (SyntaxFault{2, SyntaxErrorKind::unterminated_string}));
}

TEST(ScriptAnalyzer, EmptyFile) {
  const auto s = analyze_script("a.py", "  \n", python_profile());
  EXPECT_FALSE(s.syntax_ok);
  EXPECT_EQ(s.syntax_errors[0].kind, SyntaxErrorKind::empty_file);
}

TEST(ScriptAnalyzer, TopLevelScreenshotCall) {
  const auto s = analyze_script("a.py", "capture('x.png')\n", python_profile());
  ASSERT_EQ(s.screenshot_calls.size(), 1u);
  EXPECT_TRUE(s.screenshot_calls[0].top_level);
  EXPECT_TRUE(s.step_calls.empty());
}

TEST(ScriptAnalyzer, KeywordsAreNotCalls) {
  const auto s = analyze_script("a.py", "def f():\n    if (x):\n        go()\n    return (1)\n", python_profile());
  EXPECT_EQ(s.step_calls, (std::vector<std::string>{"go"}));
}

TEST(LanguageProfile, ValidateRejectsBadProfiles) {
  auto p = python_profile();
  EXPECT_NO_THROW(p.validate());
  p.delimiter_pairs.push_back({'(', '>'});
  EXPECT_THROW(p.validate(), Error);
  auto q = java_profile();
  q.function_pattern = "([a-z]";
  EXPECT_THROW(q.validate(), Error);
}

TEST(ScriptAnalyzer, SyntaxFaultRecallProperty) {
  gen::Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const bool python = i % 2 == 0;
    const auto script = gen::clean_script(rng, python);
    const auto& profile = python ? python_profile() : java_profile();
    const auto clean = analyze_script("s", script.text, profile);
    EXPECT_TRUE(clean.syntax_ok) << script.text;
    const auto faulty = gen::seed_fault(rng, script);
    const auto s = analyze_script("s", faulty, profile);
    EXPECT_FALSE(s.syntax_ok) << faulty;
  }
}

TEST(ScriptAnalyzer, DeterministicAcrossThreads) {
  gen::Rng rng(99);
  std::vector<std::string> corpus;
  for (int i = 0; i < 40; ++i) corpus.push_back(gen::clean_script(rng, i % 2 == 0).text);
  std::vector<CodeSnippet> expected;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    expected.push_back(analyze_script("s", corpus[i], i % 2 == 0 ? python_profile() : java_profile()));
  std::vector<CodeSnippet> actual(corpus.size());
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < corpus.size(); i += 4)
        actual[i] = analyze_script("s", corpus[i], i % 2 == 0 ? python_profile() : java_profile());
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(actual, expected);
}

}  // namespace
