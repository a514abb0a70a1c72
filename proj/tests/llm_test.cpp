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

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <functional>
#include <thread>

#include "generators.hpp"
#include "scripted_backend.hpp"
#include "skillgrade/error.hpp"
#include "skillgrade/llm_backend.hpp"
#include "skillgrade/llm_engine.hpp"
#include "tempdir.hpp"

namespace {

using namespace skillgrade;
using namespace skillgrade::llm;
using criteria::Checklist;
using criteria::ReviewStatus;
using criteria::SubjectiveCriterion;
using testing_support::ScriptedBackend;

std::string detail_of(const std::function<void()>& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.detail();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

SubjectiveCriterion approved_criterion(IndicatorId id) {
  SubjectiveCriterion c;
  c.id = "criterion-" + std::string(to_string(id));
  c.indicator = id;
  c.rubric = "rubric for " + std::string(to_string(id));
  c.deduction_rules = {"-1 per gap"};
  c.status = ReviewStatus::approved;
  return c;
}

Checklist approved_checklist() {
  Checklist c;
  c.id = "checklist-001";
  c.unit_id = "001";
  c.items = {{"login lockout is covered", "a failing login case"}};
  c.status = ReviewStatus::approved;
  return c;
}

PromptTemplate minimal_template() {
  return PromptTemplate::load(TemplateKind::test_case_document, {{"input", "{{requirement}}\n{{content}}"},
                                                                 {"rules", "{{checklist}}"},
                                                                 {"criteria", "{{criteria}}"},
                                                                 {"output", "{{output_format}}"}});
}

TEST(Templates, IndicatorSetsPerKind) {
  EXPECT_EQ(template_indicators(TemplateKind::test_case_document),
            (std::vector<IndicatorId>{IndicatorId::STAN_3, IndicatorId::SUFF_1, IndicatorId::CONS_1, IndicatorId::CONS_2,
                                      IndicatorId::READ_1, IndicatorId::READ_2, IndicatorId::READ_3}));
  EXPECT_EQ(template_indicators(TemplateKind::test_script_code), (std::vector<IndicatorId>{IndicatorId::STAN_6}));
  EXPECT_EQ(template_indicators(TemplateKind::test_screenshot),
            (std::vector<IndicatorId>{IndicatorId::RUNN_2, IndicatorId::SUFF_2}));
  for (auto k : all_template_kinds()) EXPECT_EQ(parse_template_kind(to_string(k)), k);
}

TEST(Templates, RenderHasFourSectionsAndInstructionLines) {
  const auto prompt = render_prompt(minimal_template(), "Users sign in.", "CONTENT", {approved_checklist()},
                                    {approved_criterion(IndicatorId::SUFF_1)}, default_point_table());
  const auto input = prompt.find("### Input"), rules = prompt.find("### Rules"), crit = prompt.find("### Criteria"),
             output = prompt.find("### Output");
  ASSERT_NE(input, std::string::npos);
  EXPECT_LT(input, rules);
  EXPECT_LT(rules, crit);
  EXPECT_LT(crit, output);
  EXPECT_NE(prompt.find("Users sign in."), std::string::npos);
  EXPECT_NE(prompt.find("login lockout is covered"), std::string::npos);
  EXPECT_NE(prompt.find("SUFF_1 (max 24.0 points)"), std::string::npos);
  EXPECT_NE(prompt.find("Deduct: -1 per gap"), std::string::npos);
  EXPECT_NE(prompt.find("SCORE[SUFF_1]:"), std::string::npos);
  EXPECT_NE(prompt.find("FEEDBACK[SUFF_1]:"), std::string::npos);
}

TEST(Templates, MissingOutputSectionFailsAtLoad) {
  EXPECT_EQ(detail_of(
                [] {
                  PromptTemplate::load(TemplateKind::test_case_document,
                                       {{"input", "{{content}}"}, {"rules", "x"}, {"criteria", "y"}});
                },
                ErrorCode::render_error),
            "output");
}

TEST(Templates, UnknownPlaceholderAndMissingOutputFormat) {
  EXPECT_EQ(detail_of(
                [] {
                  PromptTemplate::load(TemplateKind::test_case_document, {{"input", "{{secret}}"},
                                                                          {"rules", "x"},
                                                                          {"criteria", "y"},
                                                                          {"output", "{{output_format}}"}});
                },
                ErrorCode::render_error),
            "secret");
  EXPECT_EQ(detail_of(
                [] {
                  PromptTemplate::load(TemplateKind::test_case_document,
                                       {{"input", "a"}, {"rules", "x"}, {"criteria", "y"}, {"output", "z"}});
                },
                ErrorCode::render_error),
            "output_format");
}

TEST(Templates, UnresolvedPlaceholderAtRender) {
  EXPECT_EQ(detail_of([] { minimal_template().render({{"requirement", "r"}}); }, ErrorCode::render_error), "content");
}

TEST(Templates, EmptyChecklistSentinel) {
  const auto prompt = render_prompt(minimal_template(), "r", "c", {}, {approved_criterion(IndicatorId::SUFF_1)},
                                    default_point_table());
  EXPECT_NE(prompt.find(kNoChecklistSentinel), std::string::npos);
}

TEST(Templates, UnapprovedCriterionIsRenderError) {
  auto c = approved_criterion(IndicatorId::SUFF_1);
  c.status = ReviewStatus::pending;
  const auto d = detail_of([&] { render_prompt(minimal_template(), "r", "c", {}, {c}, default_point_table()); },
                           ErrorCode::render_error);
  EXPECT_EQ(d.rfind("status", 0), 0u);
  auto list = approved_checklist();
  list.status = ReviewStatus::rejected;
  detail_of([&] {
    render_prompt(minimal_template(), "r", "c", {list}, {approved_criterion(IndicatorId::SUFF_1)}, default_point_table());
  }, ErrorCode::render_error);
}

TEST(Templates, ParseToTextRoundTripAndIdempotentRender) {
  for (auto kind : all_template_kinds()) {
    const auto t = PromptTemplate::default_for(kind);
    const auto again = PromptTemplate::parse(kind, t.to_text());
    for (const auto& s : section_names()) EXPECT_EQ(again.section(s), t.section(s));
    const std::vector<SubjectiveCriterion> crits = {approved_criterion(IndicatorId::READ_1),
                                                    approved_criterion(IndicatorId::SUFF_1)};
    const auto a = render_prompt(t, "req", "content", {approved_checklist()}, crits, default_point_table());
    const auto b = render_prompt(t, "req", "content", {approved_checklist()}, crits, default_point_table());
    EXPECT_EQ(a, b);
    EXPECT_LT(a.find("SCORE[SUFF_1]"), a.find("SCORE[READ_1]"));
  }
}

TEST(Extract, ScoreAndFeedback) {
  const auto recs = extract_results("SCORE[SUFF_1]: 20.0\nFEEDBACK[SUFF_1]: covers boundary inputs",
                                    {{IndicatorId::SUFF_1, 24}});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].score, 20.0);
  EXPECT_EQ(recs[0].feedback, "covers boundary inputs");
  EXPECT_EQ(recs[0].origin, Origin::llm);
  EXPECT_TRUE(recs[0].flags.empty());
}

TEST(Extract, ClampsOutOfRange) {
  const auto recs = extract_results("SCORE[SUFF_1]: 30", {{IndicatorId::SUFF_1, 24}});
  EXPECT_EQ(recs[0].score, 24.0);
  EXPECT_EQ(recs[0].flags, (std::vector<RecordFlag>{RecordFlag::clamped}));
  EXPECT_EQ(recs[0].feedback, "");
  const auto neg = extract_results("SCORE[SUFF_1]: -3.5", {{IndicatorId::SUFF_1, 24}});
  EXPECT_EQ(neg[0].score, 0.0);
}

TEST(Extract, MissingIdListed) {
  EXPECT_EQ(detail_of([] {
              extract_results("SCORE[SUFF_1]: 3", {{IndicatorId::SUFF_1, 24}, {IndicatorId::CONS_1, 5}});
            }, ErrorCode::extraction_incomplete),
            "CONS_1");
}

TEST(Extract, FirstScoreLineWins) {
  const auto recs = extract_results("SCORE[READ_1]: 2\nSCORE[READ_1]: 4\n", {{IndicatorId::READ_1, 5}});
  EXPECT_EQ(recs[0].score, 2.0);
}

TEST(Extract, FuzzTotalityAndClampSafety) {
  gen::Rng rng(77);
  const std::vector<std::pair<IndicatorId, double>> expected = {
      {IndicatorId::SUFF_1, 24}, {IndicatorId::READ_1, 5}, {IndicatorId::CONS_1, 0}};
  const std::vector<std::string> noise = {"SCORE[", "]:", "FEEDBACK[SUFF_1]: ok", "\n", "  ", "-", "99999999999999999999",
                                          "1e9", "NaN", "SCORE[READ_1]", ": 3", "score[SUFF_1]: 2", "\xff\xfe", "\r\n"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string t;
    for (const auto& [id, max] : expected) {
      if (gen::coin(rng, 0.8)) {
        const double v = static_cast<double>(static_cast<long long>(gen::uniform(rng, 0, 80)) - 20) / 2.0;
        t += "SCORE[" + std::string(to_string(id)) + "]:" + (gen::coin(rng) ? " " : "") + std::to_string(v) + "\n";
      }
      for (std::size_t k = gen::uniform(rng, 0, 3); k > 0; --k) t += gen::pick(rng, noise);
    }
    try {
      const auto recs = extract_results(t, expected);
      ASSERT_EQ(recs.size(), expected.size());
      for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(recs[i].indicator, expected[i].first);
        EXPECT_GE(recs[i].score, 0.0);
        EXPECT_LE(recs[i].score, expected[i].second);
      }
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::extraction_incomplete);
    }
  }
}

TEST(Backends, MockDeterministic) {
  MockBackend mock;
  mock.register_fixture("P", "answer here");
  const auto first = mock.complete("P");
  for (int i = 0; i < 100; ++i) {
    const auto r = mock.complete("P");
    EXPECT_EQ(r.text, first.text);
    EXPECT_EQ(r.prompt_tokens, first.prompt_tokens);
    EXPECT_EQ(r.completion_tokens, first.completion_tokens);
  }
  EXPECT_EQ(first.text, "answer here");
  EXPECT_EQ(first.prompt_tokens, 1u);
  EXPECT_EQ(first.completion_tokens, 2u);
}

TEST(Backends, MockUnmappedIsFixtureMissing) {
  MockBackend mock;
  detail_of([&] { mock.complete("unknown"); }, ErrorCode::fixture_missing);
}

TEST(Backends, MockReadsFixtureDirectory) {
  testing_support::TempDir dir;
  dir.write(fixture_file_name("hello world"), "from disk");
  MockBackend mock(dir.path());
  EXPECT_EQ(mock.complete("hello world").text, "from disk");
}

TEST(Backends, ConfigValidation) {
  LlmBackendConfig c;
  EXPECT_NO_THROW(c.validate());
  c.retries = -1;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.concurrency_limit = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.kind = BackendKind::http_chat;
  EXPECT_THROW(c.validate(), Error);
}

class ChatServer {
 public:
  explicit ChatServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~ChatServer() {
    server_.stop();
    thread_.join();
  }
  LlmBackendConfig config(int retries) const {
    LlmBackendConfig c;
    c.kind = BackendKind::http_chat;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    c.model = "test-model";
    c.retries = retries;
    c.timeout_ms = 2000;
    c.api_key_env = "SKILLGRADE_TEST_KEY_UNSET";
    return c;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(Backends, HttpServerErrorsExhaustRetries) {
  std::atomic<int> hits{0};
  ChatServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 500;
  });
  HttpChatBackend backend(server.config(1));
  EXPECT_EQ(detail_of([&] { backend.complete("hi"); }, ErrorCode::backend_error), "500");
  EXPECT_EQ(hits.load(), 2);
}

TEST(Backends, HttpRecoversAfterRetry) {
  std::atomic<int> hits{0};
  ChatServer server([&](const httplib::Request& req, httplib::Response& res) {
    if (hits++ == 0) {
      res.status = 429;
      return;
    }
    const auto body = nlohmann::json::parse(req.body);
    EXPECT_EQ(body["model"], "test-model");
    EXPECT_EQ(body["messages"][0]["role"], "user");
    EXPECT_EQ(body["messages"][0]["content"], "hi there");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"SCORE[READ_1]: 4"}}],)"
                    R"("usage":{"prompt_tokens":12,"completion_tokens":3}})",
                    "application/json");
  });
  HttpChatBackend backend(server.config(1));
  const auto r = backend.complete("hi there");
  EXPECT_EQ(r.text, "SCORE[READ_1]: 4");
  EXPECT_EQ(r.prompt_tokens, 12u);
  EXPECT_EQ(r.completion_tokens, 3u);
  EXPECT_EQ(hits.load(), 2);
}

TEST(Backends, ThrottleCapsInFlightAndTalliesUsage) {
  class Slow final : public LlmBackend {
   public:
    std::string id() const override { return "slow"; }
    LlmResponse complete(const std::string& prompt) override {
      const int now = ++active;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      --active;
      LlmResponse r;
      r.text = "a b";
      r.prompt_tokens = whitespace_token_count(prompt);
      r.completion_tokens = 2;
      return r;
    }
    std::atomic<int> active{0}, peak{0};
  };
  auto slow = std::make_shared<Slow>();
  ThrottledBackend throttled(slow, 2);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) ts.emplace_back([&] { throttled.complete("one two three"); });
  for (auto& t : ts) t.join();
  EXPECT_LE(slow->peak.load(), 2);
  const auto u = throttled.usage().snapshot();
  EXPECT_EQ(u.calls, 8u);
  EXPECT_EQ(u.prompt_tokens, 24u);
  EXPECT_EQ(u.completion_tokens, 16u);
}

TEST(Assess, RetriesOnceOnIncompleteThenSucceeds) {
  ScriptedBackend backend({"garbage", "SCORE[SUFF_1]: 10\nFEEDBACK[SUFF_1]: fine"});
  ingest::StructuredContent content;
  const auto out = assess(backend, PromptTemplate::default_for(TemplateKind::test_case_document), "req", content, {},
                          {approved_criterion(IndicatorId::SUFF_1)}, default_point_table());
  EXPECT_EQ(out.calls, 2u);
  ASSERT_EQ(out.records.size(), 1u);
  EXPECT_TRUE(out.records[0].has_flag(RecordFlag::retried));
  EXPECT_EQ(out.records[0].score, 10.0);
}

TEST(Assess, SecondIncompletePropagates) {
  ScriptedBackend backend({"garbage"});
  ingest::StructuredContent content;
  detail_of([&] {
    assess(backend, PromptTemplate::default_for(TemplateKind::test_case_document), "req", content, {},
           {approved_criterion(IndicatorId::SUFF_1)}, default_point_table());
  }, ErrorCode::extraction_incomplete);
  EXPECT_EQ(backend.calls(), 2u);
}

TEST(Assess, ClampedTwiceStandsFlagged) {
  ScriptedBackend backend({"SCORE[SUFF_1]: 40"});
  ingest::StructuredContent content;
  const auto out = assess(backend, PromptTemplate::default_for(TemplateKind::test_case_document), "req", content, {},
                          {approved_criterion(IndicatorId::SUFF_1)}, default_point_table());
  EXPECT_EQ(out.calls, 2u);
  EXPECT_EQ(out.records[0].score, 24.0);
  EXPECT_TRUE(out.records[0].has_flag(RecordFlag::clamped));
  EXPECT_TRUE(out.records[0].has_flag(RecordFlag::retried));
}

TEST(Assess, SynthesizedCompletionsExtractCleanly) {
  const auto tmpl = PromptTemplate::default_for(TemplateKind::test_case_document);
  std::vector<SubjectiveCriterion> crits;
  for (auto id : template_indicators(TemplateKind::test_case_document)) crits.push_back(approved_criterion(id));
  ingest::StructuredContent content;
  const auto prompt = render_prompt(tmpl, "req", serialize_content(tmpl.kind(), content), {}, crits,
                                    default_point_table());
  MockBackend mock;
  mock.register_fixture(prompt, SynthesizingBackend::respond(prompt));
  const auto out = assess(mock, tmpl, "req", content, {}, crits, default_point_table());
  EXPECT_EQ(out.calls, 1u);
  ASSERT_EQ(out.records.size(), crits.size());
  for (const auto& r : out.records) EXPECT_TRUE(r.flags.empty());
}

}  // namespace
