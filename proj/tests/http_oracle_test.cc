//
// Copyright 2026 The Emoji Attack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "emoji_attack/http_oracle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "emoji_attack/llm_oracle.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.h"

namespace emoji_attack {
namespace {

using testing::ReadFile;
using testing::TestdataPath;

std::string Golden(const std::string& name) {
  return ReadFile(TestdataPath("protocol/" + name));
}

// An httplib server on an ephemeral local port, stopped on destruction.
class FixtureServer {
 public:
  FixtureServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpOptions FastOptions(const std::string& endpoint) {
  HttpOptions o;
  o.endpoint = endpoint;
  o.timeout = std::chrono::milliseconds(2000);
  o.backoff = std::chrono::milliseconds(1);
  return o;
}

TEST(WireProtocolTest, RequestEncodingIsByteExact) {
  EXPECT_EQ(EncodeClassifyRequest("I love this 😀") + "\n",
            Golden("classify_request.json"));
}

TEST(WireProtocolTest, GoldenResponses) {
  const Prediction p = ParseClassifyResponse(Golden("classify_response.json"));
  EXPECT_EQ(p.label, "positive");
  ASSERT_TRUE(p.probs.has_value());
  EXPECT_DOUBLE_EQ(p.probs->at("positive"), 0.9);
  EXPECT_DOUBLE_EQ(p.probs->at("negative"), 0.1);

  const Prediction hard =
      ParseClassifyResponse(Golden("classify_response_hard.json"));
  EXPECT_EQ(hard.label, "negative");
  EXPECT_FALSE(hard.probs.has_value());

  for (const char* bad :
       {"classify_response_bad_sum.json", "classify_response_not_argmax.json",
        "classify_response_no_label.json"}) {
    EXPECT_THROW(ParseClassifyResponse(Golden(bad)), ProtocolError) << bad;
  }
  EXPECT_THROW(ParseClassifyResponse("{label"), ProtocolError);
  EXPECT_THROW(ParseClassifyResponse("[]"), ProtocolError);
}

TEST(WireProtocolTest, GoldenHealth) {
  const HealthInfo info = ParseHealthResponse(Golden("health_response.json"));
  EXPECT_EQ(info.model, "distilbert-sst2");
  EXPECT_EQ(info.labels, (std::vector<std::string>{"negative", "positive"}));
  EXPECT_THROW(ParseHealthResponse(R"({"model": 3})"), ProtocolError);
}

TEST(HttpClassifierTest, ClassifiesAgainstFixtureServer) {
  FixtureServer fx;
  std::string seen_body, seen_type;
  fx.server().Post("/classify", [&](const httplib::Request& req,
                                    httplib::Response& res) {
    seen_body = req.body;
    seen_type = req.get_header_value("Content-Type");
    res.set_content(Golden("classify_response.json"), "application/json");
  });
  fx.server().Get("/health", [&](const httplib::Request&,
                                 httplib::Response& res) {
    res.set_content(Golden("health_response.json"), "application/json");
  });

  HttpClassifier oracle(FastOptions(fx.endpoint()));
  const Prediction p = oracle.Classify("I love this 😀");
  EXPECT_EQ(p.label, "positive");
  EXPECT_DOUBLE_EQ(p.probs->at("positive"), 0.9);
  EXPECT_EQ(seen_body + "\n", Golden("classify_request.json"));
  EXPECT_NE(seen_type.find("application/json"), std::string::npos);
  EXPECT_EQ(oracle.ledger().queries(), 1u);

  EXPECT_EQ(oracle.FetchHealth().labels.size(), 2u);
  EXPECT_EQ(oracle.name(), "distilbert-sst2");
}

TEST(HttpClassifierTest, RetriesOnceThenSucceeds) {
  FixtureServer fx;
  std::atomic<int> calls{0};
  fx.server().Post("/classify", [&](const httplib::Request&,
                                    httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 503;
      res.set_content("warming up", "text/plain");
      return;
    }
    res.set_content(Golden("classify_response.json"), "application/json");
  });
  HttpOptions o = FastOptions(fx.endpoint());
  o.retries = 2;
  HttpClassifier oracle(o);
  EXPECT_EQ(oracle.Classify("hello").label, "positive");
  EXPECT_EQ(oracle.ledger().queries(), 1u);
  EXPECT_EQ(oracle.transport_attempts(), 2u);
}

TEST(HttpClassifierTest, ExhaustedRetriesFail) {
  FixtureServer fx;
  fx.server().Post("/classify", [](const httplib::Request&,
                                   httplib::Response& res) {
    res.status = 500;
    res.set_content("boom", "text/plain");
  });
  HttpOptions o = FastOptions(fx.endpoint());
  o.retries = 2;
  HttpClassifier oracle(o);
  EXPECT_THROW(oracle.Classify("hello"), OracleError);
  EXPECT_EQ(oracle.transport_attempts(), 3u);
  EXPECT_EQ(oracle.ledger().queries(), 1u);
}

TEST(HttpClassifierTest, ClientErrorCarriesExcerptWithoutRetry) {
  FixtureServer fx;
  fx.server().Post("/classify", [](const httplib::Request&,
                                   httplib::Response& res) {
    res.status = 422;
    res.set_content("text field must be a string", "text/plain");
  });
  HttpClassifier oracle(FastOptions(fx.endpoint()));
  try {
    oracle.Classify("hello");
    FAIL() << "expected ProtocolError";
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("422"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("text field must be a string"),
              std::string::npos);
  }
  EXPECT_EQ(oracle.transport_attempts(), 1u);
}

TEST(HttpClassifierTest, BadDistributionIsProtocolError) {
  FixtureServer fx;
  fx.server().Post("/classify", [](const httplib::Request&,
                                   httplib::Response& res) {
    res.set_content(Golden("classify_response_bad_sum.json"),
                    "application/json");
  });
  HttpClassifier oracle(FastOptions(fx.endpoint()));
  EXPECT_THROW(oracle.Classify("hello"), ProtocolError);
}

TEST(HttpClassifierTest, UnreachableEndpointFails) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpOptions o = FastOptions("http://127.0.0.1:" + std::to_string(port));
  o.retries = 1;
  HttpClassifier oracle(o);
  EXPECT_THROW(oracle.Classify("hello"), OracleError);
  EXPECT_EQ(oracle.ledger().queries(), 1u);
}

TEST(HttpClassifierTest, BoundsConcurrentRequests) {
  FixtureServer fx;
  std::atomic<int> in_flight{0}, peak{0};
  fx.server().Post("/classify", [&](const httplib::Request&,
                                    httplib::Response& res) {
    const int now = ++in_flight;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --in_flight;
    res.set_content(Golden("classify_response.json"), "application/json");
  });
  HttpOptions o = FastOptions(fx.endpoint());
  o.max_concurrency = 2;
  HttpClassifier oracle(o);
  std::vector<std::thread> workers;
  for (int i = 0; i < 6; ++i) {
    workers.emplace_back([&] { oracle.Classify("hello"); });
  }
  for (auto& t : workers) t.join();
  EXPECT_EQ(oracle.ledger().queries(), 6u);
  EXPECT_LE(peak.load(), 2);
  EXPECT_GE(peak.load(), 1);
}

const std::vector<std::string> kLabels = {"positive", "negative", "neutral"};

TEST(LlmReplyTest, ParsesCannedReplies) {
  std::istringstream corpus(Golden("llm_replies.jsonl"));
  std::string line;
  int cases = 0;
  while (std::getline(corpus, line)) {
    const auto doc = nlohmann::json::parse(line);
    const std::string reply = doc["reply"];
    ++cases;
    if (doc["expect"].is_null()) {
      EXPECT_THROW(ParseLabelReply(reply, kLabels), AbstentionError) << reply;
    } else {
      EXPECT_EQ(ParseLabelReply(reply, kLabels), doc["expect"]) << reply;
    }
  }
  EXPECT_EQ(cases, 20);
  const std::vector<std::string> two = {"positive", "negative"};
  EXPECT_EQ(ParseLabelReply("positive", two), "positive");
  EXPECT_THROW(ParseLabelReply("neutral", two), AbstentionError);
}

TEST(LlmReplyTest, PromptTemplate) {
  EXPECT_NO_THROW(ValidatePromptTemplate(kDefaultLlmPrompt, kLabels));
  EXPECT_NO_THROW(ValidatePromptTemplate(
      "positive, negative or neutral? {text}", kLabels));
  EXPECT_THROW(ValidatePromptTemplate("{labels}", kLabels),
               std::invalid_argument);
  EXPECT_THROW(ValidatePromptTemplate("positive or negative? {text}", kLabels),
               std::invalid_argument);
  EXPECT_EQ(RenderPrompt("[{labels}] {text}", "hi 😀", kLabels),
            "[positive, negative, neutral] hi 😀");
}

TEST(LlmClassifierTest, ChatCompletionRoundTrip) {
  FixtureServer fx;
  std::mutex mu;
  std::string reply = "positive";
  nlohmann::json last_request;
  std::string last_auth;
  fx.server().Post("/v1/chat/completions", [&](const httplib::Request& req,
                                               httplib::Response& res) {
    std::lock_guard<std::mutex> lock(mu);
    last_request = nlohmann::json::parse(req.body);
    last_auth = req.get_header_value("Authorization");
    const nlohmann::json body = {
        {"choices",
         {{{"index", 0},
           {"message", {{"role", "assistant"}, {"content", reply}}}}}}};
    res.set_content(body.dump(), "application/json");
  });

  LlmOptions o;
  o.http = FastOptions(fx.endpoint());
  o.model = "gpt-test";
  o.labels = kLabels;
  o.api_key = "sk-local";
  LlmClassifier oracle(o);
  EXPECT_TRUE(oracle.hard_label());
  EXPECT_EQ(oracle.name(), "gpt-test");

  const Prediction p = oracle.Classify("great food 😀");
  EXPECT_EQ(p.label, "positive");
  EXPECT_FALSE(p.probs.has_value());
  EXPECT_EQ(last_auth, "Bearer sk-local");
  EXPECT_EQ(last_request["model"], "gpt-test");
  ASSERT_EQ(last_request["messages"].size(), 1u);
  EXPECT_EQ(last_request["messages"][0]["role"], "user");
  const std::string content = last_request["messages"][0]["content"];
  EXPECT_NE(content.find("great food 😀"), std::string::npos);
  EXPECT_NE(content.find("positive, negative, neutral"), std::string::npos);

  {
    std::lock_guard<std::mutex> lock(mu);
    reply = "positive or negative";
  }
  EXPECT_THROW(oracle.Classify("hmm"), AbstentionError);
  EXPECT_EQ(oracle.ledger().queries(), 2u);
}

TEST(LlmClassifierTest, MalformedCompletionIsProtocolError) {
  FixtureServer fx;
  fx.server().Post("/v1/chat/completions", [](const httplib::Request&,
                                              httplib::Response& res) {
    res.set_content(R"({"choices": []})", "application/json");
  });
  LlmOptions o;
  o.http = FastOptions(fx.endpoint());
  o.model = "gpt-test";
  o.labels = kLabels;
  o.api_key_env = "";
  LlmClassifier oracle(o);
  EXPECT_THROW(oracle.Classify("x"), ProtocolError);
}

}  // namespace
}  // namespace emoji_attack
