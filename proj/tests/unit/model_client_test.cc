/*
 * Copyright (c) 2026 The ProBench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "probench/model_client.h"

#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "probench/error.h"
#include "testing/testing.h"

namespace probench {
namespace {

using nlohmann::json;

// Minimal chat-completions server on a free local port.
class FakeChatServer {
 public:
  explicit FakeChatServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", [this, handler](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      handler(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeChatServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  int hits() const { return hits_; }
  std::string last_body() const { return last_body_; }
  std::string last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::string last_auth_;
};

EndpointConfig HttpConfig(const std::string& url, int retries = 2) {
  return EndpointConfig::FromJson(
      {{"name", "fake"}, {"endpoint", url}, {"model_id", "m1"}, {"timeout_s", 5}, {"max_retries", retries}});
}

TEST(HttpChatClient, ReturnsMessageContent) {
  FakeChatServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"j({"choices":[{"message":{"role":"assistant","content":"Action: Back()"}}]})j",
                    "application/json");
  });
  auto client = MakeModelClient(HttpConfig(server.url()));
  const Image img(2, 2, kRed);
  EXPECT_EQ(CompleteWithRetries(*client, "hello", std::span<const Image>(&img, 1), 2), "Action: Back()");
  const json body = json::parse(server.last_body());
  EXPECT_EQ(body.at("model"), "m1");
  const json& content = body.at("messages").at(0).at("content");
  EXPECT_EQ(content.at(0).at("text"), "hello");
  EXPECT_EQ(content.at(1).at("image_url").at("url").get<std::string>().rfind("data:image/png;base64,", 0), 0u);
}

TEST(HttpChatClient, ContentPartsAreConcatenated) {
  FakeChatServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(
        R"({"choices":[{"message":{"content":[{"type":"text","text":"a"},{"type":"text","text":"b"}]}}]})",
        "application/json");
  });
  auto client = MakeModelClient(HttpConfig(server.url()));
  EXPECT_EQ(client->CompleteOnce("p", {}), "ab");
}

TEST(HttpChatClient, Status500IsRetriedThenSurfaced) {
  FakeChatServer server([](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("{}", "application/json");
  });
  auto client = MakeModelClient(HttpConfig(server.url(), 2));
  try {
    CompleteWithRetries(*client, "p", {}, 2);
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.kind(), TransportError::Kind::kStatus);
    EXPECT_EQ(e.attempts(), 3);
  }
  EXPECT_EQ(server.hits(), 3);
}

TEST(HttpChatClient, RecoversAfterTransientFailures) {
  std::atomic<int> n{0};
  FakeChatServer server([&n](const httplib::Request&, httplib::Response& res) {
    if (n++ < 2) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  auto client = MakeModelClient(HttpConfig(server.url(), 2));
  EXPECT_EQ(CompleteWithRetries(*client, "p", {}, 2), "ok");
}

TEST(HttpChatClient, MalformedReplyIsAnAttemptError) {
  FakeChatServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  auto client = MakeModelClient(HttpConfig(server.url()));
  EXPECT_THROW(client->CompleteOnce("p", {}), AttemptError);
}

TEST(HttpChatClient, ApiKeyComesFromEnvironment) {
  FakeChatServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  ::setenv("PROBENCH_TEST_KEY", "secret-1", 1);
  EndpointConfig cfg = HttpConfig(server.url());
  cfg.api_key_env = "PROBENCH_TEST_KEY";
  auto client = MakeModelClient(cfg);
  client->CompleteOnce("p", {});
  EXPECT_EQ(server.last_auth(), "Bearer secret-1");
}

TEST(HttpChatClient, UnreachableEndpoint) {
  auto client = MakeModelClient(HttpConfig("http://127.0.0.1:1/v1/chat/completions", 1));
  EXPECT_THROW(CompleteWithRetries(*client, "p", {}, 1), TransportError);
}

TEST(ScriptedClient, ServesInOrderAndRepeatsLast) {
  ScriptedClient client("s", json::array({"a", "b"}), true);
  EXPECT_EQ(client.CompleteOnce("p1", {}), "a");
  EXPECT_EQ(client.CompleteOnce("p2", {}), "b");
  EXPECT_EQ(client.CompleteOnce("p3", {}), "b");
  EXPECT_EQ(client.calls(), 3);
  EXPECT_EQ(client.last_prompt(), "p3");
}

TEST(ScriptedClient, ExhaustedWithoutRepeat) {
  ScriptedClient client("s", json::array({"a"}), false);
  client.CompleteOnce("p", {});
  EXPECT_THROW(client.CompleteOnce("p", {}), AttemptError);
}

TEST(ReplayClient, ServesRecordedOutputs) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "trajectory.jsonl");
    out << json{{"index", 0}, {"raw_output", "Action: Click(1, 2)"}}.dump() << "\n";
    out << json{{"index", 1}, {"raw_output", "Action: Complete()"}}.dump() << "\n";
  }
  ReplayClient client("r", dir / "trajectory.jsonl");
  EXPECT_EQ(client.CompleteOnce("", {}), "Action: Click(1, 2)");
  EXPECT_EQ(client.CompleteOnce("", {}), "Action: Complete()");
  EXPECT_THROW(client.CompleteOnce("", {}), AttemptError);
  EXPECT_THROW(ReplayClient("r", dir / "missing.jsonl"), IoError);
}

TEST(Base64, KnownVectors) {
  const std::string s = "foobar";
  const std::vector<std::uint8_t> bytes(s.begin(), s.end());
  EXPECT_EQ(Base64Encode(std::span(bytes).first(0)), "");
  EXPECT_EQ(Base64Encode(std::span(bytes).first(1)), "Zg==");
  EXPECT_EQ(Base64Encode(std::span(bytes).first(2)), "Zm8=");
  EXPECT_EQ(Base64Encode(bytes), "Zm9vYmFy");
}

TEST(EndpointConfig, ReplayPathResolvesAgainstBase) {
  const EndpointConfig cfg =
      EndpointConfig::FromJson({{"name", "r"}, {"kind", "replay"}, {"replay", "t.jsonl"}}, "/base");
  EXPECT_EQ(cfg.replay_path, std::filesystem::path("/base/t.jsonl"));
  EXPECT_EQ(cfg.model_id, "r");
}

}  // namespace
}  // namespace probench
