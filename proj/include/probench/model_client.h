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

#ifndef PROBENCH_MODEL_CLIENT_H_
#define PROBENCH_MODEL_CLIENT_H_

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "probench/error.h"
#include "probench/image.h"

namespace probench {

// Connection settings shared by agents, the summarizer and the judger.
//
// kind "http"   OpenAI-compatible chat-completions endpoint.
// kind "script" canned responses, consumed in order (tests, dry runs).
// kind "replay" raw outputs read back from a recorded trajectory.jsonl.
struct EndpointConfig {
  std::string name;
  std::string kind = "http";
  std::string endpoint;
  std::string model_id;
  std::string api_key_env;
  double timeout_s = 120.0;
  int max_retries = 2;

  // kind == "script". Each entry is either a response string or an object
  // {"error": "timeout"|"transport"|"status", "status": N} simulating a
  // failed attempt. When `repeat_last` is set the final entry is reused
  // once the script runs out.
  nlohmann::json script = nlohmann::json::array();
  bool repeat_last = true;

  // kind == "replay".
  std::filesystem::path replay_path;

  // Parses the common keys; relative replay paths resolve against `base_dir`.
  static EndpointConfig FromJson(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
  void Validate() const;
};

// One attempt failed in a way that may succeed on retry.
class AttemptError : public Error {
 public:
  AttemptError(TransportError::Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  TransportError::Kind kind() const { return kind_; }

 private:
  TransportError::Kind kind_;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Single attempt. Throws AttemptError on retryable failures.
  virtual std::string CompleteOnce(const std::string& prompt, std::span<const Image> images) = 0;
  virtual const std::string& model_id() const = 0;
};

// Retries `CompleteOnce` up to `max_retries` extra times, then throws
// TransportError carrying the attempt count.
std::string CompleteWithRetries(ModelClient& client, const std::string& prompt,
                                std::span<const Image> images, int max_retries);

std::unique_ptr<ModelClient> MakeModelClient(const EndpointConfig& cfg);

class ScriptedClient : public ModelClient {
 public:
  ScriptedClient(std::string model_id, nlohmann::json script, bool repeat_last);
  std::string CompleteOnce(const std::string& prompt, std::span<const Image> images) override;
  const std::string& model_id() const override { return model_id_; }

  int calls() const { return calls_; }
  // Prompt text of the most recent call.
  std::string last_prompt() const;

 private:
  std::string model_id_;
  nlohmann::json script_;
  bool repeat_last_;
  std::size_t next_ = 0;
  int calls_ = 0;
  mutable std::mutex mu_;
  std::string last_prompt_;
};

// Serves the `raw_output` of each line of a trajectory.jsonl in order.
class ReplayClient : public ModelClient {
 public:
  ReplayClient(std::string model_id, const std::filesystem::path& trajectory_jsonl);
  std::string CompleteOnce(const std::string& prompt, std::span<const Image> images) override;
  const std::string& model_id() const override { return model_id_; }

 private:
  std::string model_id_;
  std::vector<std::string> outputs_;
  std::size_t next_ = 0;
};

class HttpChatClient : public ModelClient {
 public:
  explicit HttpChatClient(EndpointConfig cfg);
  std::string CompleteOnce(const std::string& prompt, std::span<const Image> images) override;
  const std::string& model_id() const override { return cfg_.model_id; }

  // Request body sent for a prompt plus images (exposed for tests).
  nlohmann::json BuildRequestBody(const std::string& prompt, std::span<const Image> images) const;

 private:
  EndpointConfig cfg_;
  std::string base_url_;
  std::string path_;
  std::atomic<long> next_request_id_{1};
};

std::string Base64Encode(std::span<const std::uint8_t> data);

}  // namespace probench

#endif  // PROBENCH_MODEL_CLIENT_H_
