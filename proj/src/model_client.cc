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

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>

#include "httplib.h"

namespace probench {

using nlohmann::json;

EndpointConfig EndpointConfig::FromJson(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("endpoint config", "", "expected an object");
  EndpointConfig cfg;
  try {
    cfg.name = doc.value("name", std::string());
    cfg.kind = doc.value("kind", std::string("http"));
    cfg.endpoint = doc.value("endpoint", std::string());
    cfg.model_id = doc.value("model_id", std::string());
    cfg.api_key_env = doc.value("api_key_env", std::string());
    cfg.timeout_s = doc.value("timeout_s", 120.0);
    cfg.max_retries = doc.value("max_retries", 2);
    if (doc.contains("responses")) cfg.script = doc.at("responses");
    cfg.repeat_last = doc.value("repeat_last", true);
    if (doc.contains("replay")) {
      cfg.replay_path = doc.at("replay").get<std::string>();
      if (cfg.replay_path.is_relative() && !base_dir.empty()) cfg.replay_path = base_dir / cfg.replay_path;
    }
  } catch (const json::exception& e) {
    throw ValidationError("endpoint config '" + cfg.name + "'", "", e.what());
  }
  if (doc.contains("api_key"))
    throw ValidationError("endpoint config '" + cfg.name + "'", "api_key",
                          "keys are read from the environment; use api_key_env");
  if (cfg.model_id.empty()) cfg.model_id = cfg.name;
  cfg.Validate();
  return cfg;
}

void EndpointConfig::Validate() const {
  const std::string subject = "endpoint config '" + name + "'";
  if (timeout_s <= 0) throw ValidationError(subject, "timeout_s", "must be > 0");
  if (max_retries < 0) throw ValidationError(subject, "max_retries", "must be >= 0");
  if (kind == "http") {
    if (endpoint.rfind("http://", 0) != 0 && endpoint.rfind("https://", 0) != 0)
      throw ValidationError(subject, "endpoint", "expected an http(s) URL");
  } else if (kind == "script") {
    if (!script.is_array() || script.empty())
      throw ValidationError(subject, "responses", "script endpoints need a non-empty responses array");
  } else if (kind == "replay") {
    if (replay_path.empty()) throw ValidationError(subject, "replay", "missing trajectory path");
  } else {
    throw ValidationError(subject, "kind", "unknown endpoint kind '" + kind + "'");
  }
}

std::string CompleteWithRetries(ModelClient& client, const std::string& prompt,
                                std::span<const Image> images, int max_retries) {
  const int attempts = max_retries + 1;
  for (int attempt = 1;; ++attempt) {
    try {
      return client.CompleteOnce(prompt, images);
    } catch (const AttemptError& e) {
      spdlog::warn("model '{}' attempt {}/{} failed: {}", client.model_id(), attempt, attempts, e.what());
      if (attempt >= attempts) {
        throw TransportError(e.kind(), attempt,
                             "model '" + client.model_id() + "' failed after " + std::to_string(attempt) +
                                 " attempts: " + e.what());
      }
    }
  }
}

std::unique_ptr<ModelClient> MakeModelClient(const EndpointConfig& cfg) {
  cfg.Validate();
  if (cfg.kind == "script") return std::make_unique<ScriptedClient>(cfg.model_id, cfg.script, cfg.repeat_last);
  if (cfg.kind == "replay") return std::make_unique<ReplayClient>(cfg.model_id, cfg.replay_path);
  return std::make_unique<HttpChatClient>(cfg);
}

// --- ScriptedClient ----------------------------------------------------------

ScriptedClient::ScriptedClient(std::string model_id, json script, bool repeat_last)
    : model_id_(std::move(model_id)), script_(std::move(script)), repeat_last_(repeat_last) {
  if (!script_.is_array() || script_.empty()) throw ValidationError("script", "responses", "must be non-empty");
}

std::string ScriptedClient::CompleteOnce(const std::string& prompt, std::span<const Image>) {
  std::lock_guard lock(mu_);
  ++calls_;
  last_prompt_ = prompt;
  if (next_ >= script_.size()) {
    if (!repeat_last_) throw AttemptError(TransportError::Kind::kTransport, "script exhausted");
    next_ = script_.size() - 1;
  }
  const json& entry = script_[next_++];
  if (entry.is_string()) return entry.get<std::string>();
  if (entry.is_object() && entry.contains("error")) {
    const std::string kind = entry["error"].get<std::string>();
    if (kind == "timeout") throw AttemptError(TransportError::Kind::kTimeout, "scripted timeout");
    if (kind == "status")
      throw AttemptError(TransportError::Kind::kStatus,
                         "scripted status " + std::to_string(entry.value("status", 500)));
    throw AttemptError(TransportError::Kind::kTransport, "scripted transport error");
  }
  throw ValidationError("script", "responses", "entries must be strings or {\"error\": ...}");
}

std::string ScriptedClient::last_prompt() const {
  std::lock_guard lock(mu_);
  return last_prompt_;
}

// --- ReplayClient ------------------------------------------------------------

ReplayClient::ReplayClient(std::string model_id, const std::filesystem::path& trajectory_jsonl)
    : model_id_(std::move(model_id)) {
  std::ifstream in(trajectory_jsonl);
  if (!in) throw IoError("cannot open replay trajectory " + trajectory_jsonl.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    outputs_.push_back(json::parse(line).at("raw_output").get<std::string>());
  }
}

std::string ReplayClient::CompleteOnce(const std::string&, std::span<const Image>) {
  if (next_ >= outputs_.size())
    throw AttemptError(TransportError::Kind::kTransport, "replay exhausted after " +
                                                             std::to_string(outputs_.size()) + " steps");
  return outputs_[next_++];
}

// --- HttpChatClient ----------------------------------------------------------

std::string Base64Encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                                static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

HttpChatClient::HttpChatClient(EndpointConfig cfg) : cfg_(std::move(cfg)) {
  const std::size_t scheme_end = cfg_.endpoint.find("://");
  const std::size_t path_start = cfg_.endpoint.find('/', scheme_end + 3);
  base_url_ = cfg_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/v1/chat/completions" : cfg_.endpoint.substr(path_start);
}

json HttpChatClient::BuildRequestBody(const std::string& prompt, std::span<const Image> images) const {
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", prompt}});
  for (const Image& image : images) {
    const auto png = EncodePng(image);
    content.push_back(
        {{"type", "image_url"}, {"image_url", {{"url", "data:image/png;base64," + Base64Encode(png)}}}});
  }
  return {{"model", cfg_.model_id},
          {"temperature", 0},
          {"messages", json::array({{{"role", "user"}, {"content", std::move(content)}}})}};
}

std::string HttpChatClient::CompleteOnce(const std::string& prompt, std::span<const Image> images) {
  const long request_id = next_request_id_++;
  httplib::Client client(base_url_);
  const auto timeout_us = static_cast<long>(cfg_.timeout_s * 1e6);
  client.set_connection_timeout(timeout_us / 1000000, timeout_us % 1000000);
  client.set_read_timeout(timeout_us / 1000000, timeout_us % 1000000);
  client.set_write_timeout(timeout_us / 1000000, timeout_us % 1000000);

  httplib::Headers headers = {{"X-Request-Id", cfg_.name + "-" + std::to_string(request_id)}};
  if (!cfg_.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const std::string body = BuildRequestBody(prompt, images).dump();
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    const auto err = res.error();
    const auto kind = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
                          ? TransportError::Kind::kTimeout
                          : TransportError::Kind::kTransport;
    throw AttemptError(kind, "request " + std::to_string(request_id) + ": " + httplib::to_string(err));
  }
  spdlog::debug("model '{}' request {} -> status {} (server id '{}')", cfg_.name, request_id, res->status,
                res->get_header_value("x-request-id"));
  if (res->status < 200 || res->status >= 300)
    throw AttemptError(TransportError::Kind::kStatus,
                       "request " + std::to_string(request_id) + ": HTTP status " + std::to_string(res->status));

  try {
    const json reply = json::parse(res->body);
    const json& message = reply.at("choices").at(0).at("message");
    const json& content = message.at("content");
    if (content.is_string()) return content.get<std::string>();
    // Some gateways return a list of content parts.
    std::string text;
    for (const auto& part : content)
      if (part.value("type", "") == "text") text += part.value("text", "");
    return text;
  } catch (const json::exception& e) {
    throw AttemptError(TransportError::Kind::kTransport,
                       "request " + std::to_string(request_id) + ": malformed reply: " + e.what());
  }
}

}  // namespace probench
