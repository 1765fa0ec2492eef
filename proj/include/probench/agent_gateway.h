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

#ifndef PROBENCH_AGENT_GATEWAY_H_
#define PROBENCH_AGENT_GATEWAY_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "probench/action_grammar.h"
#include "probench/coordinates.h"
#include "probench/image.h"
#include "probench/model_client.h"
#include "probench/task_model.h"

namespace probench {

struct AgentConfig {
  EndpointConfig endpoint;
  // Either a built-in template id or, when `template_file` is set, the
  // template text loaded from that file.
  std::string prompt_template = "plain_call";
  std::string template_text;
  Dialect dialect = Dialect::kPlainCall;
  CoordinateMode coordinate_mode = CoordinateMode::kPixel;

  const std::string& name() const { return endpoint.name; }

  static AgentConfig FromJson(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
  static AgentConfig Load(const std::filesystem::path& path);
  nlohmann::json ToJson() const;
};

// Canonical strings of the actions executed so far, in step order.
class HistoryLog {
 public:
  void Append(std::string canonical) { entries_.push_back(std::move(canonical)); }
  const std::vector<std::string>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // "None" when empty, else "1. Click(10, 20)\n2. Back()".
  std::string Render() const;

 private:
  std::vector<std::string> entries_;
};

// Substitutes `<goal>` with the instruction and `<history>` with the
// rendered history. Throws TemplateError for an unknown template id or a
// placeholder left after substitution.
std::string BuildPrompt(const AgentConfig& cfg, const Task& task, const HistoryLog& history);

class AgentGateway {
 public:
  AgentGateway(AgentConfig cfg, std::unique_ptr<ModelClient> client);
  explicit AgentGateway(AgentConfig cfg);

  const AgentConfig& config() const { return cfg_; }
  ModelClient& client() { return *client_; }

  std::string BuildPrompt(const Task& task, const HistoryLog& history) const {
    return probench::BuildPrompt(cfg_, task, history);
  }

  // The model's reply with surrounding whitespace trimmed. Retries per the
  // endpoint config and throws TransportError once they are exhausted.
  std::string RequestAction(const std::string& prompt, const Image& screenshot);

 private:
  AgentConfig cfg_;
  std::unique_ptr<ModelClient> client_;
};

}  // namespace probench

#endif  // PROBENCH_AGENT_GATEWAY_H_
