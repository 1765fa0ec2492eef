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

#include "probench/agent_gateway.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "probench/prompt_templates.h"

namespace probench {

using nlohmann::json;

AgentConfig AgentConfig::FromJson(const json& doc, const std::filesystem::path& base_dir) {
  AgentConfig cfg;
  cfg.endpoint = EndpointConfig::FromJson(doc, base_dir);
  const std::string subject = "agent config '" + cfg.endpoint.name + "'";
  cfg.prompt_template = doc.value("template", std::string("plain_call"));

  if (doc.contains("template_file")) {
    std::filesystem::path path = doc.at("template_file").get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ValidationError(subject, "template_file", "cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    cfg.template_text = buffer.str();
  } else if (!FindAgentTemplate(cfg.prompt_template)) {
    throw ValidationError(subject, "template", "unknown template id '" + cfg.prompt_template + "'");
  }

  const std::string dialect = doc.value("dialect", std::string("plain_call"));
  auto parsed = ParseDialect(dialect);
  if (!parsed) throw ValidationError(subject, "dialect", "unknown dialect '" + dialect + "'");
  cfg.dialect = *parsed;

  const std::string mode = doc.value("coordinate_mode", std::string("pixel"));
  auto parsed_mode = ParseCoordinateMode(mode);
  if (!parsed_mode) throw ValidationError(subject, "coordinate_mode", "unknown mode '" + mode + "'");
  cfg.coordinate_mode = *parsed_mode;
  return cfg;
}

AgentConfig AgentConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string(), "", "cannot open agent config");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), "", e.what());
  }
  return FromJson(doc, path.parent_path());
}

json AgentConfig::ToJson() const {
  return {{"name", endpoint.name},
          {"kind", endpoint.kind},
          {"endpoint", endpoint.endpoint},
          {"model_id", endpoint.model_id},
          {"template", template_text.empty() ? prompt_template : std::string("<file>")},
          {"dialect", ToString(dialect)},
          {"coordinate_mode", ToString(coordinate_mode)},
          {"timeout_s", endpoint.timeout_s},
          {"max_retries", endpoint.max_retries}};
}

std::string HistoryLog::Render() const {
  if (entries_.empty()) return "None";
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += '\n';
    out += std::to_string(i + 1) + ". " + entries_[i];
  }
  return out;
}

std::string BuildPrompt(const AgentConfig& cfg, const Task& task, const HistoryLog& history) {
  std::string_view tmpl = cfg.template_text;
  if (tmpl.empty()) {
    const std::string* builtin = FindAgentTemplate(cfg.prompt_template);
    if (!builtin) throw TemplateError("unknown template id '" + cfg.prompt_template + "'");
    tmpl = *builtin;
  }
  return FillTemplate(tmpl, {{"<goal>", task.instruction}, {"<history>", history.Render()}}, {"<goal>"});
}

AgentGateway::AgentGateway(AgentConfig cfg, std::unique_ptr<ModelClient> client)
    : cfg_(std::move(cfg)), client_(std::move(client)) {}

AgentGateway::AgentGateway(AgentConfig cfg) : cfg_(std::move(cfg)), client_(MakeModelClient(cfg_.endpoint)) {}

std::string AgentGateway::RequestAction(const std::string& prompt, const Image& screenshot) {
  std::string reply = CompleteWithRetries(*client_, prompt, std::span<const Image>(&screenshot, 1),
                                          cfg_.endpoint.max_retries);
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  reply.erase(reply.begin(), std::find_if(reply.begin(), reply.end(), not_space));
  reply.erase(std::find_if(reply.rbegin(), reply.rend(), not_space).base(), reply.end());
  return reply;
}

}  // namespace probench
