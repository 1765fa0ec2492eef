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

#ifndef PROBENCH_PROMPT_TEMPLATES_H_
#define PROBENCH_PROMPT_TEMPLATES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probench/error.h"

namespace probench {

// Agent prompt templates by id: plain_call, plain_call_think, tagged_dict,
// ui_r1, uitars. Returns nullptr for an unknown id.
const std::string* FindAgentTemplate(std::string_view id);
std::vector<std::string> AgentTemplateIds();

std::string_view SummarizerTemplate();
std::string_view StateJudgeTemplate();
std::string_view ProcessJudgeTemplate();

struct Substitution {
  std::string_view placeholder;
  std::string value;
};

// Replaces each placeholder once. Throws TemplateError when a `required`
// placeholder is absent or a placeholder survives substitution.
std::string FillTemplate(std::string_view tmpl, const std::vector<Substitution>& subs,
                         const std::vector<std::string_view>& required);

// Content of the first <tag>...</tag> pair, or nullopt when either tag is
// missing. Tag names match case-insensitively.
std::optional<std::string> ExtractTagged(std::string_view text, std::string_view tag);

}  // namespace probench

#endif  // PROBENCH_PROMPT_TEMPLATES_H_
