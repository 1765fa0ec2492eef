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

#include "probench/evaluator.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>

#include "probench/prompt_templates.h"

namespace probench {

using nlohmann::json;

namespace {

std::string Trimmed(std::string_view s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  auto begin = std::find_if(s.begin(), s.end(), not_space);
  auto end = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return begin < end ? std::string(begin, end) : std::string();
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::optional<bool> ParseJudgment(std::string_view raw) {
  const auto answer = ExtractTagged(raw, "answer");
  if (!answer) return std::nullopt;
  const std::string word = Lower(Trimmed(*answer));
  if (word == "true") return true;
  if (word == "false") return false;
  return std::nullopt;
}

std::string RenderProcessList(const std::vector<ProcessDescription>& descriptions) {
  std::string out;
  int n = 0;
  for (const ProcessDescription& d : descriptions) {
    if (!d.valid) continue;
    if (n > 0) out += "\n";
    out += std::to_string(++n) + ". " + d.text;
  }
  return n == 0 ? "None" : out;
}

std::string BuildStateJudgePrompt(std::string_view goal) {
  return FillTemplate(StateJudgeTemplate(), {{"<goal>", std::string(goal)}}, {"<goal>"});
}

std::string BuildProcessJudgePrompt(std::string_view goal, const std::vector<ProcessDescription>& descriptions) {
  return FillTemplate(ProcessJudgeTemplate(),
                      {{"<goal>", std::string(goal)}, {"<process>", RenderProcessList(descriptions)}},
                      {"<goal>", "<process>"});
}

Judgment Judge(ModelClient& judger, const std::string& prompt, const Image& final_screenshot, int retries) {
  std::string last;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    try {
      last = CompleteWithRetries(judger, prompt, std::span<const Image>(&final_screenshot, 1), 0);
    } catch (const TransportError& e) {
      spdlog::warn("judger attempt {}/{} failed: {}", attempt + 1, retries + 1, e.what());
      last = e.what();
      continue;
    }
    if (const auto verdict = ParseJudgment(last)) {
      Judgment j;
      j.verdict = *verdict;
      j.rationale = Trimmed(ExtractTagged(last, "think").value_or(""));
      j.raw = last;
      j.judger_model = judger.model_id();
      return j;
    }
    spdlog::warn("judger attempt {}/{}: no True/False answer tag", attempt + 1, retries + 1);
  }
  throw EvalError("judger gave no usable answer after " + std::to_string(retries + 1) +
                  " attempts; last reply: " + last.substr(0, 200));
}

Judgment JudgeState(ModelClient& judger, std::string_view goal, const Image& final_screenshot, int retries) {
  return Judge(judger, BuildStateJudgePrompt(goal), final_screenshot, retries);
}

Judgment JudgeProcess(ModelClient& judger, std::string_view goal,
                      const std::vector<ProcessDescription>& descriptions, const Image& final_screenshot,
                      int retries) {
  return Judge(judger, BuildProcessJudgePrompt(goal, descriptions), final_screenshot, retries);
}

std::string_view ToString(OutcomeClass cls) {
  switch (cls) {
    case OutcomeClass::kUncompleted: return "Uncompleted";
    case OutcomeClass::kFailure: return "Failure";
    case OutcomeClass::kSuccess: return "Success";
  }
  return "unknown";
}

std::optional<OutcomeClass> ParseOutcomeClass(std::string_view text) {
  const std::string lowered = Lower(Trimmed(text));
  for (OutcomeClass c : {OutcomeClass::kUncompleted, OutcomeClass::kFailure, OutcomeClass::kSuccess})
    if (Lower(std::string(ToString(c))) == lowered) return c;
  return std::nullopt;
}

std::string_view ToString(EarlyStopConvention convention) {
  return convention == EarlyStopConvention::kUncompleted ? "uncompleted" : "failure";
}

std::optional<EarlyStopConvention> ParseEarlyStopConvention(std::string_view text) {
  const std::string lowered = Lower(Trimmed(text));
  if (lowered == "uncompleted") return EarlyStopConvention::kUncompleted;
  if (lowered == "failure") return EarlyStopConvention::kFailure;
  return std::nullopt;
}

json Outcome::ToJson() const {
  json doc = {{"class", cls ? json(ToString(*cls)) : json(nullptr)}, {"early_stop", early_stop}};
  if (eval_error) doc["eval_error"] = *eval_error;
  return doc;
}

Outcome Outcome::FromJson(const json& doc) {
  Outcome o;
  if (doc.contains("class") && doc.at("class").is_string()) {
    o.cls = ParseOutcomeClass(doc.at("class").get<std::string>());
    if (!o.cls) throw ValidationError("outcome", "class", "unknown class " + doc.at("class").dump());
  }
  o.early_stop = doc.value("early_stop", false);
  if (doc.contains("eval_error")) o.eval_error = doc.at("eval_error").get<std::string>();
  return o;
}

Outcome DetermineOutcome(Termination termination, std::optional<bool> verdict, EarlyStopConvention convention) {
  const bool completed = termination == Termination::kCompletedSignal;
  if (completed && !verdict) throw ContractError("a completed run needs a judgment");
  if (!completed && verdict)
    throw ContractError("judgment supplied for a run that ended with " + std::string(ToString(termination)));

  Outcome o;
  o.early_stop = termination == Termination::kEarlyStop;
  if (completed) {
    o.cls = *verdict ? OutcomeClass::kSuccess : OutcomeClass::kFailure;
  } else if (o.early_stop && convention == EarlyStopConvention::kFailure) {
    o.cls = OutcomeClass::kFailure;
  } else {
    o.cls = OutcomeClass::kUncompleted;
  }
  return o;
}

Outcome ApplyConvention(Outcome outcome, EarlyStopConvention convention) {
  if (outcome.early_stop && outcome.cls && *outcome.cls != OutcomeClass::kSuccess)
    outcome.cls = convention == EarlyStopConvention::kFailure ? OutcomeClass::kFailure : OutcomeClass::kUncompleted;
  return outcome;
}

Outcome EvalErrorOutcome(Termination termination, std::string message) {
  if (termination != Termination::kCompletedSignal)
    throw ContractError("only completed runs are judged; got " + std::string(ToString(termination)));
  Outcome o;
  o.eval_error = std::move(message);
  return o;
}

}  // namespace probench
