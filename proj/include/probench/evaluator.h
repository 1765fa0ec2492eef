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

#ifndef PROBENCH_EVALUATOR_H_
#define PROBENCH_EVALUATOR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "probench/error.h"
#include "probench/executor.h"
#include "probench/image.h"
#include "probench/model_client.h"
#include "probench/process_provider.h"

namespace probench {

inline constexpr int kJudgerRetries = 2;

struct Judgment {
  bool verdict = false;
  std::string rationale;  // contents of <think>, if any
  std::string raw;
  std::string judger_model;
};

// Raised once the judger has failed kJudgerRetries + 1 times.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Case-insensitive True/False inside the first <answer> pair, surrounding
// whitespace ignored. nullopt for anything else.
std::optional<bool> ParseJudgment(std::string_view raw);

// "1. a\n2. b" over valid descriptions, or "None" when there are none.
std::string RenderProcessList(const std::vector<ProcessDescription>& descriptions);

std::string BuildStateJudgePrompt(std::string_view goal);
std::string BuildProcessJudgePrompt(std::string_view goal, const std::vector<ProcessDescription>& descriptions);

// Sends `prompt` with the final screenshot. Transport failures and
// unparseable replies are retried `retries` times before EvalError.
Judgment Judge(ModelClient& judger, const std::string& prompt, const Image& final_screenshot,
               int retries = kJudgerRetries);

Judgment JudgeState(ModelClient& judger, std::string_view goal, const Image& final_screenshot,
                    int retries = kJudgerRetries);
Judgment JudgeProcess(ModelClient& judger, std::string_view goal,
                      const std::vector<ProcessDescription>& descriptions, const Image& final_screenshot,
                      int retries = kJudgerRetries);

enum class OutcomeClass { kUncompleted, kFailure, kSuccess };

std::string_view ToString(OutcomeClass cls);  // "Uncompleted" | "Failure" | "Success"
std::optional<OutcomeClass> ParseOutcomeClass(std::string_view text);

// Where early-stopped runs land. The default keeps them among the
// uncompleted tasks; kFailure counts them as failures instead.
enum class EarlyStopConvention { kUncompleted, kFailure };

std::string_view ToString(EarlyStopConvention convention);
std::optional<EarlyStopConvention> ParseEarlyStopConvention(std::string_view text);

struct Outcome {
  std::optional<OutcomeClass> cls;  // absent iff eval_error
  bool early_stop = false;
  std::optional<std::string> eval_error;

  nlohmann::json ToJson() const;
  static Outcome FromJson(const nlohmann::json& doc);
  bool operator==(const Outcome&) const = default;
};

// Maps a termination and the judger verdict to an outcome. The verdict must
// be present exactly when the run ended with the completion signal;
// anything else is a ContractError.
Outcome DetermineOutcome(Termination termination, std::optional<bool> verdict,
                         EarlyStopConvention convention = EarlyStopConvention::kUncompleted);

// Re-reads an outcome under another convention using its early_stop flag.
Outcome ApplyConvention(Outcome outcome, EarlyStopConvention convention);

// Outcome for a completed run whose judgment could not be obtained.
Outcome EvalErrorOutcome(Termination termination, std::string message);

}  // namespace probench

#endif  // PROBENCH_EVALUATOR_H_
