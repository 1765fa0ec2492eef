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

// Run-directory orchestration shared by the CLI, the review server and the
// Python module. A run directory looks like
//
//   <run_id>/run.json            run metadata
//   <run_id>/suite.json          copy of the suite the run used
//   <run_id>/verdicts.jsonl      human verdict log (append-only)
//   <run_id>/<task_id>/...       see RunTask
//   <run_id>/<task_id>/process.<sdc|mllm>.jsonl
//
// result.json gains the evaluation fields written by EvaluateRun.

#ifndef PROBENCH_PIPELINE_H_
#define PROBENCH_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "probench/evaluator.h"
#include "probench/executor.h"
#include "probench/metrics.h"
#include "probench/task_model.h"

namespace probench {

struct RunInfo {
  std::filesystem::path dir;
  std::string run_id;
  nlohmann::json meta;
  TaskSuite suite;

  std::filesystem::path TaskDir(std::string_view task_id) const { return dir / std::string(task_id); }
};

// Reads run.json and suite.json; throws IoError when either is missing.
RunInfo OpenRun(const std::filesystem::path& dir);

// True when `dir` holds a run.json.
bool IsRunDir(const std::filesystem::path& dir);

// Task ids that have a result.json, in suite order.
std::vector<std::string> ListTasks(const RunInfo& run);

std::string MakeRunId();

struct SuiteRunOptions {
  std::string run_id;                    // generated when empty
  std::vector<std::string> task_filter;  // all tasks when empty
  RunOptions task_options;
};

// Executes every task of `suite` into <out_root>/<run_id>/ and returns the
// run directory.
std::filesystem::path RunSuite(const TaskSuite& suite, AgentGateway& agent, Device& device,
                               const ProviderConfig& provider, const std::filesystem::path& out_root,
                               const SuiteRunOptions& options = {});

// Rebuilds the process descriptions of every task with one provider and
// writes process.<kind>.jsonl (plus steps/NNN.stitch.png for the
// summarizer). Clicks without a dump use `summarizer` when it is set.
// Returns the number of descriptions written.
int ProcessRun(const RunInfo& run, ProviderKind kind, ModelClient* summarizer, int summarizer_retries = 2);

// Descriptions for `kind`: process.<kind>.jsonl when present, otherwise the
// ones recorded during execution.
std::vector<ProcessDescription> LoadProcessDescriptions(const std::filesystem::path& task_dir, ProviderKind kind);

struct EvalOptions {
  ProviderKind provider = ProviderKind::kStructure;
  EarlyStopConvention convention = EarlyStopConvention::kUncompleted;
  int retries = kJudgerRetries;
};

// Judges completed tasks and writes the outcome fields into each
// result.json. Returns outcomes keyed by task id.
std::map<std::string, Outcome> EvaluateRun(const RunInfo& run, ModelClient& judger, const EvalOptions& options = {});

// Outcome recorded in result.json, or nullopt before evaluation. With a
// provider, reads that provider's entry.
std::optional<Outcome> ReadOutcome(const std::filesystem::path& task_dir,
                                   std::optional<std::string> provider = std::nullopt);

// Outcomes for every evaluated task, keyed by task id.
std::map<std::string, Outcome> CollectOutcomes(const RunInfo& run, std::optional<std::string> provider = std::nullopt);

// Providers that have at least one evaluated task.
std::vector<std::string> EvaluatedProviders(const RunInfo& run);

std::vector<HumanVerdict> ReadVerdicts(const RunInfo& run);
void AppendVerdict(const RunInfo& run, const HumanVerdict& verdict);

// Agreement per provider (plus the run's primary outcome under "default").
std::map<std::string, AgreementResult> RunAgreement(const RunInfo& run, EarlyStopConvention convention);

// Convention the run was evaluated under; the default when not evaluated.
EarlyStopConvention RunConvention(const RunInfo& run);

// Aggregates a run and writes the report files.
ReportInput BuildReport(const RunInfo& run, std::optional<EarlyStopConvention> convention = std::nullopt);

}  // namespace probench

#endif  // PROBENCH_PIPELINE_H_
