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

#ifndef PROBENCH_EXECUTOR_H_
#define PROBENCH_EXECUTOR_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "probench/action.h"
#include "probench/action_grammar.h"
#include "probench/agent_gateway.h"
#include "probench/device.h"
#include "probench/process_provider.h"
#include "probench/task_model.h"

namespace probench {

inline constexpr int kEarlyStopWindow = 5;

enum class Termination { kCompletedSignal, kStepBudget, kEarlyStop, kExecutionError };

std::string_view ToString(Termination termination);
std::optional<Termination> ParseTermination(std::string_view text);

struct StepRecord {
  int index = 0;
  std::string screenshot_ref;  // relative to the task directory
  std::optional<std::string> a11y_ref;
  std::string raw_output;
  std::optional<Action> action;
  std::optional<ParseError> parse_error;
  std::optional<ProcessDescription> process_desc;
  std::int64_t duration_ms = 0;

  nlohmann::json ToJson() const;
  static StepRecord FromJson(const nlohmann::json& doc);
};

struct Trajectory {
  std::string task_id;
  std::vector<StepRecord> steps;
  Termination termination = Termination::kStepBudget;
  std::string final_screenshot_ref;
  std::optional<std::string> error;  // set for execution_error

  // Executed (device-effecting or Complete) actions in order.
  std::vector<Action> Actions() const;
};

// True iff the last kEarlyStopWindow actions exist and are all equal.
bool CheckEarlyStop(std::span<const Action> history);

// Optional summarizer used for clicks. With kind == kStructure it is only
// consulted when a click has no accessibility dump.
struct ProviderConfig {
  ProviderKind kind = ProviderKind::kStructure;
  ModelClient* summarizer = nullptr;
  int summarizer_retries = 2;
};

struct RunOptions {
  std::optional<int> max_steps;  // overrides task.max_steps
  bool reset_device = true;
};

// Runs one task and persists it under `task_dir`:
//   steps/NNN.png, steps/NNN.xml, trajectory.jsonl, final.png, result.json.
// trajectory.jsonl gains one flushed line per step before the next agent
// call. Device and agent transport failures end the run with
// execution_error; the partial trajectory is kept.
Trajectory RunTask(const Task& task, AgentGateway& agent, Device& device, const ProviderConfig& provider,
                   const std::filesystem::path& task_dir, const RunOptions& options = {});

// Reads a persisted trajectory back (trajectory.jsonl + result.json).
Trajectory LoadTrajectory(const std::filesystem::path& task_dir);

// Step file name for index `i`: "steps/007.png" style.
std::string StepFile(int index, std::string_view extension);

// Checks a task directory against the run layout. Returns a list of
// problems; empty means valid.
std::vector<std::string> ValidateTaskDir(const std::filesystem::path& task_dir);

// Small filesystem helpers shared by the pipeline stages.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& doc);  // atomic rename
std::vector<nlohmann::json> ReadJsonLines(const std::filesystem::path& path);

}  // namespace probench

#endif  // PROBENCH_EXECUTOR_H_
