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

#include "probench/executor.h"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "probench/error.h"

namespace probench {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view ToString(Termination termination) {
  switch (termination) {
    case Termination::kCompletedSignal: return "completed_signal";
    case Termination::kStepBudget: return "step_budget";
    case Termination::kEarlyStop: return "early_stop";
    case Termination::kExecutionError: return "execution_error";
  }
  return "unknown";
}

std::optional<Termination> ParseTermination(std::string_view text) {
  for (Termination t : {Termination::kCompletedSignal, Termination::kStepBudget, Termination::kEarlyStop,
                        Termination::kExecutionError})
    if (ToString(t) == text) return t;
  return std::nullopt;
}

json StepRecord::ToJson() const {
  json doc = {{"index", index}, {"screenshot", screenshot_ref}, {"raw_output", raw_output},
              {"duration_ms", duration_ms}};
  if (a11y_ref) doc["a11y"] = *a11y_ref;
  if (action) doc["action"] = ActionToJson(*action);
  if (parse_error) doc["parse_error"] = parse_error->ToJson();
  if (process_desc) doc["process"] = process_desc->ToJson();
  return doc;
}

StepRecord StepRecord::FromJson(const json& doc) {
  StepRecord r;
  r.index = doc.at("index").get<int>();
  r.screenshot_ref = doc.at("screenshot").get<std::string>();
  if (doc.contains("a11y")) r.a11y_ref = doc.at("a11y").get<std::string>();
  r.raw_output = doc.at("raw_output").get<std::string>();
  if (doc.contains("action")) r.action = ActionFromJson(doc.at("action"));
  if (doc.contains("parse_error")) r.parse_error = ParseError::FromJson(doc.at("parse_error"));
  if (doc.contains("process")) r.process_desc = ProcessDescription::FromJson(doc.at("process"));
  r.duration_ms = doc.value("duration_ms", std::int64_t{0});
  return r;
}

std::vector<Action> Trajectory::Actions() const {
  std::vector<Action> out;
  for (const StepRecord& s : steps)
    if (s.action) out.push_back(*s.action);
  return out;
}

bool CheckEarlyStop(std::span<const Action> history) {
  if (history.size() < static_cast<std::size_t>(kEarlyStopWindow)) return false;
  const auto tail = history.last(kEarlyStopWindow);
  for (const Action& a : tail)
    if (!ActionsEqual(a, tail.front())) return false;
  return true;
}

std::string StepFile(int index, std::string_view extension) {
  char name[32];
  std::snprintf(name, sizeof(name), "steps/%03d", index);
  return std::string(name) + "." + std::string(extension);
}

// --- File helpers ------------------------------------------------------------

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const fs::path& path, const json& doc) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<json> ReadJsonLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// --- Run loop ------------------------------------------------------------------

namespace {

class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(const fs::path& task_dir) : dir_(task_dir) {
    fs::create_directories(dir_ / "steps");
    out_.open(dir_ / "trajectory.jsonl", std::ios::trunc);
    if (!out_) throw IoError("cannot write " + (dir_ / "trajectory.jsonl").string());
  }

  // Screenshot and dump first, so an interrupted step still leaves its
  // observation on disk.
  void SaveObservation(StepRecord& record, const ScreenState& state) {
    record.screenshot_ref = StepFile(record.index, "png");
    WritePng(state.screenshot, dir_ / record.screenshot_ref);
    if (!state.a11y_xml.empty()) {
      record.a11y_ref = StepFile(record.index, "xml");
      std::ofstream xml(dir_ / *record.a11y_ref, std::ios::binary | std::ios::trunc);
      xml << state.a11y_xml;
    }
  }

  void Append(const StepRecord& record) {
    out_ << record.ToJson().dump() << "\n";
    out_.flush();
    if (!out_) throw IoError("short write to trajectory.jsonl");
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::ofstream out_;
};

ProcessDescription DescribeClick(const ProviderConfig& provider, const ScreenState& before, const ScreenState& after,
                                 const action::Click& click, int step_index) {
  if (provider.kind == ProviderKind::kStructure) {
    if (auto d = ConvertClickDescription(before.a11y ? &*before.a11y : nullptr, click, step_index)) return *d;
  }
  if (provider.summarizer) {
    try {
      const StitchedImage stitched = StitchScreens(before.screenshot, after.screenshot, {click.x, click.y});
      return SummarizeTransition(*provider.summarizer, provider.summarizer_retries, stitched,
                                 CanonicalString(click), {click.x, click.y}, step_index);
    } catch (const Error& e) {
      spdlog::warn("step {}: summarizer failed, keeping the canonical click: {}", step_index, e.what());
    }
  }
  return ProcessDescription{step_index, DescriptionSource::kCanonical, CanonicalString(click), true};
}

void WriteResult(const fs::path& task_dir, const Task& task, const Trajectory& traj) {
  json result = {{"task_id", task.id},
                 {"app", task.app_id},
                 {"language", ToString(task.language)},
                 {"task_type", ToString(task.task_type)},
                 {"termination", ToString(traj.termination)},
                 {"steps", traj.steps.size()},
                 {"final_screenshot", traj.final_screenshot_ref}};
  if (traj.error) result["error"] = *traj.error;
  // A fresh trajectory invalidates any earlier judgment, so nothing is merged.
  WriteJsonFile(task_dir / "result.json", result);
}

}  // namespace

Trajectory RunTask(const Task& task, AgentGateway& agent, Device& device, const ProviderConfig& provider,
                   const fs::path& task_dir, const RunOptions& options) {
  const int budget = options.max_steps.value_or(task.max_steps);
  if (budget < 1) throw ValidationError(task.id, "max_steps", "must be at least 1");

  TrajectoryWriter writer(task_dir);
  Trajectory traj;
  traj.task_id = task.id;
  traj.final_screenshot_ref = "final.png";
  HistoryLog history;
  std::vector<Action> executed;
  std::optional<ScreenState> state;
  std::optional<Termination> termination;

  auto fail = [&](const std::string& what) {
    spdlog::error("task {}: {}", task.id, what);
    termination = Termination::kExecutionError;
    traj.error = what;
  };

  try {
    if (options.reset_device) device.Reset(task.app_id);
    state = device.Capture();
  } catch (const Error& e) {
    fail(e.what());
  }

  for (int i = 0; !termination && i < budget; ++i) {
    const auto started = std::chrono::steady_clock::now();
    StepRecord record;
    record.index = i;
    std::optional<ScreenState> next;
    try {
      writer.SaveObservation(record, *state);
      const std::string prompt = agent.BuildPrompt(task, history);
      record.raw_output = agent.RequestAction(prompt, state->screenshot);
      const CoordinateContext ctx{agent.config().coordinate_mode, {state->width, state->height}};
      ParseResult parsed = ParseAction(record.raw_output, agent.config().dialect, ctx);

      if (const ParseError* err = GetParseError(parsed)) {
        spdlog::info("task {} step {}: unparseable output ({})", task.id, i, ToString(err->kind));
        record.parse_error = *err;
      } else {
        const Action act = *GetAction(parsed);
        record.action = act;
        if (IsComplete(act)) {
          record.process_desc = ProcessDescription{i, DescriptionSource::kCanonical, CanonicalString(act), true};
          termination = Termination::kCompletedSignal;
          // The judger must see the true last screen.
          next = device.Capture();
        } else {
          device.Perform(act);
          next = device.Capture();
          if (const auto* click = std::get_if<action::Click>(&act)) {
            record.process_desc = DescribeClick(provider, *state, *next, *click, i);
          } else {
            record.process_desc = ProcessDescription{i, DescriptionSource::kCanonical, CanonicalString(act), true};
          }
          executed.push_back(act);
          history.Append(CanonicalString(act));
          if (CheckEarlyStop(executed)) termination = Termination::kEarlyStop;
        }
      }
    } catch (const Error& e) {
      fail(e.what());
    }

    record.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    // A step only enters the log once the agent has produced output for it.
    if (record.action || record.parse_error) {
      traj.steps.push_back(record);
      writer.Append(record);
    }
    if (next) state = std::move(next);
  }
  if (!termination) termination = Termination::kStepBudget;
  traj.termination = *termination;

  if (state) {
    WritePng(state->screenshot, task_dir / traj.final_screenshot_ref);
  } else {
    traj.final_screenshot_ref.clear();
  }
  WriteResult(task_dir, task, traj);
  spdlog::info("task {}: {} after {} steps", task.id, ToString(traj.termination), traj.steps.size());
  return traj;
}

Trajectory LoadTrajectory(const fs::path& task_dir) {
  Trajectory traj;
  for (const json& line : ReadJsonLines(task_dir / "trajectory.jsonl"))
    traj.steps.push_back(StepRecord::FromJson(line));
  const json result = ReadJsonFile(task_dir / "result.json");
  traj.task_id = result.at("task_id").get<std::string>();
  const auto termination = ParseTermination(result.at("termination").get<std::string>());
  if (!termination) throw IoError(task_dir.string() + ": unknown termination");
  traj.termination = *termination;
  traj.final_screenshot_ref = result.value("final_screenshot", "");
  if (result.contains("error")) traj.error = result.at("error").get<std::string>();
  return traj;
}

std::vector<std::string> ValidateTaskDir(const fs::path& task_dir) {
  std::vector<std::string> problems;
  auto need = [&](const fs::path& rel) {
    if (!fs::is_regular_file(task_dir / rel)) problems.push_back("missing " + rel.string());
  };
  need("trajectory.jsonl");
  need("result.json");
  if (!problems.empty()) return problems;

  Trajectory traj;
  try {
    traj = LoadTrajectory(task_dir);
  } catch (const std::exception& e) {
    problems.push_back(e.what());
    return problems;
  }
  if (!traj.final_screenshot_ref.empty()) need(traj.final_screenshot_ref);
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const StepRecord& s = traj.steps[i];
    const std::string where = "step " + std::to_string(i);
    if (s.index != static_cast<int>(i)) problems.push_back(where + ": index " + std::to_string(s.index));
    if (s.action.has_value() == s.parse_error.has_value())
      problems.push_back(where + ": needs exactly one of action/parse_error");
    if (s.screenshot_ref != StepFile(static_cast<int>(i), "png"))
      problems.push_back(where + ": unexpected screenshot name " + s.screenshot_ref);
    need(s.screenshot_ref);
    if (s.a11y_ref) need(*s.a11y_ref);
    // The action that hit an execution error never ran, so it has no description.
    const bool failed_step = traj.termination == Termination::kExecutionError && i + 1 == traj.steps.size();
    if (s.action && !s.process_desc && !failed_step) problems.push_back(where + ": action without description");
  }
  const bool last_complete = !traj.steps.empty() && traj.steps.back().action && IsComplete(*traj.steps.back().action);
  if ((traj.termination == Termination::kCompletedSignal) != last_complete)
    problems.push_back("termination " + std::string(ToString(traj.termination)) +
                       " disagrees with the last recorded action");
  if (traj.termination == Termination::kEarlyStop && !CheckEarlyStop(traj.Actions()))
    problems.push_back("early_stop without " + std::to_string(kEarlyStopWindow) + " equal trailing actions");
  return problems;
}

}  // namespace probench
