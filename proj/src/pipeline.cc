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

#include "probench/pipeline.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "probench/error.h"

namespace probench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::string> ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

bool IsRunDir(const fs::path& dir) { return fs::is_regular_file(dir / "run.json"); }

RunInfo OpenRun(const fs::path& dir) {
  RunInfo run;
  run.dir = dir;
  run.meta = ReadJsonFile(dir / "run.json");
  run.run_id = run.meta.value("run_id", dir.filename().string());
  run.suite = TaskSuite::FromJson(ReadJsonFile(dir / "suite.json"));
  return run;
}

std::vector<std::string> ListTasks(const RunInfo& run) {
  std::vector<std::string> ids;
  for (const Task& t : run.suite.tasks())
    if (fs::is_regular_file(run.TaskDir(t.id) / "result.json")) ids.push_back(t.id);
  return ids;
}

std::string MakeRunId() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

fs::path RunSuite(const TaskSuite& suite, AgentGateway& agent, Device& device, const ProviderConfig& provider,
                  const fs::path& out_root, const SuiteRunOptions& options) {
  const std::string run_id = options.run_id.empty() ? MakeRunId() : options.run_id;
  const fs::path dir = out_root / run_id;
  fs::create_directories(dir);

  std::vector<const Task*> selected;
  for (const std::string& id : options.task_filter)
    if (!suite.FindTask(id)) throw ValidationError(id, "task_id", "not in suite '" + suite.name() + "'");
  for (const Task& t : suite.tasks())
    if (options.task_filter.empty() ||
        std::find(options.task_filter.begin(), options.task_filter.end(), t.id) != options.task_filter.end())
      selected.push_back(&t);

  json meta = {{"run_id", run_id},
               {"suite", suite.name()},
               {"suite_version", suite.version()},
               {"agent", agent.config().name()},
               {"model_id", agent.client().model_id()},
               {"prompt_template", agent.config().prompt_template},
               {"dialect", ToString(agent.config().dialect)},
               {"coordinate_mode", ToString(agent.config().coordinate_mode)},
               {"device", device.Describe()},
               {"provider", ToString(provider.kind)},
               {"started_at", UtcTimestamp()},
               {"tasks", selected.size()}};
  if (options.task_options.max_steps) meta["max_steps"] = *options.task_options.max_steps;
  WriteJsonFile(dir / "run.json", meta);
  WriteJsonFile(dir / "suite.json", suite.ToJson());

  for (const Task* task : selected) {
    spdlog::info("run {}: task {} ({})", run_id, task->id, task->instruction);
    RunTask(*task, agent, device, provider, dir / task->id, options.task_options);
  }
  meta["finished_at"] = UtcTimestamp();
  WriteJsonFile(dir / "run.json", meta);
  return dir;
}

// --- Process descriptions -----------------------------------------------------

std::vector<ProcessDescription> LoadProcessDescriptions(const fs::path& task_dir, ProviderKind kind) {
  std::vector<ProcessDescription> out;
  const fs::path file = task_dir / ("process." + std::string(ToString(kind)) + ".jsonl");
  if (fs::is_regular_file(file)) {
    for (const json& line : ReadJsonLines(file)) out.push_back(ProcessDescription::FromJson(line));
    return out;
  }
  for (const StepRecord& s : LoadTrajectory(task_dir).steps)
    if (s.process_desc) out.push_back(*s.process_desc);
  return out;
}

int ProcessRun(const RunInfo& run, ProviderKind kind, ModelClient* summarizer, int summarizer_retries) {
  if (kind == ProviderKind::kSummarizer && !summarizer)
    throw ValidationError("process", "mllm", "the summarizer provider needs a model configuration");
  int written = 0;
  for (const std::string& task_id : ListTasks(run)) {
    const fs::path task_dir = run.TaskDir(task_id);
    const Trajectory traj = LoadTrajectory(task_dir);
    std::ofstream out(task_dir / ("process." + std::string(ToString(kind)) + ".jsonl"), std::ios::trunc);
    if (!out) throw IoError("cannot write process file in " + task_dir.string());

    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
      const StepRecord& step = traj.steps[i];
      if (!step.action) continue;
      // An action that hit an execution error never ran.
      if (traj.termination == Termination::kExecutionError && i + 1 == traj.steps.size() && !step.process_desc)
        continue;
      const auto* click = std::get_if<action::Click>(&*step.action);
      if (!click) {
        out << ProcessDescription{step.index, DescriptionSource::kCanonical, CanonicalString(*step.action), true}
                   .ToJson()
                   .dump()
            << "\n";
        ++written;
        continue;
      }

      std::optional<ProcessDescription> desc;
      const Image before = ReadPng(task_dir / step.screenshot_ref);
      if (kind == ProviderKind::kStructure && step.a11y_ref) {
        if (auto xml = ReadTextFile(task_dir / *step.a11y_ref)) {
          try {
            const A11yDocument doc = ParseA11yXml(*xml, before.width(), before.height());
            desc = ConvertClickDescription(&doc, *click, step.index);
          } catch (const A11yParseError& e) {
            spdlog::warn("{} step {}: {}", task_id, step.index, e.what());
          }
        }
      }
      if (!desc && summarizer) {
        // The screen after step i is the observation of step i + 1, or the
        // final screenshot for the last step.
        const fs::path after_path = i + 1 < traj.steps.size() ? task_dir / traj.steps[i + 1].screenshot_ref
                                                               : task_dir / traj.final_screenshot_ref;
        const StitchedImage stitched = StitchScreens(before, ReadPng(after_path), {click->x, click->y});
        WritePng(stitched.composite, task_dir / StepFile(step.index, "stitch.png"));
        desc = SummarizeTransition(*summarizer, summarizer_retries, stitched, CanonicalString(*step.action),
                                   {click->x, click->y}, step.index);
      }
      if (!desc) {
        spdlog::warn("{} step {}: click has no dump and no summarizer is configured", task_id, step.index);
        desc = ProcessDescription{step.index, DescriptionSource::kCanonical, CanonicalString(*step.action), true};
      }
      out << desc->ToJson().dump() << "\n";
      ++written;
    }
    out.flush();
    if (!out) throw IoError("short write to process file in " + task_dir.string());
  }
  return written;
}

// --- Evaluation ----------------------------------------------------------------

std::map<std::string, Outcome> EvaluateRun(const RunInfo& run, ModelClient& judger, const EvalOptions& options) {
  std::map<std::string, Outcome> outcomes;
  const std::string provider(ToString(options.provider));
  for (const std::string& task_id : ListTasks(run)) {
    const Task& task = *run.suite.FindTask(task_id);
    const fs::path task_dir = run.TaskDir(task_id);
    const Trajectory traj = LoadTrajectory(task_dir);
    json result = ReadJsonFile(task_dir / "result.json");

    Outcome outcome;
    std::optional<Judgment> judgment;
    if (traj.termination == Termination::kCompletedSignal) {
      try {
        const Image final_image = ReadPng(task_dir / traj.final_screenshot_ref);
        judgment = task.task_type == TaskType::kStateRelated
                       ? JudgeState(judger, task.instruction, final_image, options.retries)
                       : JudgeProcess(judger, task.instruction,
                                      LoadProcessDescriptions(task_dir, options.provider), final_image,
                                      options.retries);
        outcome = DetermineOutcome(traj.termination, judgment->verdict, options.convention);
      } catch (const EvalError& e) {
        outcome = EvalErrorOutcome(traj.termination, e.what());
      }
    } else {
      outcome = DetermineOutcome(traj.termination, std::nullopt, options.convention);
    }

    result["outcome"] = outcome.cls ? json(ToString(*outcome.cls)) : json(nullptr);
    result["early_stop"] = outcome.early_stop;
    result.erase("eval_error");
    if (outcome.eval_error) result["eval_error"] = *outcome.eval_error;
    result["verdict"] = judgment ? json(judgment->verdict) : json(nullptr);
    result["rationale"] = judgment ? judgment->rationale : "";
    result["judger_model"] = judger.model_id();
    result["provider"] = provider;
    result["early_stop_convention"] = ToString(options.convention);
    json entry = outcome.ToJson();
    entry["verdict"] = result["verdict"];
    result["by_provider"][provider] = entry;
    WriteJsonFile(task_dir / "result.json", result);

    spdlog::info("eval {}: {}", task_id, outcome.cls ? ToString(*outcome.cls) : "eval_error");
    outcomes.emplace(task_id, outcome);
  }
  return outcomes;
}

std::optional<Outcome> ReadOutcome(const fs::path& task_dir, std::optional<std::string> provider) {
  const json result = ReadJsonFile(task_dir / "result.json");
  if (provider) {
    if (!result.contains("by_provider") || !result.at("by_provider").contains(*provider)) return std::nullopt;
    return Outcome::FromJson(result.at("by_provider").at(*provider));
  }
  if (!result.contains("outcome")) return std::nullopt;
  Outcome o;
  if (result.at("outcome").is_string()) {
    o.cls = ParseOutcomeClass(result.at("outcome").get<std::string>());
    if (!o.cls) throw IoError(task_dir.string() + ": unknown outcome " + result.at("outcome").dump());
  }
  o.early_stop = result.value("early_stop", false);
  if (result.contains("eval_error")) o.eval_error = result.at("eval_error").get<std::string>();
  return o;
}

std::map<std::string, Outcome> CollectOutcomes(const RunInfo& run, std::optional<std::string> provider) {
  std::map<std::string, Outcome> out;
  for (const std::string& task_id : ListTasks(run))
    if (auto o = ReadOutcome(run.TaskDir(task_id), provider)) out.emplace(task_id, *o);
  return out;
}

std::vector<std::string> EvaluatedProviders(const RunInfo& run) {
  std::vector<std::string> providers;
  for (const std::string& task_id : ListTasks(run)) {
    const json result = ReadJsonFile(run.TaskDir(task_id) / "result.json");
    if (!result.contains("by_provider")) continue;
    for (auto it = result.at("by_provider").begin(); it != result.at("by_provider").end(); ++it)
      if (std::find(providers.begin(), providers.end(), it.key()) == providers.end()) providers.push_back(it.key());
  }
  std::sort(providers.begin(), providers.end());
  return providers;
}

EarlyStopConvention RunConvention(const RunInfo& run) {
  for (const std::string& task_id : ListTasks(run)) {
    const json result = ReadJsonFile(run.TaskDir(task_id) / "result.json");
    if (result.contains("early_stop_convention"))
      if (auto c = ParseEarlyStopConvention(result.at("early_stop_convention").get<std::string>())) return *c;
  }
  return EarlyStopConvention::kUncompleted;
}

// --- Verdicts ------------------------------------------------------------------

std::vector<HumanVerdict> ReadVerdicts(const RunInfo& run) {
  std::vector<HumanVerdict> out;
  const fs::path log = run.dir / "verdicts.jsonl";
  if (!fs::exists(log)) return out;
  for (const json& line : ReadJsonLines(log)) out.push_back(HumanVerdict::FromJson(line));
  return out;
}

void AppendVerdict(const RunInfo& run, const HumanVerdict& verdict) {
  std::ofstream out(run.dir / "verdicts.jsonl", std::ios::app);
  if (!out) throw IoError("cannot append to " + (run.dir / "verdicts.jsonl").string());
  out << verdict.ToJson().dump() << "\n";
  out.flush();
  if (!out) throw IoError("short write to verdicts.jsonl");
}

std::map<std::string, AgreementResult> RunAgreement(const RunInfo& run, EarlyStopConvention convention) {
  std::map<std::string, AgreementResult> out;
  const std::vector<HumanVerdict> log = ReadVerdicts(run);
  out.emplace("default", Agreement(CollectOutcomes(run), log, convention));
  for (const std::string& provider : EvaluatedProviders(run))
    out.emplace(provider, Agreement(CollectOutcomes(run, provider), log, convention));
  return out;
}

ReportInput BuildReport(const RunInfo& run, std::optional<EarlyStopConvention> convention) {
  ReportInput in;
  in.convention = convention.value_or(RunConvention(run));
  in.run = run.meta;
  std::vector<std::pair<std::string, Outcome>> outcomes;
  for (const auto& [task_id, o] : CollectOutcomes(run)) outcomes.emplace_back(task_id, ApplyConvention(o, in.convention));
  in.metrics = Aggregate(run.suite, outcomes);
  for (const std::string& task_id : ListTasks(run)) {
    const json result = ReadJsonFile(run.TaskDir(task_id) / "result.json");
    if (result.contains("provider")) {
      in.provider = result.at("provider").get<std::string>();
      break;
    }
  }
  if (!ReadVerdicts(run).empty()) {
    in.agreement = RunAgreement(run, in.convention);
    // "default" duplicates the provider that produced the primary outcome.
    if (in.agreement.size() > 1) in.agreement.erase("default");
  }
  return in;
}

}  // namespace probench
