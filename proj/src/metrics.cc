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

#include "probench/metrics.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "probench/error.h"

namespace probench {

using nlohmann::json;

std::optional<std::int64_t> Ratio::Tenths() const {
  if (den <= 0) return std::nullopt;
  return (2000 * num + den) / (2 * den);
}

std::string Ratio::Render() const {
  const auto tenths = Tenths();
  if (!tenths) return std::string(kNoValue);
  return std::to_string(*tenths / 10) + "." + std::to_string(*tenths % 10);
}

json Ratio::ToJson() const { return {{"num", num}, {"den", den}, {"percent", Render()}}; }

namespace {

void Add(Ratio& r, bool success) {
  ++r.den;
  if (success) ++r.num;
}

}  // namespace

MetricsTable AggregateRows(const std::vector<OutcomeRow>& rows, const std::vector<std::string>& categories) {
  MetricsTable t;
  std::map<std::string, Ratio> by_category;
  std::vector<Outcome> judged;
  for (const OutcomeRow& row : rows) {
    ++t.tasks;
    if (row.outcome.eval_error || !row.outcome.cls) {
      t.eval_errors.push_back(row.task_id);
      continue;
    }
    const bool success = *row.outcome.cls == OutcomeClass::kSuccess;
    const int l = static_cast<int>(row.language);
    const int k = static_cast<int>(row.task_type);
    Add(t.cells[l][k], success);
    Add(t.language_avg[l], success);
    Add(t.overall_by_type[k], success);
    Add(t.overall, success);
    if (!row.category.empty()) Add(by_category[row.category], success);
    judged.push_back(row.outcome);
  }
  std::sort(t.eval_errors.begin(), t.eval_errors.end());

  std::set<std::string> placed;
  for (const std::string& c : categories) {
    t.categories.emplace_back(c, by_category.count(c) ? by_category.at(c) : Ratio{});
    placed.insert(c);
  }
  for (const auto& [c, r] : by_category)
    if (!placed.count(c)) t.categories.emplace_back(c, r);

  t.failure = FailureBreakdown(judged);
  return t;
}

MetricsTable Aggregate(const TaskSuite& suite, const std::vector<std::pair<std::string, Outcome>>& outcomes) {
  std::vector<OutcomeRow> rows;
  rows.reserve(outcomes.size());
  for (const auto& [task_id, outcome] : outcomes) {
    const Task* task = suite.FindTask(task_id);
    if (!task) throw ValidationError(task_id, "task_id", "result has no task in suite '" + suite.name() + "'");
    rows.push_back({task_id, task->language, task->task_type, CategoryOf(task->app_id, suite), outcome});
  }
  return AggregateRows(rows, suite.categories());
}

FailureStats FailureBreakdown(const std::vector<Outcome>& outcomes) {
  FailureStats s;
  for (const Outcome& o : outcomes) {
    if (!o.cls) continue;
    if (*o.cls == OutcomeClass::kSuccess) continue;
    const bool uncompleted = *o.cls == OutcomeClass::kUncompleted;
    Add(s.uncompleted, uncompleted);
    // Early-stopped runs count as uncompleted here even when the failure
    // convention reclassified them.
    if (uncompleted || o.early_stop) Add(s.early_stop, o.early_stop);
  }
  return s;
}

json HumanVerdict::ToJson() const {
  return {{"run_id", run_id},
          {"task_id", task_id},
          {"label", ToString(label)},
          {"annotator", annotator},
          {"timestamp", timestamp}};
}

HumanVerdict HumanVerdict::FromJson(const json& doc) {
  HumanVerdict v;
  v.run_id = doc.value("run_id", "");
  v.task_id = doc.at("task_id").get<std::string>();
  const auto label = ParseOutcomeClass(doc.at("label").get<std::string>());
  if (!label) throw ValidationError(v.task_id, "label", "must be Success, Failure or Uncompleted");
  v.label = *label;
  v.annotator = doc.value("annotator", "");
  v.timestamp = doc.value("timestamp", "");
  return v;
}

std::vector<HumanVerdict> ActiveVerdicts(const std::vector<HumanVerdict>& log) {
  std::map<std::pair<std::string, std::string>, HumanVerdict> latest;
  for (const HumanVerdict& v : log) latest[{v.task_id, v.annotator}] = v;
  std::vector<HumanVerdict> out;
  for (auto& [key, v] : latest) out.push_back(std::move(v));
  return out;
}

json AgreementResult::ToJson() const {
  json per = json::object();
  for (const auto& [annotator, r] : per_annotator) per[annotator] = r.ToJson();
  return {{"overall", overall.ToJson()}, {"n", overall.den}, {"per_annotator", per}, {"skipped", skipped}};
}

AgreementResult Agreement(const std::map<std::string, Outcome>& automatic, const std::vector<HumanVerdict>& log,
                          EarlyStopConvention convention) {
  AgreementResult result;
  for (const HumanVerdict& v : ActiveVerdicts(log)) {
    auto it = automatic.find(v.task_id);
    if (it == automatic.end()) throw ValidationError(v.task_id, "task_id", "verdict for a task with no outcome");
    const auto machine = ApplyConvention(it->second, convention).cls;
    if (!machine) {
      result.skipped.push_back(v.task_id);
      continue;
    }
    OutcomeClass human = v.label;
    if (it->second.early_stop && human == OutcomeClass::kUncompleted && convention == EarlyStopConvention::kFailure)
      human = OutcomeClass::kFailure;
    const bool match = human == *machine;
    Add(result.overall, match);
    Add(result.per_annotator[v.annotator], match);
  }
  return result;
}

// --- Rendering ---------------------------------------------------------------

json MetricsToJson(const ReportInput& in) {
  const MetricsTable& m = in.metrics;
  json cells = json::object();
  for (Language l : {Language::kEnglish, Language::kChinese}) {
    json row = json::object();
    for (TaskType k : {TaskType::kStateRelated, TaskType::kProcessRelated})
      row[std::string(ToString(k))] = m.Cell(l, k).ToJson();
    row["avg"] = m.language_avg[static_cast<int>(l)].ToJson();
    cells[std::string(ToString(l))] = row;
  }
  cells["overall"] = {{"state", m.overall_by_type[0].ToJson()},
                      {"process", m.overall_by_type[1].ToJson()},
                      {"avg", m.overall.ToJson()}};
  json categories = json::array();
  for (const auto& [name, r] : m.categories) categories.push_back({{"category", name}, {"accuracy", r.ToJson()}});
  json agreement = json::object();
  for (const auto& [provider, a] : in.agreement) agreement[provider] = a.ToJson();
  return {{"run", in.run},
          {"tasks", m.tasks},
          {"early_stop_convention", ToString(in.convention)},
          {"provider", in.provider},
          {"accuracy", cells},
          {"categories", categories},
          {"failure", {{"uncompleted_ratio", m.failure.uncompleted.ToJson()},
                       {"early_stop_ratio", m.failure.early_stop.ToJson()}}},
          {"eval_errors", m.eval_errors},
          {"agreement", agreement}};
}

std::string RenderMarkdown(const ReportInput& in) {
  const MetricsTable& m = in.metrics;
  std::ostringstream out;
  out << "# ProBench report";
  if (in.run.contains("run_id")) out << ": " << in.run.at("run_id").get<std::string>();
  out << "\n\n";
  if (in.run.contains("agent")) out << "- Agent: " << in.run.at("agent").get<std::string>() << "\n";
  if (in.run.contains("suite")) out << "- Suite: " << in.run.at("suite").get<std::string>() << "\n";
  out << "- Tasks: " << m.tasks << "\n";
  out << "- Process provider: " << (in.provider.empty() ? std::string(kNoValue) : in.provider) << "\n";
  out << "- Early-stopped runs counted as: " << ToString(in.convention) << "\n\n";
  if (m.tasks == 0) out << "> Warning: this run has no evaluated tasks.\n\n";

  out << "## Accuracy (%)\n\n";
  out << "| English ST | English PT | English Avg | Chinese ST | Chinese PT | Chinese Avg | Overall ST | "
         "Overall PT | Overall Avg |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n|";
  for (Language l : {Language::kEnglish, Language::kChinese}) {
    out << " " << m.Cell(l, TaskType::kStateRelated).Render() << " |";
    out << " " << m.Cell(l, TaskType::kProcessRelated).Render() << " |";
    out << " " << m.language_avg[static_cast<int>(l)].Render() << " |";
  }
  out << " " << m.overall_by_type[0].Render() << " | " << m.overall_by_type[1].Render() << " | "
      << m.overall.Render() << " |\n\n";

  out << "| Partition | Successes | n |\n|---|---|---|\n";
  for (Language l : {Language::kEnglish, Language::kChinese})
    for (TaskType k : {TaskType::kStateRelated, TaskType::kProcessRelated})
      out << "| " << ToString(l) << " " << ToString(k) << " | " << m.Cell(l, k).num << " | " << m.Cell(l, k).den
          << " |\n";
  out << "\n";

  out << "## Failure analysis\n\n";
  out << "| Uncompleted ratio (%) | Early stop ratio (%) |\n|---|---|\n";
  out << "| " << m.failure.uncompleted.Render() << " | " << m.failure.early_stop.Render() << " |\n\n";

  out << "## Accuracy by category (%)\n\n| Category | Accuracy | n |\n|---|---|---|\n";
  for (const auto& [name, r] : m.categories) out << "| " << name << " | " << r.Render() << " | " << r.den << " |\n";
  out << "\n";

  if (!m.eval_errors.empty()) {
    out << "## Evaluation errors\n\nExcluded from accuracy:\n\n";
    for (const std::string& id : m.eval_errors) out << "- " << id << "\n";
    out << "\n";
  }

  if (!in.agreement.empty()) {
    out << "## Judger agreement with human verdicts\n\n| Provider | Agreement (%) | n |\n|---|---|---|\n";
    for (const auto& [provider, a] : in.agreement)
      out << "| " << provider << " | " << a.overall.Render() << " | " << a.overall.den << " |\n";
    out << "\n";
  }
  return out.str();
}

std::string RenderCategoriesCsv(const MetricsTable& metrics) {
  std::ostringstream out;
  out << "category,successes,n,accuracy\n";
  for (const auto& [name, r] : metrics.categories) {
    out << name << "," << r.num << "," << r.den << ",";
    // Empty cell rather than a dash keeps the column numeric for plotting.
    if (r.Tenths()) out << r.Render();
    out << "\n";
  }
  return out.str();
}

void WriteReport(const ReportInput& input, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + (out_dir / name).string());
    out << body;
    if (!out) throw IoError("short write to " + (out_dir / name).string());
  };
  write("metrics.json", MetricsToJson(input).dump(2) + "\n");
  write("report.md", RenderMarkdown(input));
  write("categories.csv", RenderCategoriesCsv(input.metrics));
}

}  // namespace probench
