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

#ifndef PROBENCH_METRICS_H_
#define PROBENCH_METRICS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "probench/evaluator.h"
#include "probench/task_model.h"

namespace probench {

// Rendered in place of a percentage with a zero denominator.
inline constexpr std::string_view kNoValue = "—";

// Exact count ratio. Percentages are rounded half-up to one decimal only
// when rendered.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 0;

  // round_half_up(1000 * num / den) as an integer count of tenths.
  std::optional<std::int64_t> Tenths() const;
  std::string Render() const;  // "44.2" or kNoValue
  nlohmann::json ToJson() const;
  bool operator==(const Ratio&) const = default;
};

struct OutcomeRow {
  std::string task_id;
  Language language = Language::kEnglish;
  TaskType task_type = TaskType::kStateRelated;
  std::string category;
  Outcome outcome;
};

struct FailureStats {
  Ratio uncompleted;  // Uncompleted among non-Success
  Ratio early_stop;   // early-stopped among Uncompleted
};

struct MetricsTable {
  std::array<std::array<Ratio, 2>, 2> cells{};  // [language][task_type]
  std::array<Ratio, 2> language_avg{};         // pooled ST+PT per language
  std::array<Ratio, 2> overall_by_type{};      // pooled across languages
  Ratio overall;
  std::vector<std::pair<std::string, Ratio>> categories;  // suite order
  FailureStats failure;
  std::vector<std::string> eval_errors;  // task ids left out of accuracy
  int tasks = 0;

  const Ratio& Cell(Language l, TaskType t) const {
    return cells[static_cast<int>(l)][static_cast<int>(t)];
  }
};

// Pools successes per cell. Rows carrying eval_error are listed separately
// and excluded from every denominator.
MetricsTable AggregateRows(const std::vector<OutcomeRow>& rows, const std::vector<std::string>& categories = {});

// Resolves task ids against the suite; an unknown id is a ValidationError.
MetricsTable Aggregate(const TaskSuite& suite, const std::vector<std::pair<std::string, Outcome>>& outcomes);

FailureStats FailureBreakdown(const std::vector<Outcome>& outcomes);

struct HumanVerdict {
  std::string run_id;
  std::string task_id;
  OutcomeClass label = OutcomeClass::kUncompleted;
  std::string annotator;
  std::string timestamp;

  nlohmann::json ToJson() const;
  static HumanVerdict FromJson(const nlohmann::json& doc);
};

// Last verdict per (task, annotator) in log order.
std::vector<HumanVerdict> ActiveVerdicts(const std::vector<HumanVerdict>& log);

struct AgreementResult {
  Ratio overall;
  std::map<std::string, Ratio> per_annotator;
  std::vector<std::string> skipped;  // labeled tasks whose automatic outcome is an eval_error

  nlohmann::json ToJson() const;
};

// Class agreement between automatic outcomes and active human verdicts.
// Both sides are read under `convention`, so an early-stopped task labeled
// Uncompleted by a human is compared as Failure under the failure
// convention. A verdict for a task without an outcome is a ValidationError.
AgreementResult Agreement(const std::map<std::string, Outcome>& automatic, const std::vector<HumanVerdict>& log,
                          EarlyStopConvention convention = EarlyStopConvention::kUncompleted);

// --- Rendering ---------------------------------------------------------------

struct ReportInput {
  MetricsTable metrics;
  nlohmann::json run;  // run.json contents
  EarlyStopConvention convention = EarlyStopConvention::kUncompleted;
  std::string provider;
  std::map<std::string, AgreementResult> agreement;  // by provider
};

nlohmann::json MetricsToJson(const ReportInput& input);
std::string RenderMarkdown(const ReportInput& input);
std::string RenderCategoriesCsv(const MetricsTable& metrics);

// metrics.json, report.md and categories.csv under `out_dir`.
void WriteReport(const ReportInput& input, const std::filesystem::path& out_dir);

}  // namespace probench

#endif  // PROBENCH_METRICS_H_
