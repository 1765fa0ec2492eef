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

#ifndef PROBENCH_TASK_MODEL_H_
#define PROBENCH_TASK_MODEL_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace probench {

inline constexpr int kDefaultMaxSteps = 15;

enum class Language { kEnglish, kChinese };
enum class TaskType { kStateRelated, kProcessRelated };

std::string_view ToString(Language language);
std::string_view ToString(TaskType type);
// Accepts the long names plus the short aliases "en"/"zh" and "state"/"process".
std::optional<Language> ParseLanguage(std::string_view text);
std::optional<TaskType> ParseTaskType(std::string_view text);

struct Task {
  std::string id;
  std::string app_id;
  std::string instruction;
  Language language = Language::kEnglish;
  TaskType task_type = TaskType::kStateRelated;
  int max_steps = kDefaultMaxSteps;

  bool operator==(const Task&) const = default;
};

struct AppRegistryEntry {
  std::string app_id;
  std::string package_name;
  std::string category;
  Language language = Language::kEnglish;

  bool operator==(const AppRegistryEntry&) const = default;
};

// Task counts per (language x task type).
struct PartitionCounts {
  std::array<std::array<int, 2>, 2> cells{};

  int Count(Language language, TaskType type) const {
    return cells[static_cast<int>(language)][static_cast<int>(type)];
  }
  int Total() const;
  bool operator==(const PartitionCounts&) const = default;
};

// Used when a suite file does not declare its own "categories" list. The
// set is editable per suite; it is a best-effort reading of the benchmark's
// application mix, not an authoritative taxonomy.
const std::vector<std::string>& DefaultCategories();

class TaskSuite {
 public:
  // Validates referential integrity, id uniqueness and field constraints.
  // Throws ValidationError naming the offending task id and field.
  static TaskSuite FromJson(const nlohmann::json& doc);

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }
  const std::vector<Task>& tasks() const { return tasks_; }
  const std::vector<AppRegistryEntry>& registry() const { return registry_; }
  const std::vector<std::string>& categories() const { return categories_; }

  const Task* FindTask(std::string_view id) const;
  const AppRegistryEntry* FindApp(std::string_view app_id) const;
  PartitionCounts Counts() const;

  nlohmann::json ToJson() const;

  bool operator==(const TaskSuite&) const = default;

 private:
  std::string name_;
  std::string version_;
  std::vector<Task> tasks_;
  std::vector<AppRegistryEntry> registry_;
  std::vector<std::string> categories_;
};

TaskSuite LoadTaskSuite(const std::filesystem::path& path);

// Throws ValidationError for an app id missing from the registry.
const std::string& CategoryOf(std::string_view app_id, const TaskSuite& suite);

}  // namespace probench

#endif  // PROBENCH_TASK_MODEL_H_
