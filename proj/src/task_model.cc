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

#include "probench/task_model.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "probench/error.h"

namespace probench {

namespace {

using nlohmann::json;

std::string RequireString(const json& obj, const char* key, const std::string& subject) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(subject, key, "missing required key");
  if (!it->is_string()) throw ValidationError(subject, key, "expected a string");
  return it->get<std::string>();
}

Language RequireLanguage(const json& obj, const std::string& subject) {
  std::string raw = RequireString(obj, "language", subject);
  auto language = ParseLanguage(raw);
  if (!language) throw ValidationError(subject, "language", "unknown language '" + raw + "'");
  return *language;
}

}  // namespace

std::string_view ToString(Language language) {
  return language == Language::kEnglish ? "english" : "chinese";
}

std::string_view ToString(TaskType type) {
  return type == TaskType::kStateRelated ? "state" : "process";
}

std::optional<Language> ParseLanguage(std::string_view text) {
  if (text == "english" || text == "en") return Language::kEnglish;
  if (text == "chinese" || text == "zh") return Language::kChinese;
  return std::nullopt;
}

std::optional<TaskType> ParseTaskType(std::string_view text) {
  if (text == "state" || text == "state_related") return TaskType::kStateRelated;
  if (text == "process" || text == "process_related") return TaskType::kProcessRelated;
  return std::nullopt;
}

int PartitionCounts::Total() const {
  int total = 0;
  for (const auto& row : cells)
    for (int n : row) total += n;
  return total;
}

const std::vector<std::string>& DefaultCategories() {
  static const std::vector<std::string> kCategories = {
      "media", "news", "social", "shopping", "lifestyle", "travel", "finance",
      "education", "production_tools", "system",
  };
  return kCategories;
}

TaskSuite TaskSuite::FromJson(const json& doc) {
  if (!doc.is_object()) throw ValidationError("suite", "", "top level must be an object");
  TaskSuite suite;
  suite.name_ = doc.value("name", std::string());
  suite.version_ = doc.value("version", std::string());

  int default_budget = kDefaultMaxSteps;
  if (auto it = doc.find("default_max_steps"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1)
      throw ValidationError("suite", "default_max_steps", "must be a positive integer");
    default_budget = it->get<int>();
  }

  if (auto it = doc.find("categories"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("suite", "categories", "expected an array");
    for (const auto& c : *it) {
      if (!c.is_string()) throw ValidationError("suite", "categories", "expected strings");
      suite.categories_.push_back(c.get<std::string>());
    }
  } else {
    suite.categories_ = DefaultCategories();
  }
  const std::set<std::string> category_set(suite.categories_.begin(), suite.categories_.end());

  auto registry = doc.find("registry");
  if (registry == doc.end() || !registry->is_array())
    throw ValidationError("suite", "registry", "missing or not an array");
  std::set<std::string> app_ids;
  for (std::size_t i = 0; i < registry->size(); ++i) {
    const json& raw = (*registry)[i];
    std::string subject = "registry[" + std::to_string(i) + "]";
    if (!raw.is_object()) throw ValidationError(subject, "", "expected an object");
    AppRegistryEntry entry;
    entry.app_id = RequireString(raw, "app", subject);
    subject = "app '" + entry.app_id + "'";
    entry.package_name = RequireString(raw, "package", subject);
    entry.category = RequireString(raw, "category", subject);
    entry.language = RequireLanguage(raw, subject);
    if (entry.app_id.empty()) throw ValidationError(subject, "app", "must be non-empty");
    if (!category_set.count(entry.category))
      throw ValidationError(subject, "category", "'" + entry.category + "' is not a registry category");
    if (!app_ids.insert(entry.app_id).second)
      throw ValidationError(subject, "app", "duplicate app id '" + entry.app_id + "'");
    suite.registry_.push_back(std::move(entry));
  }

  auto tasks = doc.find("tasks");
  if (tasks == doc.end() || !tasks->is_array())
    throw ValidationError("suite", "tasks", "missing or not an array");
  if (tasks->empty()) throw ValidationError("suite", "tasks", "suite contains no tasks");

  std::set<std::string> task_ids;
  for (std::size_t i = 0; i < tasks->size(); ++i) {
    const json& raw = (*tasks)[i];
    std::string subject = "tasks[" + std::to_string(i) + "]";
    if (!raw.is_object()) throw ValidationError(subject, "", "expected an object");
    Task task;
    task.id = RequireString(raw, "id", subject);
    if (task.id.empty()) throw ValidationError(subject, "id", "must be non-empty");
    subject = "task '" + task.id + "'";
    task.app_id = RequireString(raw, "app", subject);
    task.instruction = RequireString(raw, "instruction", subject);
    task.language = RequireLanguage(raw, subject);
    std::string type = RequireString(raw, "type", subject);
    auto parsed_type = ParseTaskType(type);
    if (!parsed_type) throw ValidationError(subject, "type", "unknown task type '" + type + "'");
    task.task_type = *parsed_type;
    task.max_steps = default_budget;
    if (auto it = raw.find("max_steps"); it != raw.end()) {
      if (!it->is_number_integer()) throw ValidationError(subject, "max_steps", "expected an integer");
      task.max_steps = it->get<int>();
    }

    if (task.instruction.empty()) throw ValidationError(subject, "instruction", "must be non-empty");
    if (task.max_steps < 1) throw ValidationError(subject, "max_steps", "must be >= 1");
    if (!app_ids.count(task.app_id))
      throw ValidationError(subject, "app", "unresolvable app id '" + task.app_id + "'");
    if (!task_ids.insert(task.id).second)
      throw ValidationError(subject, "id", "duplicate task id '" + task.id + "'");
    suite.tasks_.push_back(std::move(task));
  }
  return suite;
}

const Task* TaskSuite::FindTask(std::string_view id) const {
  auto it = std::find_if(tasks_.begin(), tasks_.end(), [&](const Task& t) { return t.id == id; });
  return it == tasks_.end() ? nullptr : &*it;
}

const AppRegistryEntry* TaskSuite::FindApp(std::string_view app_id) const {
  auto it = std::find_if(registry_.begin(), registry_.end(),
                         [&](const AppRegistryEntry& e) { return e.app_id == app_id; });
  return it == registry_.end() ? nullptr : &*it;
}

PartitionCounts TaskSuite::Counts() const {
  PartitionCounts counts;
  for (const Task& task : tasks_)
    ++counts.cells[static_cast<int>(task.language)][static_cast<int>(task.task_type)];
  return counts;
}

json TaskSuite::ToJson() const {
  json doc;
  doc["name"] = name_;
  doc["version"] = version_;
  doc["categories"] = categories_;
  json registry = json::array();
  for (const auto& e : registry_) {
    registry.push_back({{"app", e.app_id},
                        {"package", e.package_name},
                        {"category", e.category},
                        {"language", ToString(e.language)}});
  }
  doc["registry"] = std::move(registry);
  json tasks = json::array();
  for (const auto& t : tasks_) {
    tasks.push_back({{"id", t.id},
                     {"app", t.app_id},
                     {"instruction", t.instruction},
                     {"language", ToString(t.language)},
                     {"type", ToString(t.task_type)},
                     {"max_steps", t.max_steps}});
  }
  doc["tasks"] = std::move(tasks);
  return doc;
}

TaskSuite LoadTaskSuite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string(), "", "cannot open suite file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string(), "", std::string("malformed suite file: ") + e.what());
  }
  return TaskSuite::FromJson(doc);
}

const std::string& CategoryOf(std::string_view app_id, const TaskSuite& suite) {
  const AppRegistryEntry* entry = suite.FindApp(app_id);
  if (!entry) throw ValidationError("app '" + std::string(app_id) + "'", "", "unknown app id");
  return entry->category;
}

}  // namespace probench
