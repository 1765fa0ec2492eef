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

#include <gtest/gtest.h>

#include <fstream>

#include "probench/error.h"
#include "testing/testing.h"

namespace probench {
namespace {

using nlohmann::json;
using testing::FixturePath;
using testing::TempDir;

json SuiteWithTasks(json tasks) {
  return {{"name", "t"},
          {"version", "1"},
          {"registry",
           {{{"app", "settings"}, {"package", "com.android.settings"}, {"category", "system"}, {"language", "en"}},
            {{"app", "yelp"}, {"package", "com.yelp.android"}, {"category", "lifestyle"}, {"language", "en"}}}},
          {"tasks", std::move(tasks)}};
}

json MakeTaskJson(const std::string& id, const std::string& lang, const std::string& type) {
  return {{"id", id}, {"app", "settings"}, {"instruction", "Open Wi-Fi"}, {"language", lang}, {"type", type}};
}

TEST(TaskSuite, LoadsFixtureSuite) {
  const TaskSuite suite = testing::ShopSuite();
  EXPECT_EQ(suite.name(), "shop-fixture");
  ASSERT_EQ(suite.tasks().size(), 3u);
  EXPECT_EQ(suite.tasks()[1].task_type, TaskType::kProcessRelated);
  EXPECT_EQ(suite.tasks()[0].max_steps, kDefaultMaxSteps);
  EXPECT_EQ(suite.Counts().Count(Language::kEnglish, TaskType::kStateRelated), 2);
}

TEST(TaskSuite, CountsMatchAppendixEnglishPartitions) {
  json tasks = json::array();
  for (int i = 0; i < 52; ++i) tasks.push_back(MakeTaskJson("st-" + std::to_string(i), "english", "state"));
  for (int i = 0; i < 23; ++i) tasks.push_back(MakeTaskJson("pt-" + std::to_string(i), "english", "process"));
  const TaskSuite suite = TaskSuite::FromJson(SuiteWithTasks(tasks));
  const PartitionCounts c = suite.Counts();
  EXPECT_EQ(c.Count(Language::kEnglish, TaskType::kStateRelated), 52);
  EXPECT_EQ(c.Count(Language::kEnglish, TaskType::kProcessRelated), 23);
  EXPECT_EQ(c.Count(Language::kChinese, TaskType::kStateRelated), 0);
  EXPECT_EQ(c.Total(), 75);
}

TEST(TaskSuite, PartitionsSumToTotal) {
  json tasks = json::array();
  const char* langs[] = {"english", "chinese", "zh", "en"};
  const char* types[] = {"state", "process", "state_related", "process_related"};
  for (int i = 0; i < 37; ++i) tasks.push_back(MakeTaskJson("t" + std::to_string(i), langs[i % 4], types[(i / 3) % 4]));
  const TaskSuite suite = TaskSuite::FromJson(SuiteWithTasks(tasks));
  const PartitionCounts c = suite.Counts();
  int sum = 0;
  for (auto l : {Language::kEnglish, Language::kChinese})
    for (auto t : {TaskType::kStateRelated, TaskType::kProcessRelated}) sum += c.Count(l, t);
  EXPECT_EQ(sum, 37);
  EXPECT_EQ(c.Total(), 37);
}

TEST(TaskSuite, EmptyTaskListIsRejected) {
  try {
    TaskSuite::FromJson(SuiteWithTasks(json::array()));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("suite contains no tasks"), std::string::npos);
  }
}

TEST(TaskSuite, DuplicateIdNamesTheTask) {
  json tasks = {MakeTaskJson("airbnb-01", "en", "state"), MakeTaskJson("airbnb-01", "en", "process")};
  try {
    TaskSuite::FromJson(SuiteWithTasks(tasks));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("airbnb-01"), std::string::npos);
    EXPECT_EQ(e.field(), "id");
  }
}

TEST(TaskSuite, UnresolvableAppIsRejected) {
  json task = MakeTaskJson("x-1", "en", "state");
  task["app"] = "nope";
  try {
    TaskSuite::FromJson(SuiteWithTasks({task}));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "app");
    EXPECT_NE(std::string(e.what()).find("x-1"), std::string::npos);
  }
}

TEST(TaskSuite, FieldConstraints) {
  json empty_instruction = MakeTaskJson("a", "en", "state");
  empty_instruction["instruction"] = "";
  EXPECT_THROW(TaskSuite::FromJson(SuiteWithTasks({empty_instruction})), ValidationError);

  json zero_steps = MakeTaskJson("a", "en", "state");
  zero_steps["max_steps"] = 0;
  EXPECT_THROW(TaskSuite::FromJson(SuiteWithTasks({zero_steps})), ValidationError);

  json bad_type = MakeTaskJson("a", "en", "both");
  EXPECT_THROW(TaskSuite::FromJson(SuiteWithTasks({bad_type})), ValidationError);

  json bad_lang = MakeTaskJson("a", "fr", "state");
  EXPECT_THROW(TaskSuite::FromJson(SuiteWithTasks({bad_lang})), ValidationError);

  json custom = MakeTaskJson("a", "en", "state");
  custom["max_steps"] = 7;
  EXPECT_EQ(TaskSuite::FromJson(SuiteWithTasks({custom})).tasks()[0].max_steps, 7);
}

TEST(TaskSuite, CategoryOutsideTheClosedSetIsRejected) {
  json doc = SuiteWithTasks({MakeTaskJson("a", "en", "state")});
  doc["registry"][0]["category"] = "gaming";
  EXPECT_THROW(TaskSuite::FromJson(doc), ValidationError);
  doc["categories"] = {"gaming", "lifestyle"};
  EXPECT_NO_THROW(TaskSuite::FromJson(doc));
}

TEST(TaskSuite, MissingFileIsAnError) {
  EXPECT_THROW(LoadTaskSuite("/nonexistent/suite.json"), ValidationError);
}

TEST(TaskSuite, MalformedFileIsAnError) {
  TempDir dir;
  std::ofstream(dir / "bad.json") << "{\"tasks\": [";
  EXPECT_THROW(LoadTaskSuite(dir / "bad.json"), ValidationError);
}

TEST(TaskSuite, IdenticalBytesLoadEqual) {
  EXPECT_EQ(LoadTaskSuite(FixturePath("suite.json")), LoadTaskSuite(FixturePath("suite.json")));
}

TEST(TaskSuite, JsonRoundTrip) {
  const TaskSuite suite = testing::ShopSuite();
  EXPECT_EQ(TaskSuite::FromJson(suite.ToJson()), suite);
}

TEST(CategoryOf, RegistryLookup) {
  const TaskSuite suite = testing::ShopSuite();
  EXPECT_EQ(CategoryOf("settings", suite), "system");
  EXPECT_EQ(CategoryOf("yelp", suite), "lifestyle");
  EXPECT_THROW(CategoryOf("unknown-app", suite), ValidationError);
}

TEST(Enums, ParseAliases) {
  EXPECT_EQ(ParseLanguage("zh"), Language::kChinese);
  EXPECT_EQ(ParseLanguage("english"), Language::kEnglish);
  EXPECT_EQ(ParseTaskType("process"), TaskType::kProcessRelated);
  EXPECT_FALSE(ParseTaskType("other").has_value());
}

}  // namespace
}  // namespace probench
