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

#include "testing/testing.h"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace probench::testing {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path FixturePath(const std::string& relative) { return fs::path(PROBENCH_FIXTURE_DIR) / relative; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("probench-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
           std::to_string(rd() % 100000));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

AgentGateway ScriptedAgent(const std::vector<std::string>& responses, Dialect dialect, CoordinateMode mode,
                           bool repeat_last) {
  json doc = {{"name", "scripted"},
              {"kind", "script"},
              {"template", dialect == Dialect::kTaggedDict ? "tagged_dict"
                           : dialect == Dialect::kUiTars   ? "uitars"
                                                           : "plain_call"},
              {"dialect", ToString(dialect)},
              {"coordinate_mode", ToString(mode)},
              {"repeat_last", repeat_last},
              {"responses", responses}};
  return AgentGateway(AgentConfig::FromJson(doc));
}

Task MakeTask(std::string id, std::string app_id, TaskType type, int max_steps, Language language) {
  Task t;
  t.id = std::move(id);
  t.app_id = std::move(app_id);
  t.instruction = "Do the thing in " + t.app_id;
  t.task_type = type;
  t.max_steps = max_steps;
  t.language = language;
  return t;
}

MockDevice ShopDevice() { return MockDevice::Open(FixturePath("mock/shop")); }

TaskSuite ShopSuite() { return LoadTaskSuite(FixturePath("suite.json")); }

MockApp BlankApp(const std::string& app_id, int width, int height) {
  json manifest = {{"app", app_id},
                   {"width", width},
                   {"height", height},
                   {"initial", "main"},
                   {"screens", {{"main", {{"fill", {200, 200, 200}}}}}}};
  return MockApp::FromJson(manifest, fs::current_path());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace probench::testing
