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

// Helpers shared by the unit and acceptance suites.

#ifndef PROBENCH_TESTS_TESTING_H_
#define PROBENCH_TESTS_TESTING_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "probench/agent_gateway.h"
#include "probench/mock_device.h"
#include "probench/task_model.h"

namespace probench::testing {

std::filesystem::path FixturePath(const std::string& relative);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Agent backed by a scripted client that answers `responses` in order.
AgentGateway ScriptedAgent(const std::vector<std::string>& responses, Dialect dialect = Dialect::kPlainCall,
                           CoordinateMode mode = CoordinateMode::kPixel, bool repeat_last = true);

Task MakeTask(std::string id, std::string app_id, TaskType type = TaskType::kStateRelated, int max_steps = 15,
              Language language = Language::kEnglish);

// The shop fixture app under tests/fixtures/mock/shop.
MockDevice ShopDevice();
TaskSuite ShopSuite();

// A tiny single-screen app of the given size whose clicks go nowhere.
MockApp BlankApp(const std::string& app_id, int width, int height);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace probench::testing

#endif  // PROBENCH_TESTS_TESTING_H_
