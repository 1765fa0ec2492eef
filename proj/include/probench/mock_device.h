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

#ifndef PROBENCH_MOCK_DEVICE_H_
#define PROBENCH_MOCK_DEVICE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "probench/device.h"

namespace probench {

// A fixture-driven app: a set of screens and the transitions between them.
//
// Fixture layout: a directory holding `app.json`, per-screen PNG files and
// optional per-screen a11y XML. Manifest shape:
//
//   {"app": "demo", "width": 1080, "height": 2400, "initial": "home",
//    "screens": {
//      "home": {"image": "home.png", "a11y": "home.xml",
//               "transitions": [
//                 {"on": "click", "region": [0, 200, 1080, 400], "target": "search"},
//                 {"on": "type", "text": "hotel", "target": "results"},
//                 {"on": "swipe", "region": [...], "target": "..."},
//                 {"on": "back" | "enter", "target": "..."}]}}}
//
// A screen may use {"fill": [r, g, b]} instead of "image". Clicks and swipe
// start points match half-open rectangular regions; Type matches the exact
// string. Actions with no matching transition leave the screen unchanged.
struct MockTransition {
  std::string on;  // click | swipe | type | back | enter
  std::optional<Rect> region;
  std::optional<std::string> text;
  std::string target;
};

struct MockScreen {
  std::string id;
  Image image;
  std::optional<std::string> a11y_xml;
  std::vector<MockTransition> transitions;
};

struct MockApp {
  std::string app_id;
  int width = 0;
  int height = 0;
  std::string initial;
  std::map<std::string, MockScreen> screens;

  // Validates transition targets, the initial screen and image sizes.
  static MockApp FromJson(const nlohmann::json& manifest, const std::filesystem::path& dir);
  static MockApp Load(const std::filesystem::path& dir);
};

class MockDevice : public Device {
 public:
  explicit MockDevice(std::vector<MockApp> apps, bool unicode_keyboard = true);

  // `dir` holds either a single app.json or one sub-directory per app.
  static MockDevice Open(const std::filesystem::path& dir);

  ScreenState Capture() override;
  void Perform(const Action& action) override;
  void Reset(std::string_view app_id) override;
  std::string Describe() const override;

  const std::string& current_screen() const { return current_screen_; }
  const std::string& current_app() const { return current_app_; }

 private:
  const MockApp& App() const;

  std::map<std::string, MockApp> apps_;
  bool unicode_keyboard_;
  std::string current_app_;
  std::string current_screen_;
};

}  // namespace probench

#endif  // PROBENCH_MOCK_DEVICE_H_
