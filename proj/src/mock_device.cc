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

#include "probench/mock_device.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "probench/error.h"

namespace probench {

namespace {

using nlohmann::json;

[[noreturn]] void FixtureError(const std::string& what) {
  throw DeviceError(DeviceError::Kind::kFixture, what);
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) FixtureError("cannot read fixture file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Rect RegionFromJson(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) FixtureError(where + ": region must be [left, top, right, bottom]");
  return Rect{v[0].get<int>(), v[1].get<int>(), v[2].get<int>(), v[3].get<int>()};
}

}  // namespace

MockApp MockApp::FromJson(const json& manifest, const std::filesystem::path& dir) {
  MockApp app;
  try {
    app.app_id = manifest.at("app").get<std::string>();
    app.width = manifest.at("width").get<int>();
    app.height = manifest.at("height").get<int>();
    app.initial = manifest.at("initial").get<std::string>();
    if (app.width <= 0 || app.height <= 0) FixtureError(app.app_id + ": width/height must be positive");

    for (const auto& [id, raw] : manifest.at("screens").items()) {
      const std::string where = app.app_id + "/" + id;
      MockScreen screen;
      screen.id = id;
      if (raw.contains("image")) {
        try {
          screen.image = ReadPng(dir / raw.at("image").get<std::string>());
        } catch (const DeviceError&) {
          throw;
        } catch (const Error& e) {
          FixtureError(where + ": " + e.what());
        }
      } else {
        const json fill = raw.value("fill", json::array({255, 255, 255}));
        screen.image = Image(app.width, app.height,
                             Rgb{fill.at(0).get<std::uint8_t>(), fill.at(1).get<std::uint8_t>(),
                                 fill.at(2).get<std::uint8_t>()});
      }
      if (screen.image.width() != app.width || screen.image.height() != app.height)
        FixtureError(where + ": image is " + std::to_string(screen.image.width()) + "x" +
                     std::to_string(screen.image.height()) + ", manifest says " + std::to_string(app.width) +
                     "x" + std::to_string(app.height));
      if (raw.contains("a11y")) screen.a11y_xml = ReadText(dir / raw.at("a11y").get<std::string>());

      for (const auto& t : raw.value("transitions", json::array())) {
        MockTransition transition;
        transition.on = t.at("on").get<std::string>();
        transition.target = t.at("target").get<std::string>();
        if (t.contains("region")) transition.region = RegionFromJson(t.at("region"), where);
        if (t.contains("text")) transition.text = t.at("text").get<std::string>();
        const std::string& on = transition.on;
        if (on != "click" && on != "swipe" && on != "type" && on != "back" && on != "enter")
          FixtureError(where + ": unknown transition trigger '" + on + "'");
        if ((on == "click" || on == "swipe") && !transition.region)
          FixtureError(where + ": " + on + " transitions need a region");
        if (on == "type" && !transition.text) FixtureError(where + ": type transitions need a text");
        screen.transitions.push_back(std::move(transition));
      }
      app.screens.emplace(id, std::move(screen));
    }
  } catch (const json::exception& e) {
    FixtureError("malformed mock manifest in " + dir.string() + ": " + e.what());
  }

  if (!app.screens.count(app.initial)) FixtureError(app.app_id + ": initial screen '" + app.initial + "' missing");
  for (const auto& [id, screen] : app.screens)
    for (const auto& t : screen.transitions)
      if (!app.screens.count(t.target))
        FixtureError(app.app_id + "/" + id + ": transition target '" + t.target + "' does not exist");
  return app;
}

MockApp MockApp::Load(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(ReadText(dir / "app.json"));
  } catch (const json::parse_error& e) {
    FixtureError("malformed " + (dir / "app.json").string() + ": " + e.what());
  }
  return FromJson(manifest, dir);
}

MockDevice::MockDevice(std::vector<MockApp> apps, bool unicode_keyboard) : unicode_keyboard_(unicode_keyboard) {
  for (auto& app : apps) {
    std::string id = app.app_id;
    if (!apps_.emplace(id, std::move(app)).second) FixtureError("duplicate mock app '" + id + "'");
  }
  if (apps_.size() == 1) {
    current_app_ = apps_.begin()->first;
    current_screen_ = apps_.begin()->second.initial;
  }
}

MockDevice MockDevice::Open(const std::filesystem::path& dir) {
  std::vector<MockApp> apps;
  if (std::filesystem::exists(dir / "app.json")) {
    apps.push_back(MockApp::Load(dir));
  } else if (std::filesystem::is_directory(dir)) {
    std::vector<std::filesystem::path> subdirs;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_directory() && std::filesystem::exists(entry.path() / "app.json")) subdirs.push_back(entry.path());
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& sub : subdirs) apps.push_back(MockApp::Load(sub));
  }
  if (apps.empty()) FixtureError("no mock app fixtures under " + dir.string());
  return MockDevice(std::move(apps));
}

const MockApp& MockDevice::App() const {
  auto it = apps_.find(current_app_);
  if (it == apps_.end()) throw DeviceError(DeviceError::Kind::kUnreachable, "mock device has no app loaded");
  return it->second;
}

ScreenState MockDevice::Capture() {
  const MockApp& app = App();
  const MockScreen& screen = app.screens.at(current_screen_);
  ScreenState state;
  state.screenshot = screen.image;
  state.width = app.width;
  state.height = app.height;
  state.captured_at = std::chrono::system_clock::now();
  if (screen.a11y_xml) {
    state.a11y_xml = *screen.a11y_xml;
    try {
      state.a11y = ParseA11yXml(*screen.a11y_xml, app.width, app.height);
    } catch (const A11yParseError& e) {
      state.a11y_warning = e.what();
      spdlog::warn("{} screen '{}': {}", Describe(), current_screen_, e.what());
    }
  }
  return state;
}

void MockDevice::Perform(const Action& action) {
  using namespace action;
  if (std::holds_alternative<Complete>(action)) throw ContractError("Complete is not a device action");
  if (std::holds_alternative<Wait>(action)) return;
  if (const auto* t = std::get_if<Type>(&action); t && !IsAscii(t->text) && !unicode_keyboard_)
    throw DeviceError(DeviceError::Kind::kUnicodeUnsupported, "mock device has no unicode keyboard");

  const MockScreen& screen = App().screens.at(current_screen_);
  for (const MockTransition& tr : screen.transitions) {
    bool hit = false;
    if (const auto* c = std::get_if<Click>(&action)) {
      hit = tr.on == "click" && tr.region->Contains({c->x, c->y});
    } else if (const auto* s = std::get_if<Swipe>(&action)) {
      hit = tr.on == "swipe" && tr.region->Contains({s->x1, s->y1});
    } else if (const auto* t = std::get_if<Type>(&action)) {
      hit = tr.on == "type" && *tr.text == t->text;
    } else if (std::holds_alternative<Back>(action)) {
      hit = tr.on == "back";
    } else if (std::holds_alternative<Enter>(action)) {
      hit = tr.on == "enter";
    }
    if (hit) {
      current_screen_ = tr.target;
      return;
    }
  }
}

void MockDevice::Reset(std::string_view app_id) {
  auto it = apps_.find(std::string(app_id));
  if (it == apps_.end())
    throw DeviceError(DeviceError::Kind::kUnknownApp, "unknown app '" + std::string(app_id) + "'");
  current_app_ = it->first;
  current_screen_ = it->second.initial;
}

std::string MockDevice::Describe() const { return "mock:" + current_app_; }

}  // namespace probench
