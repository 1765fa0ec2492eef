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

#include <gtest/gtest.h>

#include <fstream>

#include "probench/error.h"
#include "testing/testing.h"

namespace probench {
namespace {

using nlohmann::json;
using namespace action;

TEST(MockDevice, InitialCaptureHasImageAndDump) {
  MockDevice device = testing::ShopDevice();
  device.Reset("shop");
  const ScreenState s = device.Capture();
  EXPECT_EQ(s.width, 540);
  EXPECT_EQ(s.height, 960);
  EXPECT_EQ(s.screenshot.at(0, 0), (Rgb{250, 250, 250}));
  ASSERT_TRUE(s.a11y.has_value());
  EXPECT_FALSE(s.a11y_xml.empty());
}

TEST(MockDevice, TransitionsFollowTheManifest) {
  MockDevice device = testing::ShopDevice();
  device.Reset("shop");
  device.Perform(Click{270, 140});
  EXPECT_EQ(device.current_screen(), "search");
  device.Perform(Type{"other text"});
  EXPECT_EQ(device.current_screen(), "search");
  device.Perform(Type{"running shoes"});
  EXPECT_EQ(device.current_screen(), "typed");
  device.Perform(Enter{});
  EXPECT_EQ(device.current_screen(), "results");
  device.Perform(Click{10, 10});
  EXPECT_EQ(device.current_screen(), "results");
  device.Perform(Click{465, 130});
  EXPECT_EQ(device.current_screen(), "sorted");
  EXPECT_EQ(device.Capture().screenshot.at(5, 5), (Rgb{235, 255, 235}));
}

TEST(MockDevice, SwipeMatchesOnStartPoint) {
  MockDevice device = testing::ShopDevice();
  device.Reset("shop");
  device.Perform(Swipe{270, 100, 270, 900});
  EXPECT_EQ(device.current_screen(), "home");
  device.Perform(Swipe{270, 800, 270, 300});
  EXPECT_EQ(device.current_screen(), "home_scrolled");
}

TEST(MockDevice, ResetReturnsToInitial) {
  MockDevice device = testing::ShopDevice();
  device.Reset("shop");
  device.Perform(Click{270, 140});
  device.Reset("shop");
  EXPECT_EQ(device.current_screen(), "home");
  try {
    device.Reset("unknown-app");
    FAIL() << "expected DeviceError";
  } catch (const DeviceError& e) {
    EXPECT_EQ(e.kind(), DeviceError::Kind::kUnknownApp);
    EXPECT_NE(std::string(e.what()).find("unknown-app"), std::string::npos);
  }
}

TEST(MockDevice, WaitChangesNothingAndCompleteIsRejected) {
  MockDevice device = testing::ShopDevice();
  device.Reset("shop");
  device.Perform(Click{270, 140});
  device.Perform(Wait{});
  EXPECT_EQ(device.current_screen(), "search");
  EXPECT_THROW(device.Perform(Complete{}), ContractError);
}

TEST(MockDevice, DeterministicReplay) {
  const std::vector<Action> script = {Click{270, 140}, Type{"running shoes"}, Back{}, Type{"running shoes"},
                                      Enter{},         Click{465, 130},       Back{}};
  auto run = [&] {
    MockDevice device = testing::ShopDevice();
    device.Reset("shop");
    std::vector<std::string> screens;
    std::vector<Image> shots;
    for (const Action& a : script) {
      device.Perform(a);
      screens.push_back(device.current_screen());
      shots.push_back(device.Capture().screenshot);
    }
    return std::make_pair(screens, shots);
  };
  EXPECT_EQ(run(), run());
}

TEST(MockDevice, UnicodeNeedsKeyboard) {
  MockDevice device({testing::BlankApp("a", 10, 10)}, /*unicode_keyboard=*/false);
  device.Reset("a");
  EXPECT_THROW(device.Perform(Type{"预订"}), DeviceError);
  EXPECT_NO_THROW(device.Perform(Type{"ok"}));
}

TEST(MockDevice, MalformedDumpDegradesWithWarning) {
  testing::TempDir dir;
  std::ofstream(dir / "broken.xml") << "<hierarchy><node text='x'";
  const json manifest = {{"app", "b"},
                         {"width", 20},
                         {"height", 20},
                         {"initial", "s"},
                         {"screens", {{"s", {{"fill", {1, 2, 3}}, {"a11y", "broken.xml"}}}}}};
  MockDevice device({MockApp::FromJson(manifest, dir.path())});
  device.Reset("b");
  const ScreenState s = device.Capture();
  EXPECT_FALSE(s.a11y.has_value());
  EXPECT_TRUE(s.a11y_warning.has_value());
  EXPECT_EQ(s.screenshot.width(), 20);
}

TEST(MockApp, ManifestValidation) {
  const json base = {{"app", "v"},
                     {"width", 10},
                     {"height", 10},
                     {"initial", "a"},
                     {"screens", {{"a", {{"transitions", {{{"on", "back"}, {"target", "a"}}}}}}}}};
  EXPECT_NO_THROW(MockApp::FromJson(base, "."));
  json bad = base;
  bad["initial"] = "zzz";
  EXPECT_THROW(MockApp::FromJson(bad, "."), DeviceError);
  bad = base;
  bad["screens"]["a"]["transitions"][0]["target"] = "nowhere";
  EXPECT_THROW(MockApp::FromJson(bad, "."), DeviceError);
  bad = base;
  bad["screens"]["a"]["transitions"][0] = {{"on", "click"}, {"target", "a"}};
  EXPECT_THROW(MockApp::FromJson(bad, "."), DeviceError);
  bad = base;
  bad["screens"]["a"]["transitions"][0] = {{"on", "home"}, {"target", "a"}};
  EXPECT_THROW(MockApp::FromJson(bad, "."), DeviceError);
}

TEST(MockApp, ImageSizeMustMatch) {
  testing::TempDir dir;
  WritePng(Image(5, 5), dir / "small.png");
  const json manifest = {{"app", "v"},
                         {"width", 10},
                         {"height", 10},
                         {"initial", "a"},
                         {"screens", {{"a", {{"image", "small.png"}}}}}};
  EXPECT_THROW(MockApp::FromJson(manifest, dir.path()), DeviceError);
}

}  // namespace
}  // namespace probench
