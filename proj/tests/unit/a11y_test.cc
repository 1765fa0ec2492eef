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

#include "probench/a11y.h"

#include <gtest/gtest.h>

#include "testing/testing.h"

namespace probench {
namespace {

TEST(ParseBounds, Basic) {
  EXPECT_EQ(ParseBounds("[0,0][1080,200]"), (Rect{0, 0, 1080, 200}));
  EXPECT_EQ(ParseBounds("[12,34][56,78]"), (Rect{12, 34, 56, 78}));
  EXPECT_FALSE(ParseBounds("[0,0][1080]").has_value());
  EXPECT_FALSE(ParseBounds("0,0,1,1").has_value());
  EXPECT_FALSE(ParseBounds("").has_value());
}

TEST(Rect, HalfOpenContainment) {
  const Rect r{10, 10, 20, 20};
  EXPECT_TRUE(r.Contains({10, 10}));
  EXPECT_TRUE(r.Contains({19, 19}));
  EXPECT_FALSE(r.Contains({20, 15}));
  EXPECT_FALSE(r.Contains({15, 20}));
  EXPECT_EQ(r.Area(), 100);
  EXPECT_EQ((Rect{5, 5, 5, 10}).Area(), 0);
}

TEST(ParseA11yXml, ReadsAttributesAndChildren) {
  const A11yDocument doc = ParseA11yXml(testing::ReadFile(testing::FixturePath("a11y/filter_icon.xml")), 1080, 2400);
  ASSERT_EQ(doc.roots.size(), 1u);
  const A11yNode& icon = doc.roots[0].children.at(0);
  EXPECT_EQ(icon.resource_id, "com.app:id/filter_icon");
  EXPECT_TRUE(icon.clickable);
  EXPECT_EQ(icon.bounds, (Rect{800, 100, 1060, 200}));
  ASSERT_EQ(icon.children.size(), 1u);
  EXPECT_EQ(icon.children[0].text, "Price");
  EXPECT_FALSE(icon.children[0].clickable);
  EXPECT_EQ(icon.children[0].class_name, "android.widget.TextView");
}

TEST(ParseA11yXml, ClampsBoundsToScreen) {
  const A11yDocument doc = ParseA11yXml(
      R"(<hierarchy><node text="x" bounds="[-20,-5][2000,3000]" clickable="true"/></hierarchy>)", 1080, 2400);
  EXPECT_EQ(doc.roots.at(0).bounds, (Rect{0, 0, 1080, 2400}));
}

TEST(ParseA11yXml, KeepsNonNestedChildBounds) {
  const A11yDocument doc = ParseA11yXml(testing::ReadFile(testing::FixturePath("a11y/non_nested.xml")), 1080, 2400);
  EXPECT_EQ(doc.roots.at(0).children.at(0).bounds, (Rect{600, 600, 700, 700}));
}

TEST(ParseA11yXml, MalformedInputThrows) {
  EXPECT_THROW(ParseA11yXml("<hierarchy><node text='a'>", 10, 10), A11yParseError);
  EXPECT_THROW(ParseA11yXml("<other/>", 10, 10), A11yParseError);
  EXPECT_THROW(ParseA11yXml(R"(<hierarchy><node bounds="[1,2]"/></hierarchy>)", 10, 10), A11yParseError);
}

TEST(ParseA11yXml, UnicodeText) {
  const A11yDocument doc =
      ParseA11yXml(R"(<hierarchy><node text="预订酒店" bounds="[0,0][10,10]"/></hierarchy>)", 10, 10);
  EXPECT_EQ(doc.roots.at(0).text, "预订酒店");
}

}  // namespace
}  // namespace probench
