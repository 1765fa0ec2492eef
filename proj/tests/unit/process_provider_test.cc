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

#include "probench/process_provider.h"

#include <gtest/gtest.h>

#include "probench/a11y.h"
#include "testing/testing.h"

namespace probench {
namespace {

using nlohmann::json;

constexpr char kResults[] = R"(<hierarchy rotation="0">
  <node text="" resource-id="" content-desc="" clickable="false" bounds="[0,0][540,960]">
    <node text="" resource-id="com.example.shop:id/filter_icon" content-desc="" clickable="true" bounds="[400,100][530,160]">
      <node text="Price" resource-id="" content-desc="" clickable="false" bounds="[410,110][480,150]" />
    </node>
    <node text="Trail runner, $89" resource-id="com.example.shop:id/item" content-desc="" clickable="true" bounds="[20,200][520,320]" />
  </node>
</hierarchy>)";

TEST(ConvertClickDescription, UsesMinimalClickable) {
  const A11yDocument doc = ParseA11yXml(kResults, 540, 960);
  const auto d = ConvertClickDescription(&doc, action::Click{465, 130}, 3);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->text, "Click: filter_icon, Price at (465, 130)");
  EXPECT_EQ(d->source, DescriptionSource::kStructure);
  EXPECT_EQ(d->step_index, 3);
  EXPECT_TRUE(d->valid);

  const auto item = ConvertClickDescription(&doc, action::Click{100, 250}, 0);
  EXPECT_EQ(item->text, "Click: Trail runner, $89 at (100, 250)");
}

TEST(ConvertClickDescription, NoDumpDefersToSummarizer) {
  EXPECT_FALSE(ConvertClickDescription(nullptr, action::Click{1, 1}, 0).has_value());
}

TEST(ConvertClickDescription, OutsideEveryNode) {
  const A11yDocument doc = ParseA11yXml(kResults, 540, 960);
  // Only the unlabeled root frame contains the point, so its children speak for it.
  EXPECT_EQ(ConvertClickDescription(&doc, action::Click{539, 959}, 0)->text, "Click: Trail runner, $89 at (539, 959)");
  const A11yDocument empty = ParseA11yXml("<hierarchy/>", 540, 960);
  EXPECT_EQ(ConvertClickDescription(&empty, action::Click{5, 5}, 0)->text, "Click: unknown element at (5, 5)");
}

TEST(DescribeNode, ChildCap) {
  A11yNode node;
  node.resource_id = "pkg:id/row";
  for (int i = 0; i < 8; ++i) {
    A11yNode child;
    child.text = "c" + std::to_string(i);
    node.children.push_back(child);
  }
  EXPECT_EQ(DescribeNode(&node), "row, c0, c1, c2, c3, c4");
  EXPECT_EQ(DescribeNode(&node, 2), "row, c0, c1");
  EXPECT_EQ(DescribeNode(nullptr), "unknown element");
}

TEST(StitchScreens, Geometry) {
  const Image before(1080, 2400, Rgb{10, 20, 30});
  const Image after(1080, 2000, Rgb{40, 50, 60});
  const StitchedImage s = StitchScreens(before, after, {540, 1200});
  EXPECT_EQ(s.composite.width(), 2170);
  EXPECT_EQ(s.composite.height(), 2400);
  EXPECT_EQ(s.divider_x, 1080);
  EXPECT_EQ(s.after_x, 1090);
  for (int x = 1080; x < 1090; ++x) EXPECT_EQ(s.composite.at(x, 100), kRed);
  EXPECT_EQ(s.composite.at(1090, 100), (Rgb{40, 50, 60}));
  EXPECT_EQ(s.composite.at(1500, 1999), (Rgb{40, 50, 60}));
  EXPECT_EQ(s.composite.at(1500, 2000), kWhite);
  EXPECT_EQ(s.composite.at(2169, 2399), kWhite);
  EXPECT_EQ(s.composite.at(0, 0), (Rgb{10, 20, 30}));
}

TEST(StitchScreens, MarkerOnBeforeHalfOnly) {
  const Image before(100, 100, Rgb{0, 0, 255});
  const Image after(100, 100, Rgb{0, 255, 0});
  const StitchedImage s = StitchScreens(before, after, {95, 50});
  EXPECT_EQ(s.composite.at(95, 50), kRed);          // centre dot
  EXPECT_EQ(s.composite.at(75, 50), kRed);          // ring
  EXPECT_EQ(s.composite.at(85, 50), (Rgb{0, 0, 255}));  // between dot and ring
  // The ring would reach x = 115, which lies in the after half.
  for (int x = 110; x < 125; ++x) EXPECT_EQ(s.composite.at(x, 50), (Rgb{0, 255, 0}));
}

TEST(StitchScreens, RejectsEmpty) { EXPECT_THROW(StitchScreens(Image(), Image(5, 5), {0, 0}), Error); }

TEST(ParseSummary, Variants) {
  const auto ok = ParseSummary("<summary> Opened the price filter. </summary>", 2);
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->text, "Opened the price filter.");
  EXPECT_EQ(ok->source, DescriptionSource::kSummarizer);
  EXPECT_TRUE(ok->valid);

  const auto invalid = ParseSummary("<summary>Invalid click.</summary>", 0);
  ASSERT_TRUE(invalid.has_value());
  EXPECT_FALSE(invalid->valid);

  EXPECT_FALSE(ParseSummary("Opened the filter.", 0).has_value());
  EXPECT_FALSE(ParseSummary("<summary>   </summary>", 0).has_value());
}

TEST(SummarizeTransition, PromptAndRetries) {
  const StitchedImage s = StitchScreens(Image(10, 10), Image(10, 10), {5, 5});
  ScriptedClient client("stub", json::array({"no tags", "<summary>Sorted by price.</summary>"}), false);
  const ProcessDescription d = SummarizeTransition(client, 2, s, "Click(465, 130)", {465, 130}, 4);
  EXPECT_EQ(d.text, "Sorted by price.");
  EXPECT_EQ(d.step_index, 4);
  EXPECT_EQ(client.calls(), 2);
  EXPECT_NE(client.last_prompt().find("Click(465, 130)"), std::string::npos);
  EXPECT_NE(client.last_prompt().find("(465, 130)"), std::string::npos);
  EXPECT_EQ(client.last_prompt().find("<action>"), std::string::npos);
}

TEST(SummarizeTransition, GivesUpWithoutTags) {
  const StitchedImage s = StitchScreens(Image(10, 10), Image(10, 10), {5, 5});
  ScriptedClient client("stub", json::array({"nothing useful"}), true);
  EXPECT_THROW(SummarizeTransition(client, 1, s, "Click(1, 1)", {1, 1}, 0), SummarizerParseError);
  EXPECT_EQ(client.calls(), 2);
}

TEST(ProcessDescription, JsonRoundTrip) {
  ProcessDescription d{7, DescriptionSource::kSummarizer, "Opened cart", false};
  EXPECT_EQ(ProcessDescription::FromJson(d.ToJson()), d);
  EXPECT_EQ(ParseProviderKind("sdc"), ProviderKind::kStructure);
  EXPECT_EQ(ParseProviderKind("mllm"), ProviderKind::kSummarizer);
  EXPECT_FALSE(ParseProviderKind("other").has_value());
}

}  // namespace
}  // namespace probench
