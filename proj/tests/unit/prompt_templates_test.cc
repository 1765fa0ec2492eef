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

#include "probench/prompt_templates.h"

#include <gtest/gtest.h>

#include "probench/error.h"

namespace probench {
namespace {

TEST(AgentTemplates, AllIdsResolveAndCarryGoal) {
  const auto ids = AgentTemplateIds();
  EXPECT_GE(ids.size(), 5u);
  for (const std::string& id : ids) {
    const std::string* tmpl = FindAgentTemplate(id);
    ASSERT_NE(tmpl, nullptr) << id;
    EXPECT_NE(tmpl->find("<goal>"), std::string::npos) << id;
    // The UI-R1 prompt is single-turn and carries no history.
    EXPECT_EQ(tmpl->find("<history>") != std::string::npos, id != "ui_r1") << id;
  }
  EXPECT_EQ(FindAgentTemplate("gpt-5"), nullptr);
}

TEST(AgentTemplates, PlainCallWording) {
  const std::string& t = *FindAgentTemplate("plain_call");
  EXPECT_NE(t.find("Your overall goal is: <goal>"), std::string::npos);
  EXPECT_NE(t.find("Click(100,238) means click the UI element at (100,238)"), std::string::npos);
  EXPECT_NE(t.find("Start with \"Action:\""), std::string::npos);
}

TEST(JudgeTemplates, Wording) {
  EXPECT_NE(StateJudgeTemplate().find("determine whether the current image could answer the query task"),
            std::string::npos);
  EXPECT_NE(ProcessJudgeTemplate().find("pay special attention to whether the process information"),
            std::string::npos);
  EXPECT_NE(ProcessJudgeTemplate().find("<process>"), std::string::npos);
  EXPECT_NE(SummarizerTemplate().find("If the operation does not cause any changes to the two images, output "
                                      "Invalid click"),
            std::string::npos);
}

TEST(FillTemplate, ReplacesOnceWithoutRescanning) {
  EXPECT_EQ(FillTemplate("goal: <goal>; h: <history>", {{"<goal>", "say <history>"}, {"<history>", "None"}},
                         {"<goal>"}),
            "goal: say <history>; h: None");
}

TEST(FillTemplate, MissingRequiredPlaceholder) {
  EXPECT_THROW(FillTemplate("no goal here", {{"<goal>", "x"}}, {"<goal>"}), TemplateError);
}

TEST(FillTemplate, StrayPlaceholderAfterSubstitution) {
  EXPECT_THROW(FillTemplate("<goal> and again <goal>", {{"<goal>", "x"}}, {"<goal>"}), TemplateError);
}

TEST(ExtractTagged, FirstPairCaseInsensitive) {
  EXPECT_EQ(ExtractTagged("<think>a</think><ANSWER> True </answer>", "answer"), " True ");
  EXPECT_EQ(ExtractTagged("<summary>one</summary><summary>two</summary>", "summary"), "one");
  EXPECT_FALSE(ExtractTagged("<answer>True", "answer").has_value());
  EXPECT_FALSE(ExtractTagged("True", "answer").has_value());
}

}  // namespace
}  // namespace probench
