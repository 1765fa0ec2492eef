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

#include "probench/evaluator.h"

#include <gtest/gtest.h>

#include "testing/testing.h"

namespace probench {
namespace {

using nlohmann::json;

TEST(ParseJudgment, Answers) {
  EXPECT_EQ(ParseJudgment("<answer>True</answer>"), true);
  EXPECT_EQ(ParseJudgment("<think>ok</think>\n<answer> false </answer>"), false);
  EXPECT_EQ(ParseJudgment("<answer>TRUE</answer><answer>False</answer>"), true);
  EXPECT_FALSE(ParseJudgment("True").has_value());
  EXPECT_FALSE(ParseJudgment("<answer>Yes.</answer>").has_value());
  EXPECT_FALSE(ParseJudgment("<answer>True").has_value());
  EXPECT_FALSE(ParseJudgment("<answer>True, mostly</answer>").has_value());
}

TEST(RenderProcessList, SkipsInvalid) {
  EXPECT_EQ(RenderProcessList({}), "None");
  const std::vector<ProcessDescription> d = {
      {0, DescriptionSource::kStructure, "Click: Search at (270, 140)", true},
      {1, DescriptionSource::kSummarizer, "Invalid click", false},
      {2, DescriptionSource::kCanonical, "Type(\"running shoes\")", true},
  };
  EXPECT_EQ(RenderProcessList(d), "1. Click: Search at (270, 140)\n2. Type(\"running shoes\")");
  EXPECT_EQ(RenderProcessList({d[1]}), "None");
}

TEST(JudgePrompts, FillPlaceholders) {
  const std::string state = BuildStateJudgePrompt("Open the cart.");
  EXPECT_NE(state.find("Open the cart."), std::string::npos);
  EXPECT_EQ(state.find("<goal>"), std::string::npos);
  const std::string process =
      BuildProcessJudgePrompt("Sort by price.", {{0, DescriptionSource::kCanonical, "Back()", true}});
  EXPECT_NE(process.find("Sort by price."), std::string::npos);
  EXPECT_NE(process.find("1. Back()"), std::string::npos);
  EXPECT_EQ(process.find("<process>"), std::string::npos);
}

TEST(Judge, VerdictAndRationale) {
  const Image screen(4, 4);
  ScriptedClient judger("judge-1", json::array({"<think> Cart is open. </think><answer>True</answer>"}), true);
  const Judgment j = JudgeState(judger, "Open the cart.", screen);
  EXPECT_TRUE(j.verdict);
  EXPECT_EQ(j.rationale, "Cart is open.");
  EXPECT_EQ(j.judger_model, "judge-1");
  EXPECT_EQ(judger.calls(), 1);
}

TEST(Judge, RetriesThenEvalError) {
  const Image screen(4, 4);
  ScriptedClient judger("judge", json::array({"<answer>Yes.</answer>"}), true);
  EXPECT_THROW(JudgeState(judger, "g", screen), EvalError);
  EXPECT_EQ(judger.calls(), kJudgerRetries + 1);
}

TEST(Judge, RecoversAfterBadReplyAndTransportError) {
  const Image screen(4, 4);
  ScriptedClient judger("judge", json::array({"no tags", json{{"error", "timeout"}}, "<answer>False</answer>"}),
                        false);
  const Judgment j = JudgeProcess(judger, "g", {}, screen);
  EXPECT_FALSE(j.verdict);
  EXPECT_EQ(judger.calls(), 3);
}

TEST(DetermineOutcome, TruthTable) {
  using T = Termination;
  const auto c = DetermineOutcome(T::kCompletedSignal, true);
  EXPECT_EQ(c.cls, OutcomeClass::kSuccess);
  EXPECT_FALSE(c.early_stop);
  EXPECT_EQ(DetermineOutcome(T::kCompletedSignal, false).cls, OutcomeClass::kFailure);
  EXPECT_EQ(DetermineOutcome(T::kStepBudget, std::nullopt).cls, OutcomeClass::kUncompleted);
  EXPECT_EQ(DetermineOutcome(T::kExecutionError, std::nullopt).cls, OutcomeClass::kUncompleted);
  const auto es = DetermineOutcome(T::kEarlyStop, std::nullopt);
  EXPECT_EQ(es.cls, OutcomeClass::kUncompleted);
  EXPECT_TRUE(es.early_stop);
  const auto es_fail = DetermineOutcome(T::kEarlyStop, std::nullopt, EarlyStopConvention::kFailure);
  EXPECT_EQ(es_fail.cls, OutcomeClass::kFailure);
  EXPECT_TRUE(es_fail.early_stop);
  EXPECT_EQ(DetermineOutcome(T::kStepBudget, std::nullopt, EarlyStopConvention::kFailure).cls,
            OutcomeClass::kUncompleted);
}

TEST(DetermineOutcome, ContractViolations) {
  EXPECT_THROW(DetermineOutcome(Termination::kCompletedSignal, std::nullopt), ContractError);
  EXPECT_THROW(DetermineOutcome(Termination::kStepBudget, true), ContractError);
  EXPECT_THROW(DetermineOutcome(Termination::kEarlyStop, false), ContractError);
}

TEST(ApplyConvention, OnlyTouchesEarlyStop) {
  const Outcome es = DetermineOutcome(Termination::kEarlyStop, std::nullopt);
  EXPECT_EQ(ApplyConvention(es, EarlyStopConvention::kFailure).cls, OutcomeClass::kFailure);
  EXPECT_EQ(ApplyConvention(ApplyConvention(es, EarlyStopConvention::kFailure), EarlyStopConvention::kUncompleted)
                .cls,
            OutcomeClass::kUncompleted);
  const Outcome budget = DetermineOutcome(Termination::kStepBudget, std::nullopt);
  EXPECT_EQ(ApplyConvention(budget, EarlyStopConvention::kFailure), budget);
  const Outcome err = EvalErrorOutcome(Termination::kCompletedSignal, "x");
  EXPECT_EQ(ApplyConvention(err, EarlyStopConvention::kFailure), err);
}

TEST(EvalErrorOutcome, OnlyForCompletedRuns) {
  const Outcome o = EvalErrorOutcome(Termination::kCompletedSignal, "no answer");
  EXPECT_FALSE(o.cls.has_value());
  EXPECT_EQ(o.eval_error, "no answer");
  EXPECT_THROW(EvalErrorOutcome(Termination::kStepBudget, "x"), ContractError);
}

TEST(Outcome, JsonAndNames) {
  const Outcome a = DetermineOutcome(Termination::kEarlyStop, std::nullopt);
  EXPECT_EQ(Outcome::FromJson(a.ToJson()), a);
  const Outcome b = EvalErrorOutcome(Termination::kCompletedSignal, "boom");
  EXPECT_EQ(Outcome::FromJson(b.ToJson()), b);
  EXPECT_TRUE(b.ToJson().at("class").is_null());
  EXPECT_EQ(ParseOutcomeClass("success"), OutcomeClass::kSuccess);
  EXPECT_EQ(ParseOutcomeClass(" Uncompleted "), OutcomeClass::kUncompleted);
  EXPECT_FALSE(ParseOutcomeClass("pass").has_value());
  EXPECT_EQ(ParseEarlyStopConvention("Failure"), EarlyStopConvention::kFailure);
  EXPECT_FALSE(ParseEarlyStopConvention("x").has_value());
}

}  // namespace
}  // namespace probench
