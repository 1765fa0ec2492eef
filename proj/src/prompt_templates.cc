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

#include <algorithm>
#include <cctype>
#include <map>

namespace probench {

namespace {

constexpr const char kPlainCall[] = R"(You will receive the current screen image.

Your overall goal is: <goal> And you need to complete it within current app.

Historical actions you have performed: <history>

These are the action space to interact with the phone:

- Click(x, y): Click a coordinate point on the screen and x, y is the position of the coordinate point.

Click(100,238) means click the UI element at (100,238) on the current screen.

- Type(text): Type text.

- Swipe(x1, y1, x2, y2): Scroll the screen from point A to point B. The coordinates of point A are x1, y1, and the coordinates of point B are x2, y2.

Swipe(300,800,300,200) swipes the screen from (300, 800) to (300, 200).

- Back(): Return to the previous step.

- Enter(): Pressing the ENTER key to submit.

- Wait(): Wait a while for the network to load.

- Complete(): It means you think the task is completed.

Now according to the above guidance and the screen state, think step-by-step about the action that should be done.

You can only answer actions in the "action space". Output only one action at a time and follow the format in the "action space".
Start with "Action:" and do not output any other thought process!)";

constexpr const char kPlainCallThink[] = R"(You will receive the current screen image.

Your overall goal is: <goal> And you need to complete it within current app.

Historical actions you have performed: <history>

These are the action space to interact with the phone:

- Click(x, y): Click a coordinate point on the screen and x, y is the position of the coordinate point.

Click(100,238) means click the UI element at (100,238) on the current screen.

- Type(text): Type text.

- Swipe(x1, y1, x2, y2): Scroll the screen from point A to point B. The coordinates of point A are x1, y1, and the coordinates of point B are x2, y2.

Swipe(300,800,300,200) swipes the screen from (300, 800) to (300, 200).

- Back(): Return to the previous step.

- Enter(): Pressing the ENTER key to submit.

- Wait(): Wait a while for the network to load.

- Complete(): It means you think the task is completed.

Now according to the above guidance and the screen state, think step-by-step about the action that should be done.

Output the thinking process in <think> </think> tags, and the final answer in <answer> </answer> tags as follows:
<think> ... </think> <answer>Swipe(x1, y1, x2, y2)</answer>

You must follow the format in "action space", for example:
    Click(1000, 2000)
    Swipe(1000, 500, 1000, 1480)
    Type(text)
    Back()
    Enter()
    Wait()
    Complete()
Output only one action at a time.)";

constexpr const char kTaggedDict[] = R"(In this UI screenshot, I want you to continue executing the command <goal>, with the action history being <history>.

Please provide the action to perform (enumerate from ['wait', 'complete', 'click', 'back', 'type', 'enter', 'scroll']), the point where the cursor is moved to (integer) if a click is performed, and any input text required to complete the action.

Output the thinking process in <think> </think> tags, and the final answer in <answer> </answer> tags as follows:

<think> ... </think> <answer>[{'action': enum['wait', 'complete', 'click', 'back', 'type', 'enter', 'scroll'], 'point': [x, y], 'input_text': 'no input text [default]'}]</answer>

Note:

specific input text (no default) is necessary for actions enum['type', 'scroll'] and only output one action at a time

Example:

    [{'action': enum['wait', 'back', 'complete', 'enter'], 'point': [-100, -100], 'input_text': 'no input text'}]

    [{'action': enum['click'], 'point': [123, 300], 'input_text': 'no input text'}]

    [{'action': enum['type'], 'point': [-100, -100], 'input_text': 'shanghai shopping mall'}]

    [{'action': enum['scroll'], 'point': [-100, -100], 'input_text': enum['up', 'left', 'right', 'down']}])";

constexpr const char kUiR1[] = R"(In this UI screenshot, I want to perform the command <goal>.

Please provide the action to perform (enumerate in ['wait', 'complete', 'click', 'back', 'type', 'enter', 'scroll']), the point where the cursor is moved to(integer) if click is performed, and any input text required to complete the action.

Output the thinking process in <think> </think> and final answer in <answer> </answer> tags.

The output answer format should be as follows:

    <think>...</think> <answer>[{'action': enum['wait', 'complete', 'click', 'back', 'type', 'enter', 'scroll'], 'point': [x, y], 'input_text': 'no input text [default]'}]</answer>

Please strictly follow the format.)";

constexpr const char kUiTars[] = R"(You are a GUI agent. You are given a task and your action history, with screenshots. You need to perform the next action to complete the task. Only output one action at a time.

## Output Format

Thought: ...

Action: ...

## Action Space

click(point='<point>x1 y1</point>')

type(content='')

drag(start_point='<point>x1 y1</point>', end_point='<point>x2 y2</point>')

press_back()

press_enter()

finished()

## Note

- Write a small plan and finally summarize your next action (with its target element) in one sentence in `Thought` part.

## User Instruction

<goal>

## Action History

<history>
)";

constexpr const char kSummarizer[] = R"(You will receive a picture that is a horizontal stitching of two pictures.

The left side of the red dividing line represents the screen before the click operation, and the right side represents the screen after it.

Besides, I will give you the original coordinate of the click.

You need to analyze what this operation has actually done on the screen, based on given information and the changes in the screens (for example, open a certain app, click a certain button).

Here is the original description of the operation: <action>

The original coordinate of the click is: <coordinate>

You are required to summarize this operation with a verb phrase that begins with the given operation type.

If the operation does not cause any changes to the two images, output Invalid click.

Show your thinking process wrapped in <think> </think>. And output the summary wrapped in <summary> </summary>.)";

constexpr const char kStateJudge[] = R"(You are an expert in smartphone task evaluation.

I will give you a query task. Your responsibility is to determine whether the current image could answer the query task.

You need to carefully compare the task goal with the information on the image. Only if information could answer the task completely, the judgment success.

The task is:
<goal>

Show your thinking process wrapped in <think> </think>.
Output True or False wrapped in <answer> </answer>)";

constexpr const char kProcessJudge[] = R"(You are an expert in smartphone task evaluation.

I will give you a query task and some execution information during the operation. Your responsibility is to determine whether the current image could answer the query task.

You need to carefully compare the task goal with the information on the image. At the same time, you need to pay special attention to whether the process information can meet the task requirements that cannot be shown in the image, such as sorting by distance, completing filtering, etc.

The task is successful only if all its requirements are met.

The task is:
<goal>

The process information is:
<process>

Show your thinking process wrapped in <think> </think>.
Output True or False wrapped in <answer> </answer>)";

const std::map<std::string, std::string, std::less<>>& AgentTemplates() {
  static const std::map<std::string, std::string, std::less<>> kTemplates = {
      {"plain_call", kPlainCall},
      {"plain_call_think", kPlainCallThink},
      {"tagged_dict", kTaggedDict},
      {"ui_r1", kUiR1},
      {"uitars", kUiTars},
  };
  return kTemplates;
}

}  // namespace

const std::string* FindAgentTemplate(std::string_view id) {
  const auto& templates = AgentTemplates();
  auto it = templates.find(id);
  return it == templates.end() ? nullptr : &it->second;
}

std::vector<std::string> AgentTemplateIds() {
  std::vector<std::string> ids;
  for (const auto& [id, text] : AgentTemplates()) ids.push_back(id);
  return ids;
}

std::string_view SummarizerTemplate() { return kSummarizer; }
std::string_view StateJudgeTemplate() { return kStateJudge; }
std::string_view ProcessJudgeTemplate() { return kProcessJudge; }

std::string FillTemplate(std::string_view tmpl, const std::vector<Substitution>& subs,
                         const std::vector<std::string_view>& required) {
  for (std::string_view placeholder : required) {
    if (tmpl.find(placeholder) == std::string_view::npos)
      throw TemplateError("template has no " + std::string(placeholder) + " placeholder");
  }
  // Single left-to-right pass: substituted text is never rescanned, and each
  // placeholder is consumed at most once.
  std::string out;
  std::vector<bool> used(subs.size(), false);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t best = std::string_view::npos;
    std::size_t which = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (used[i]) continue;
      const std::size_t at = tmpl.find(subs[i].placeholder, pos);
      if (at < best) {
        best = at;
        which = i;
      }
    }
    if (best == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, best - pos));
    out.append(subs[which].value);
    used[which] = true;
    pos = best + subs[which].placeholder.size();
    // Anything after the consumed placeholder must not repeat it.
    if (tmpl.find(subs[which].placeholder, pos) != std::string_view::npos)
      throw TemplateError("stray " + std::string(subs[which].placeholder) + " left after substitution");
  }
  return out;
}

std::optional<std::string> ExtractTagged(std::string_view text, std::string_view tag) {
  auto find = [&](std::string_view needle, std::size_t from) {
    auto it = std::search(text.begin() + static_cast<std::ptrdiff_t>(from), text.end(), needle.begin(),
                          needle.end(), [](char a, char b) {
                            return std::tolower(static_cast<unsigned char>(a)) ==
                                   std::tolower(static_cast<unsigned char>(b));
                          });
    return it == text.end() ? std::string_view::npos : static_cast<std::size_t>(it - text.begin());
  };
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  const std::size_t begin = find(open, 0);
  if (begin == std::string_view::npos) return std::nullopt;
  const std::size_t end = find(close, begin + open.size());
  if (end == std::string_view::npos) return std::nullopt;
  return std::string(text.substr(begin + open.size(), end - begin - open.size()));
}

}  // namespace probench
