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

#ifndef PROBENCH_PROCESS_PROVIDER_H_
#define PROBENCH_PROCESS_PROVIDER_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "probench/a11y.h"
#include "probench/action.h"
#include "probench/image.h"
#include "probench/model_client.h"

namespace probench {

enum class DescriptionSource { kStructure, kSummarizer, kCanonical };

std::string_view ToString(DescriptionSource source);

// Text for one executed action. `valid` is false only for a summarizer
// "Invalid click"; such entries stay in the trajectory but are not shown
// to the judger.
struct ProcessDescription {
  int step_index = 0;
  DescriptionSource source = DescriptionSource::kCanonical;
  std::string text;
  bool valid = true;

  nlohmann::json ToJson() const;
  static ProcessDescription FromJson(const nlohmann::json& doc);
  bool operator==(const ProcessDescription&) const = default;
};

// Which provider supplies click descriptions.
enum class ProviderKind { kStructure, kSummarizer };
std::string_view ToString(ProviderKind kind);  // "sdc" | "mllm"
std::optional<ProviderKind> ParseProviderKind(std::string_view text);

// ---------------------------------------------------------------------------
// Structure description converter (accessibility-tree route).

inline constexpr int kMaxChildFragments = 5;

// Smallest-area clickable node whose bounds contain `pt`. Equal areas go to
// the deeper node, and among equal depth to the later one in document
// order. When no clickable node contains `pt` the same rule runs over all
// nodes. Containment is tested per node; ancestors are not required to
// contain their children. Returns nullptr when nothing contains `pt`.
const A11yNode* MinimalEnclosingClickable(const A11yDocument& doc, Point pt);

// text and content-desc joined with ", " (empty parts skipped). If both are
// empty: the resource-id tail after the last '/' followed by the text /
// content-desc fragments of up to `max_children` direct children in
// document order. Never empty: falls back to "unknown element".
std::string DescribeNode(const A11yNode* node, int max_children = kMaxChildFragments);

// "Click: <description> at (x, y)". nullopt when no dump is available, so
// the caller can route the click to the summarizer.
std::optional<ProcessDescription> ConvertClickDescription(const A11yDocument* doc, const action::Click& click,
                                                          int step_index);

// ---------------------------------------------------------------------------
// Summarizer (screenshot-pair route).

inline constexpr int kDividerWidth = 10;
inline constexpr int kMarkerRadius = 20;
inline constexpr int kMarkerStroke = 5;
inline constexpr int kMarkerDotRadius = 3;

// before | red divider | after, top-aligned on white. The click marker is a
// red ring (radius kMarkerRadius, stroke kMarkerStroke) with a filled
// centre dot, drawn on the before half only.
struct StitchedImage {
  Image composite;
  int divider_x = 0;
  int divider_width = kDividerWidth;
  int after_x = 0;
  Point marker;
};

// Throws Error for an empty input image.
StitchedImage StitchScreens(const Image& before, const Image& after, Point click);

// Builds the summarizer prompt for one click.
std::string BuildSummarizerPrompt(std::string_view original_desc, Point click);

// Asks the model to summarise the transition shown in `stitched`. Transport
// failures and replies without <summary> tags are retried `max_retries`
// times; then TransportError / SummarizerParseError escape.
ProcessDescription SummarizeTransition(ModelClient& client, int max_retries, const StitchedImage& stitched,
                                       std::string_view original_desc, Point click, int step_index);

// Summary text from a raw reply; nullopt when the tags are missing.
std::optional<ProcessDescription> ParseSummary(std::string_view reply, int step_index);

}  // namespace probench

#endif  // PROBENCH_PROCESS_PROVIDER_H_
