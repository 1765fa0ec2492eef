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

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <vector>

#include "probench/prompt_templates.h"

namespace probench {

using nlohmann::json;

std::string_view ToString(DescriptionSource source) {
  switch (source) {
    case DescriptionSource::kStructure: return "structure";
    case DescriptionSource::kSummarizer: return "summarizer";
    case DescriptionSource::kCanonical: return "canonical";
  }
  return "unknown";
}

std::string_view ToString(ProviderKind kind) { return kind == ProviderKind::kStructure ? "sdc" : "mllm"; }

std::optional<ProviderKind> ParseProviderKind(std::string_view text) {
  if (text == "sdc") return ProviderKind::kStructure;
  if (text == "mllm") return ProviderKind::kSummarizer;
  return std::nullopt;
}

json ProcessDescription::ToJson() const {
  return {{"step_index", step_index}, {"source", ToString(source)}, {"text", text}, {"valid", valid}};
}

ProcessDescription ProcessDescription::FromJson(const json& doc) {
  ProcessDescription d;
  d.step_index = doc.at("step_index").get<int>();
  const std::string source = doc.at("source").get<std::string>();
  d.source = source == "structure"    ? DescriptionSource::kStructure
             : source == "summarizer" ? DescriptionSource::kSummarizer
                                      : DescriptionSource::kCanonical;
  d.text = doc.at("text").get<std::string>();
  d.valid = doc.value("valid", true);
  return d;
}

// --- Structure description converter ----------------------------------------

namespace {

struct Best {
  const A11yNode* node = nullptr;
  std::int64_t area = 0;
  int depth = -1;
};

void Visit(const A11yNode& node, int depth, Point pt, bool clickable_only, Best& best) {
  if ((!clickable_only || node.clickable) && node.bounds.Contains(pt)) {
    const std::int64_t area = node.bounds.Area();
    // Pre-order traversal: `>=` on depth lets later equal-depth nodes win.
    if (!best.node || area < best.area || (area == best.area && depth >= best.depth)) {
      best = {&node, area, depth};
    }
  }
  for (const A11yNode& child : node.children) Visit(child, depth + 1, pt, clickable_only, best);
}

std::string Fragment(const A11yNode& node) {
  std::string out = node.text;
  if (!node.content_desc.empty()) {
    if (!out.empty()) out += ", ";
    out += node.content_desc;
  }
  return out;
}

void AppendPart(std::string& out, const std::string& part) {
  if (part.empty()) return;
  if (!out.empty()) out += ", ";
  out += part;
}

}  // namespace

const A11yNode* MinimalEnclosingClickable(const A11yDocument& doc, Point pt) {
  Best best;
  for (const A11yNode& root : doc.roots) Visit(root, 0, pt, true, best);
  if (best.node) return best.node;
  for (const A11yNode& root : doc.roots) Visit(root, 0, pt, false, best);
  return best.node;
}

std::string DescribeNode(const A11yNode* node, int max_children) {
  if (!node) return "unknown element";
  std::string desc = Fragment(*node);
  if (desc.empty()) {
    const std::size_t slash = node->resource_id.rfind('/');
    desc = slash == std::string::npos ? node->resource_id : node->resource_id.substr(slash + 1);
    int used = 0;
    for (const A11yNode& child : node->children) {
      if (used >= max_children) break;
      const std::string part = Fragment(child);
      if (part.empty()) continue;
      AppendPart(desc, part);
      ++used;
    }
  }
  return desc.empty() ? "unknown element" : desc;
}

std::optional<ProcessDescription> ConvertClickDescription(const A11yDocument* doc, const action::Click& click,
                                                          int step_index) {
  if (!doc) return std::nullopt;
  const Point pt{click.x, click.y};
  ProcessDescription d;
  d.step_index = step_index;
  d.source = DescriptionSource::kStructure;
  d.text = "Click: " + DescribeNode(MinimalEnclosingClickable(*doc, pt)) + " at (" + std::to_string(click.x) +
           ", " + std::to_string(click.y) + ")";
  return d;
}

// --- Summarizer ----------------------------------------------------------------

StitchedImage StitchScreens(const Image& before, const Image& after, Point click) {
  if (before.empty() || after.empty()) throw Error("cannot stitch an empty image");
  StitchedImage out;
  const int height = std::max(before.height(), after.height());
  out.divider_x = before.width();
  out.after_x = before.width() + kDividerWidth;
  out.composite = Image(out.after_x + after.width(), height, kWhite);
  out.composite.Blit(before, 0, 0);
  out.composite.FillRect(out.divider_x, 0, kDividerWidth, height, kRed);
  out.composite.Blit(after, out.after_x, 0);
  out.marker = click;

  // Marker pixels are confined to the before image.
  const double inner = kMarkerRadius - kMarkerStroke / 2.0;
  const double outer = kMarkerRadius + kMarkerStroke / 2.0;
  const int reach = kMarkerRadius + kMarkerStroke;
  for (int y = std::max(0, click.y - reach); y <= std::min(before.height() - 1, click.y + reach); ++y) {
    for (int x = std::max(0, click.x - reach); x <= std::min(before.width() - 1, click.x + reach); ++x) {
      const double dx = x - click.x, dy = y - click.y;
      const double d2 = dx * dx + dy * dy;
      const bool ring = d2 >= inner * inner && d2 <= outer * outer;
      const bool dot = d2 <= static_cast<double>(kMarkerDotRadius) * kMarkerDotRadius;
      if (ring || dot) out.composite.set(x, y, kRed);
    }
  }
  return out;
}

std::string BuildSummarizerPrompt(std::string_view original_desc, Point click) {
  return FillTemplate(SummarizerTemplate(),
                      {{"<action>", std::string(original_desc)},
                       {"<coordinate>", "(" + std::to_string(click.x) + ", " + std::to_string(click.y) + ")"}},
                      {"<action>", "<coordinate>"});
}

std::optional<ProcessDescription> ParseSummary(std::string_view reply, int step_index) {
  auto summary = ExtractTagged(reply, "summary");
  if (!summary) return std::nullopt;
  std::string text = *summary;
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  text.erase(text.begin(), std::find_if(text.begin(), text.end(), not_space));
  text.erase(std::find_if(text.rbegin(), text.rend(), not_space).base(), text.end());
  if (text.empty()) return std::nullopt;

  ProcessDescription d;
  d.step_index = step_index;
  d.source = DescriptionSource::kSummarizer;
  d.text = text;
  std::string lowered;
  for (char c : text)
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ' ')
      lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  d.valid = lowered != "invalid click";
  return d;
}

ProcessDescription SummarizeTransition(ModelClient& client, int max_retries, const StitchedImage& stitched,
                                       std::string_view original_desc, Point click, int step_index) {
  const std::string prompt = BuildSummarizerPrompt(original_desc, click);
  std::string last_reply;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    last_reply = CompleteWithRetries(client, prompt, std::span<const Image>(&stitched.composite, 1), max_retries);
    if (auto d = ParseSummary(last_reply, step_index)) return *d;
    spdlog::warn("summarizer reply for step {} has no <summary> tags (attempt {}/{})", step_index, attempt + 1,
                 max_retries + 1);
  }
  throw SummarizerParseError("summarizer reply for step " + std::to_string(step_index) +
                             " lacks <summary> tags after " + std::to_string(max_retries + 1) +
                             " attempts: " + last_reply.substr(0, 200));
}

}  // namespace probench
