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

#include <algorithm>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace probench {

namespace {

namespace pt = boost::property_tree;

bool ParseInt(std::string_view text, std::size_t& pos, int& out) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  const char* begin = text.data() + pos;
  auto [end, ec] = std::from_chars(begin, text.data() + text.size(), out);
  if (ec != std::errc()) return false;
  pos += static_cast<std::size_t>(end - begin);
  return true;
}

bool Expect(std::string_view text, std::size_t& pos, char c) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || text[pos] != c) return false;
  ++pos;
  return true;
}

A11yNode ConvertNode(const pt::ptree& element, const A11yDocument& doc) {
  A11yNode node;
  if (auto attrs = element.get_child_optional("<xmlattr>")) {
    node.text = attrs->get("text", "");
    node.content_desc = attrs->get("content-desc", "");
    node.resource_id = attrs->get("resource-id", "");
    node.class_name = attrs->get("class", "");
    node.clickable = attrs->get("clickable", "") == "true";
    const std::string bounds = attrs->get("bounds", "");
    if (!bounds.empty()) {
      auto rect = ParseBounds(bounds);
      if (!rect) throw A11yParseError("malformed bounds attribute '" + bounds + "'");
      auto clamp = [](int v, int hi) { return std::clamp(v, 0, hi); };
      node.bounds = {clamp(rect->left, doc.width), clamp(rect->top, doc.height),
                     clamp(rect->right, doc.width), clamp(rect->bottom, doc.height)};
    }
  }
  for (const auto& [name, child] : element) {
    if (name == "node") node.children.push_back(ConvertNode(child, doc));
  }
  return node;
}

}  // namespace

std::optional<Rect> ParseBounds(std::string_view text) {
  Rect r;
  std::size_t pos = 0;
  if (!Expect(text, pos, '[') || !ParseInt(text, pos, r.left) || !Expect(text, pos, ',') ||
      !ParseInt(text, pos, r.top) || !Expect(text, pos, ']') || !Expect(text, pos, '[') ||
      !ParseInt(text, pos, r.right) || !Expect(text, pos, ',') || !ParseInt(text, pos, r.bottom) ||
      !Expect(text, pos, ']'))
    return std::nullopt;
  return r;
}

A11yDocument ParseA11yXml(std::string_view xml, int width, int height) {
  A11yDocument doc;
  doc.width = width;
  doc.height = height;

  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw A11yParseError(std::string("malformed a11y XML: ") + e.what());
  }

  bool found_root = false;
  for (const auto& [name, element] : tree) {
    if (name == "hierarchy") {
      found_root = true;
      for (const auto& [child_name, child] : element) {
        if (child_name == "node") doc.roots.push_back(ConvertNode(child, doc));
      }
    } else if (name == "node") {
      found_root = true;
      doc.roots.push_back(ConvertNode(element, doc));
    }
  }
  if (!found_root) throw A11yParseError("a11y XML has no <hierarchy> or <node> root");
  return doc;
}

}  // namespace probench
