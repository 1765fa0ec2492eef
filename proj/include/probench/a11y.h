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

#ifndef PROBENCH_A11Y_H_
#define PROBENCH_A11Y_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probench/error.h"

namespace probench {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

// Half-open pixel rectangle [left, right) x [top, bottom), as Android reports it.
struct Rect {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  bool Contains(Point p) const { return p.x >= left && p.x < right && p.y >= top && p.y < bottom; }
  std::int64_t Area() const {
    if (right <= left || bottom <= top) return 0;
    return static_cast<std::int64_t>(right - left) * (bottom - top);
  }
  bool operator==(const Rect&) const = default;
};

struct A11yNode {
  std::string text;
  std::string content_desc;
  std::string resource_id;
  std::string class_name;
  bool clickable = false;
  Rect bounds;
  std::vector<A11yNode> children;
};

// One accessibility dump. `roots` holds the top-level nodes under the dump's
// <hierarchy> element. Child bounds are not required to nest inside their
// parent's bounds.
struct A11yDocument {
  int width = 0;
  int height = 0;
  std::vector<A11yNode> roots;
};

class A11yParseError : public Error {
 public:
  using Error::Error;
};

// Parses a `uiautomator dump` XML document. Bounds are clamped into
// [0, width] x [0, height]. Throws A11yParseError on malformed input.
A11yDocument ParseA11yXml(std::string_view xml, int width, int height);

// "[x1,y1][x2,y2]" as found in the bounds attribute.
std::optional<Rect> ParseBounds(std::string_view text);

}  // namespace probench

#endif  // PROBENCH_A11Y_H_
