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

#ifndef PROBENCH_ACTION_H_
#define PROBENCH_ACTION_H_

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace probench {

// The unified action space. There is deliberately no Home action: every
// task stays inside a single app.
namespace action {

struct Click {
  int x = 0;
  int y = 0;
  bool operator==(const Click&) const = default;
};
struct Swipe {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
  bool operator==(const Swipe&) const = default;
};
struct Type {
  std::string text;
  bool operator==(const Type&) const = default;
};
struct Enter {
  bool operator==(const Enter&) const = default;
};
struct Back {
  bool operator==(const Back&) const = default;
};
struct Wait {
  bool operator==(const Wait&) const = default;
};
struct Complete {
  bool operator==(const Complete&) const = default;
};

}  // namespace action

using Action = std::variant<action::Click, action::Swipe, action::Type, action::Enter,
                            action::Back, action::Wait, action::Complete>;

// Stable rendering such as `Click(100, 238)` or `Type("a b")`. Type payloads
// use double quotes with backslash escaping of `"` and `\`.
std::string CanonicalString(const Action& action);

// Exact structural equality, arguments included.
inline bool ActionsEqual(const Action& a, const Action& b) { return a == b; }

std::string_view VerbName(const Action& action);

inline bool IsComplete(const Action& a) { return std::holds_alternative<action::Complete>(a); }
inline bool IsClick(const Action& a) { return std::holds_alternative<action::Click>(a); }

nlohmann::json ActionToJson(const Action& action);
Action ActionFromJson(const nlohmann::json& doc);

}  // namespace probench

#endif  // PROBENCH_ACTION_H_
