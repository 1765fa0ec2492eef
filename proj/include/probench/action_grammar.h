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

#ifndef PROBENCH_ACTION_GRAMMAR_H_
#define PROBENCH_ACTION_GRAMMAR_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "probench/action.h"
#include "probench/coordinates.h"

namespace probench {

// Output formats emitted by the supported agent families.
//
//   plain_call   `Action: Click(100,238)`; also accepts the answer-tag
//                variant `<think>..</think> <answer>Swipe(..)</answer>`.
//   tagged_dict  `<answer>[{'action': 'click', 'point': [x, y],
//                'input_text': '...'}]</answer>` (Python literal syntax).
//   uitars       `Thought: ...\nAction: click(point='<point>x y</point>')`.
enum class Dialect { kPlainCall, kTaggedDict, kUiTars };

std::string_view ToString(Dialect dialect);
std::optional<Dialect> ParseDialect(std::string_view text);

struct ParseError {
  enum class Kind {
    kNoAction,
    kMultipleActions,
    kUnknownVerb,
    kMalformedCoordinates,
    kMalformedArguments,
  };

  Kind kind = Kind::kNoAction;
  std::string message;
  // Offending byte range of the raw text.
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  std::string span_text;

  nlohmann::json ToJson() const;
  static ParseError FromJson(const nlohmann::json& doc);
};

std::string_view ToString(ParseError::Kind kind);

using ParseResult = std::variant<Action, ParseError>;

inline const Action* GetAction(const ParseResult& r) { return std::get_if<Action>(&r); }
inline const ParseError* GetParseError(const ParseResult& r) { return std::get_if<ParseError>(&r); }

// Extracts exactly one action from a raw model response. Coordinates are
// mapped through RescalePoint using `ctx`. `<think>` blocks are ignored in
// every dialect.
//
// tagged_dict scroll directions name the content movement the user asks for
// and map to fixed swipes on a w x h screen:
//   up    (0.5w, 0.3h) -> (0.5w, 0.7h)
//   down  (0.5w, 0.7h) -> (0.5w, 0.3h)
//   left  (0.3w, 0.5h) -> (0.7w, 0.5h)
//   right (0.7w, 0.5h) -> (0.3w, 0.5h)
ParseResult ParseAction(std::string_view raw, Dialect dialect, const CoordinateContext& ctx);

// Swipe used for a tagged_dict scroll; nullopt for an unknown direction.
std::optional<action::Swipe> ScrollSwipe(std::string_view direction, ScreenSize screen);

}  // namespace probench

#endif  // PROBENCH_ACTION_GRAMMAR_H_
