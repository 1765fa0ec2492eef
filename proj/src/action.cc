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

#include "probench/action.h"

#include "probench/error.h"

namespace probench {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string CanonicalString(const Action& action) {
  return std::visit(
      Overloaded{
          [](const action::Click& a) {
            return "Click(" + std::to_string(a.x) + ", " + std::to_string(a.y) + ")";
          },
          [](const action::Swipe& a) {
            return "Swipe(" + std::to_string(a.x1) + ", " + std::to_string(a.y1) + ", " +
                   std::to_string(a.x2) + ", " + std::to_string(a.y2) + ")";
          },
          [](const action::Type& a) { return "Type(" + Quote(a.text) + ")"; },
          [](const action::Enter&) { return std::string("Enter()"); },
          [](const action::Back&) { return std::string("Back()"); },
          [](const action::Wait&) { return std::string("Wait()"); },
          [](const action::Complete&) { return std::string("Complete()"); },
      },
      action);
}

std::string_view VerbName(const Action& action) {
  static constexpr std::string_view kNames[] = {"click", "swipe", "type", "enter",
                                                "back",  "wait",  "complete"};
  return kNames[action.index()];
}

nlohmann::json ActionToJson(const Action& action) {
  nlohmann::json doc{{"verb", VerbName(action)}};
  std::visit(Overloaded{
                 [&](const action::Click& a) {
                   doc["x"] = a.x;
                   doc["y"] = a.y;
                 },
                 [&](const action::Swipe& a) {
                   doc["x1"] = a.x1;
                   doc["y1"] = a.y1;
                   doc["x2"] = a.x2;
                   doc["y2"] = a.y2;
                 },
                 [&](const action::Type& a) { doc["text"] = a.text; },
                 [](const auto&) {},
             },
             action);
  doc["canonical"] = CanonicalString(action);
  return doc;
}

Action ActionFromJson(const nlohmann::json& doc) {
  const std::string verb = doc.at("verb").get<std::string>();
  if (verb == "click") return action::Click{doc.at("x").get<int>(), doc.at("y").get<int>()};
  if (verb == "swipe")
    return action::Swipe{doc.at("x1").get<int>(), doc.at("y1").get<int>(), doc.at("x2").get<int>(),
                         doc.at("y2").get<int>()};
  if (verb == "type") return action::Type{doc.at("text").get<std::string>()};
  if (verb == "enter") return action::Enter{};
  if (verb == "back") return action::Back{};
  if (verb == "wait") return action::Wait{};
  if (verb == "complete") return action::Complete{};
  throw ValidationError("action", "verb", "unknown verb '" + verb + "'");
}

}  // namespace probench
