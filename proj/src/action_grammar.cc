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

#include "probench/action_grammar.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <vector>

namespace probench {

namespace {

using nlohmann::json;
using Kind = ParseError::Kind;
constexpr std::size_t npos = std::string::npos;

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t FindInsensitive(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty() || haystack.size() < needle.size()) return npos;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size() && match; ++j)
      match = std::tolower(static_cast<unsigned char>(haystack[i + j])) ==
              std::tolower(static_cast<unsigned char>(needle[j]));
    if (match) return i;
  }
  return npos;
}

// Blanks closed <think>...</think> blocks so byte offsets into the result
// still index the raw response.
std::string MaskThinkBlocks(std::string_view raw) {
  std::string out(raw);
  std::size_t pos = 0;
  while ((pos = FindInsensitive(out, "<think>", pos)) != npos) {
    const std::size_t close = FindInsensitive(out, "</think>", pos);
    if (close == npos) break;
    const std::size_t end = close + 8;
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(pos), out.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    pos = end;
  }
  return out;
}

struct Region {
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::optional<Region> AnswerRegion(std::string_view text) {
  const std::size_t open = FindInsensitive(text, "<answer>", 0);
  if (open == npos) return std::nullopt;
  const std::size_t close = FindInsensitive(text, "</answer>", open + 8);
  return Region{open + 8, close == npos ? text.size() : close};
}

ParseError MakeError(Kind kind, std::string message, std::string_view raw, std::size_t begin,
                     std::size_t end) {
  begin = std::min(begin, raw.size());
  end = std::clamp(end, begin, raw.size());
  return ParseError{kind, std::move(message), begin, end, std::string(raw.substr(begin, end - begin))};
}

// Index of the ')' closing the '(' at `open`, or npos.
std::size_t MatchParen(std::string_view text, std::size_t open, std::size_t limit, bool quote_aware) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = open; i < limit; ++i) {
    const char c = text[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (quote_aware && (c == '\'' || c == '"')) {
      quote = c;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')' && --depth == 0) {
      return i;
    }
  }
  return npos;
}

struct CallHead {
  std::size_t name_begin = 0;
  std::size_t name_end = 0;
  std::size_t open = 0;
};

// Next `identifier (` at or after `pos`.
std::optional<CallHead> NextCallHead(std::string_view text, std::size_t pos, std::size_t end) {
  for (std::size_t i = pos; i < end; ++i) {
    if (!IsIdentStart(text[i]) || (i > 0 && IsIdentChar(text[i - 1]))) continue;
    std::size_t j = i;
    while (j < end && IsIdentChar(text[j])) ++j;
    std::size_t k = j;
    while (k < end && (text[k] == ' ' || text[k] == '\t')) ++k;
    if (k < end && text[k] == '(') return CallHead{i, j, k};
    i = j - 1;
  }
  return std::nullopt;
}

struct Call {
  std::string verb;  // lower-cased
  std::size_t begin = 0;
  std::size_t open = 0;
  std::size_t close = npos;
  std::size_t End() const { return close == npos ? open + 1 : close + 1; }
};

// Parses a numeric literal, rounding decimals half away from zero.
std::optional<int> ParseCoordinate(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0 || i != s.size() || s.size() > 10) return std::nullopt;
  return static_cast<int>(std::lround(std::stod(std::string(s))));
}

std::vector<std::string_view> SplitTopLevel(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// Scans a quoted string starting at s[pos] (which must be a quote).
// Returns the unescaped payload and sets `pos` past the closing quote.
std::optional<std::string> ScanQuoted(std::string_view s, std::size_t& pos) {
  const char quote = s[pos];
  std::string out;
  for (std::size_t i = pos + 1; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\' && i + 1 < s.size()) {
      const char n = s[++i];
      switch (n) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: out += n; break;
      }
      continue;
    }
    if (c == quote) {
      pos = i + 1;
      return out;
    }
    out += c;
  }
  return std::nullopt;
}

// Minimal Python literal reader (dict/list/tuple/str/number/bool/None) used
// by the tagged_dict and uitars dialects. Produces JSON values.
class LiteralReader {
 public:
  explicit LiteralReader(std::string_view text, std::size_t pos = 0) : text_(text), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  std::optional<json> Value() {
    SkipSpace();
    if (pos_ >= text_.size()) return std::nullopt;
    const char c = text_[pos_];
    if (c == '{') return Dict();
    if (c == '[') return Sequence('[', ']');
    if (c == '(') return Sequence('(', ')');
    if (c == '\'' || c == '"') {
      auto s = ScanQuoted(text_, pos_);
      if (!s) return std::nullopt;
      return json(*s);
    }
    if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) return Number();
    if (IsIdentStart(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && IsIdentChar(text_[end])) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "True" || word == "true") return json(true);
      if (word == "False" || word == "false") return json(false);
      if (word == "None" || word == "null") return json(nullptr);
      // `enum['click']` as written in the tagged_dict prompt examples.
      if (word == "enum") {
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == '[') return Sequence('[', ']');
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

  // `key=value, ...` up to the end of the text. Positional values are
  // stored under "_0", "_1", ...
  std::optional<json> KeywordArguments() {
    json out = json::object();
    int positional = 0;
    SkipSpace();
    while (pos_ < text_.size()) {
      std::size_t save = pos_;
      std::string key;
      if (IsIdentStart(text_[pos_])) {
        std::size_t end = pos_;
        while (end < text_.size() && IsIdentChar(text_[end])) ++end;
        std::size_t eq = end;
        while (eq < text_.size() && IsSpace(text_[eq])) ++eq;
        if (eq < text_.size() && text_[eq] == '=') {
          key = std::string(text_.substr(pos_, end - pos_));
          pos_ = eq + 1;
        }
      }
      if (key.empty()) {
        pos_ = save;
        key = "_" + std::to_string(positional++);
      }
      auto value = Value();
      if (!value) return std::nullopt;
      out[key] = std::move(*value);
      SkipSpace();
      if (pos_ < text_.size()) {
        if (text_[pos_] != ',') return std::nullopt;
        ++pos_;
        SkipSpace();
      }
    }
    return out;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  std::optional<json> Number() {
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            text_[end] == 'e' || text_[end] == 'E'))
      ++end;
    const std::string token(text_.substr(pos_, end - pos_));
    pos_ = end;
    try {
      std::size_t used = 0;
      if (token.find_first_of(".eE") == npos) {
        long long v = std::stoll(token, &used);
        if (used != token.size()) return std::nullopt;
        return json(v);
      }
      double v = std::stod(token, &used);
      if (used != token.size()) return std::nullopt;
      return json(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::optional<json> Sequence(char open, char close) {
    json out = json::array();
    ++pos_;
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == close) {
      ++pos_;
      return out;
    }
    while (true) {
      auto v = Value();
      if (!v) return std::nullopt;
      out.push_back(std::move(*v));
      SkipSpace();
      if (pos_ >= text_.size()) return std::nullopt;
      if (text_[pos_] == ',') {
        ++pos_;
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == close) {
          ++pos_;
          return out;
        }
        continue;
      }
      if (text_[pos_] == close) {
        ++pos_;
        return out;
      }
      return std::nullopt;
    }
    (void)open;
  }

  std::optional<json> Dict() {
    json out = json::object();
    ++pos_;
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return out;
    }
    while (true) {
      auto key = Value();
      if (!key || !key->is_string()) return std::nullopt;
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ':') return std::nullopt;
      ++pos_;
      auto value = Value();
      if (!value) return std::nullopt;
      out[key->get<std::string>()] = std::move(*value);
      SkipSpace();
      if (pos_ >= text_.size()) return std::nullopt;
      if (text_[pos_] == ',') {
        ++pos_;
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] == '}') {
          ++pos_;
          return out;
        }
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        return out;
      }
      return std::nullopt;
    }
  }

  std::string_view text_;
  std::size_t pos_;
};

// Rescales and wraps coordinate failures as parse errors.
std::variant<Point, ParseError> Rescale(Point p, const CoordinateContext& ctx, std::string_view raw,
                                        std::size_t begin, std::size_t end) {
  try {
    return RescalePoint(p, ctx.mode, ctx.screen);
  } catch (const CoordinateError& e) {
    return MakeError(Kind::kMalformedCoordinates, e.what(), raw, begin, end);
  }
}

// ---------------------------------------------------------------------------
// Call scanning shared by plain_call and uitars.

struct ScanResult {
  std::vector<Call> known;
  std::vector<Call> unknown;
};

template <class IsKnown, class QuoteAware>
ScanResult ScanCalls(std::string_view text, Region region, IsKnown is_known, QuoteAware quote_aware) {
  ScanResult result;
  std::size_t pos = region.begin;
  while (auto head = NextCallHead(text, pos, region.end)) {
    Call call;
    call.verb = Lower(text.substr(head->name_begin, head->name_end - head->name_begin));
    call.begin = head->name_begin;
    call.open = head->open;
    if (!is_known(call.verb)) {
      call.close = MatchParen(text, call.open, region.end, false);
      result.unknown.push_back(call);
      pos = call.open + 1;
      continue;
    }
    if (quote_aware(call, text)) call.close = MatchParen(text, call.open, region.end, true);
    if (call.close == npos) call.close = MatchParen(text, call.open, region.end, false);
    if (call.close == npos) {
      // Unbalanced text such as `Type(a (b)`: fall back to the last ')'.
      const std::size_t last = text.substr(0, region.end).rfind(')');
      if (last != npos && last > call.open) call.close = last;
    }
    result.known.push_back(call);
    pos = call.End();
  }
  return result;
}

// `marker` is where an "Action:" prefix ends (npos when absent); an unknown
// verb right after it is a better report than one buried in free text.
std::variant<Call, ParseError> SingleCall(const ScanResult& scan, std::string_view raw, Region region,
                                          std::size_t marker = npos) {
  if (scan.known.size() > 1) {
    const Call& second = scan.known[1];
    return MakeError(Kind::kMultipleActions,
                     std::to_string(scan.known.size()) + " actions found; only one is allowed", raw,
                     second.begin, second.End());
  }
  if (scan.known.empty()) {
    if (!scan.unknown.empty()) {
      auto it = std::find_if(scan.unknown.begin(), scan.unknown.end(),
                             [&](const Call& c) { return marker != npos && c.begin >= marker; });
      const Call& u = it == scan.unknown.end() ? scan.unknown.front() : *it;
      return MakeError(Kind::kUnknownVerb, "unknown action '" + u.verb + "'", raw, u.begin, u.End());
    }
    return MakeError(Kind::kNoAction, "no action found", raw, region.begin, region.end);
  }
  const Call& call = scan.known.front();
  if (call.close == npos)
    return MakeError(Kind::kMalformedArguments, "unterminated argument list", raw, call.begin, region.end);
  return call;
}

// ---------------------------------------------------------------------------
// plain_call

const std::map<std::string, int, std::less<>>& PlainVerbs() {
  static const std::map<std::string, int, std::less<>> kVerbs = {
      {"click", 2}, {"swipe", 4}, {"type", -1}, {"back", 0},
      {"enter", 0}, {"wait", 0},  {"complete", 0},
  };
  return kVerbs;
}

ParseResult ParsePlainCall(std::string_view raw, const CoordinateContext& ctx) {
  const std::string text = MaskThinkBlocks(raw);
  Region region{0, text.size()};
  if (auto answer = AnswerRegion(text)) region = *answer;
  std::size_t marker = FindInsensitive(text, "action:", region.begin);
  if (marker != npos) marker += 7;

  auto scan = ScanCalls(
      text, region, [](const std::string& verb) { return PlainVerbs().count(verb) > 0; },
      [](const Call& call, std::string_view t) {
        if (call.verb != "type") return false;
        std::size_t i = call.open + 1;
        while (i < t.size() && IsSpace(t[i])) ++i;
        return i < t.size() && (t[i] == '"' || t[i] == '\'');
      });
  auto single = SingleCall(scan, raw, region, marker);
  if (auto* err = std::get_if<ParseError>(&single)) return *err;
  const Call& call = std::get<Call>(single);
  const std::string_view args = std::string_view(text).substr(call.open + 1, call.close - call.open - 1);

  if (call.verb == "type") {
    std::string_view body = Trim(args);
    if (!body.empty() && (body.front() == '"' || body.front() == '\'')) {
      std::size_t pos = 0;
      auto quoted = ScanQuoted(body, pos);
      if (quoted && Trim(body.substr(pos)).empty()) return action::Type{*quoted};
    }
    return action::Type{std::string(body)};
  }

  const int arity = PlainVerbs().find(call.verb)->second;
  if (arity == 0) {
    if (call.verb == "back") return action::Back{};
    if (call.verb == "enter") return action::Enter{};
    if (call.verb == "wait") return action::Wait{};
    return action::Complete{};
  }

  const auto parts = SplitTopLevel(args, ',');
  std::vector<int> values;
  for (auto part : parts) {
    auto v = ParseCoordinate(part);
    if (!v) break;
    values.push_back(*v);
  }
  if (static_cast<int>(parts.size()) != arity || static_cast<int>(values.size()) != arity) {
    return MakeError(Kind::kMalformedCoordinates,
                     "expected " + std::to_string(arity) + " integer coordinates", raw, call.begin,
                     call.End());
  }
  std::vector<Point> points;
  for (int i = 0; i < arity; i += 2) {
    auto p = Rescale({values[i], values[i + 1]}, ctx, raw, call.begin, call.End());
    if (auto* err = std::get_if<ParseError>(&p)) return *err;
    points.push_back(std::get<Point>(p));
  }
  if (call.verb == "click") return action::Click{points[0].x, points[0].y};
  return action::Swipe{points[0].x, points[0].y, points[1].x, points[1].y};
}

// ---------------------------------------------------------------------------
// tagged_dict

std::optional<Point> PointFromJson(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) return std::nullopt;
  return Point{static_cast<int>(std::lround(v[0].get<double>())),
               static_cast<int>(std::lround(v[1].get<double>()))};
}

ParseResult ParseTaggedDict(std::string_view raw, const CoordinateContext& ctx) {
  const std::string text = MaskThinkBlocks(raw);
  Region region{0, text.size()};
  if (auto answer = AnswerRegion(text)) region = *answer;

  const std::size_t start = text.find_first_of("[{", region.begin);
  if (start == npos || start >= region.end)
    return MakeError(Kind::kNoAction, "no action literal found", raw, region.begin, region.end);

  const std::string_view body = std::string_view(text).substr(0, region.end);
  LiteralReader reader(body, start);
  auto value = reader.Value();
  const std::size_t end = reader.pos();
  if (!value)
    return MakeError(Kind::kMalformedArguments, "action literal is not a valid list/dict", raw, start,
                     region.end);

  json entry;
  if (value->is_array()) {
    if (value->empty()) return MakeError(Kind::kNoAction, "empty action list", raw, start, end);
    if (value->size() > 1)
      return MakeError(Kind::kMultipleActions,
                       std::to_string(value->size()) + " actions found; only one is allowed", raw, start,
                       end);
    entry = (*value)[0];
  } else {
    entry = *value;
  }
  if (!entry.is_object())
    return MakeError(Kind::kMalformedArguments, "action entry is not a dict", raw, start, end);
  // A one-alternative enum stands for its only member.
  for (const char* key : {"action", "input_text"}) {
    auto it = entry.find(key);
    if (it != entry.end() && it->is_array() && it->size() == 1 && (*it)[0].is_string()) *it = (*it)[0];
  }
  if (!entry.contains("action") || !entry["action"].is_string())
    return MakeError(Kind::kMalformedArguments, "action entry lacks a single 'action' string", raw, start, end);

  const std::string verb = Lower(Trim(entry["action"].get<std::string>()));
  auto input_text = [&]() -> std::optional<std::string> {
    auto it = entry.find("input_text");
    if (it == entry.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };

  if (verb == "click") {
    auto it = entry.find("point");
    std::optional<Point> p = it == entry.end() ? std::nullopt : PointFromJson(*it);
    if (!p || *p == kSentinelPoint)
      return MakeError(Kind::kMalformedCoordinates, "click requires a point [x, y]", raw, start, end);
    auto scaled = Rescale(*p, ctx, raw, start, end);
    if (auto* err = std::get_if<ParseError>(&scaled)) return *err;
    const Point q = std::get<Point>(scaled);
    return action::Click{q.x, q.y};
  }
  if (verb == "type") {
    auto t = input_text();
    if (!t) return MakeError(Kind::kMalformedArguments, "type requires input_text", raw, start, end);
    return action::Type{*t};
  }
  if (verb == "scroll") {
    auto t = input_text();
    auto swipe = t ? ScrollSwipe(*t, ctx.screen) : std::nullopt;
    if (!swipe)
      return MakeError(Kind::kMalformedArguments, "scroll requires input_text up/down/left/right", raw,
                       start, end);
    return *swipe;
  }
  if (verb == "wait") return action::Wait{};
  if (verb == "complete") return action::Complete{};
  if (verb == "back") return action::Back{};
  if (verb == "enter") return action::Enter{};
  return MakeError(Kind::kUnknownVerb, "unknown action '" + verb + "'", raw, start, end);
}

// ---------------------------------------------------------------------------
// uitars

bool UiTarsKnown(const std::string& verb) {
  static const char* const kVerbs[] = {"click", "left_single", "type", "drag", "press_back",
                                       "press_enter", "finished", "wait"};
  return std::any_of(std::begin(kVerbs), std::end(kVerbs), [&](const char* v) { return verb == v; });
}

// Accepts `<point>x y</point>`, `(x,y)`, `[x, y]` and 4-number boxes (centre).
std::optional<Point> UiTarsPoint(const json& value) {
  if (value.is_array()) {
    std::vector<double> nums;
    for (const auto& v : value) {
      if (!v.is_number()) return std::nullopt;
      nums.push_back(v.get<double>());
    }
    if (nums.size() == 2) return Point{static_cast<int>(std::lround(nums[0])), static_cast<int>(std::lround(nums[1]))};
    return std::nullopt;
  }
  if (!value.is_string()) return std::nullopt;
  const std::string s = value.get<std::string>();
  std::vector<double> nums;
  for (std::size_t i = 0; i < s.size();) {
    const bool sign = s[i] == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if (sign || std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t used = 0;
      nums.push_back(std::stod(s.substr(i), &used));
      i += used;
    } else {
      ++i;
    }
  }
  if (nums.size() == 2) return Point{static_cast<int>(std::lround(nums[0])), static_cast<int>(std::lround(nums[1]))};
  if (nums.size() == 4)
    return Point{static_cast<int>(std::lround((nums[0] + nums[2]) / 2)),
                 static_cast<int>(std::lround((nums[1] + nums[3]) / 2))};
  return std::nullopt;
}

ParseResult ParseUiTars(std::string_view raw, const CoordinateContext& ctx) {
  const std::string text = MaskThinkBlocks(raw);
  Region region{0, text.size()};
  if (std::size_t a = FindInsensitive(text, "action:", 0); a != npos) region.begin = a + 7;

  auto scan = ScanCalls(text, region, UiTarsKnown, [](const Call&, std::string_view) { return true; });
  auto single = SingleCall(scan, raw, region);
  if (auto* err = std::get_if<ParseError>(&single)) return *err;
  const Call& call = std::get<Call>(single);
  const std::string_view args = std::string_view(text).substr(call.open + 1, call.close - call.open - 1);

  LiteralReader reader(args);
  auto kwargs = reader.KeywordArguments();
  if (!kwargs)
    return MakeError(Kind::kMalformedArguments, "cannot parse arguments of '" + call.verb + "'", raw,
                     call.begin, call.End());

  auto point_arg = [&](std::initializer_list<const char*> keys) -> std::variant<Point, ParseError> {
    for (const char* key : keys) {
      auto it = kwargs->find(key);
      if (it == kwargs->end()) continue;
      auto p = UiTarsPoint(*it);
      if (!p) break;
      return Rescale(*p, ctx, raw, call.begin, call.End());
    }
    return MakeError(Kind::kMalformedCoordinates, "missing or malformed point in '" + call.verb + "'",
                     raw, call.begin, call.End());
  };

  if (call.verb == "click" || call.verb == "left_single") {
    auto p = point_arg({"point", "start_box", "_0"});
    if (auto* err = std::get_if<ParseError>(&p)) return *err;
    return action::Click{std::get<Point>(p).x, std::get<Point>(p).y};
  }
  if (call.verb == "drag") {
    auto from = point_arg({"start_point", "start_box", "_0"});
    if (auto* err = std::get_if<ParseError>(&from)) return *err;
    auto to = point_arg({"end_point", "end_box", "_1"});
    if (auto* err = std::get_if<ParseError>(&to)) return *err;
    const Point a = std::get<Point>(from), b = std::get<Point>(to);
    return action::Swipe{a.x, a.y, b.x, b.y};
  }
  if (call.verb == "type") {
    for (const char* key : {"content", "_0"}) {
      auto it = kwargs->find(key);
      if (it != kwargs->end() && it->is_string()) return action::Type{it->get<std::string>()};
    }
    return MakeError(Kind::kMalformedArguments, "type requires content='...'", raw, call.begin, call.End());
  }
  if (call.verb == "press_back") return action::Back{};
  if (call.verb == "press_enter") return action::Enter{};
  if (call.verb == "wait") return action::Wait{};
  return action::Complete{};  // finished
}

}  // namespace

std::string_view ToString(Dialect dialect) {
  switch (dialect) {
    case Dialect::kPlainCall: return "plain_call";
    case Dialect::kTaggedDict: return "tagged_dict";
    case Dialect::kUiTars: return "uitars";
  }
  return "unknown";
}

std::optional<Dialect> ParseDialect(std::string_view text) {
  if (text == "plain_call") return Dialect::kPlainCall;
  if (text == "tagged_dict") return Dialect::kTaggedDict;
  if (text == "uitars") return Dialect::kUiTars;
  return std::nullopt;
}

std::string_view ToString(ParseError::Kind kind) {
  switch (kind) {
    case Kind::kNoAction: return "no_action";
    case Kind::kMultipleActions: return "multiple_actions";
    case Kind::kUnknownVerb: return "unknown_verb";
    case Kind::kMalformedCoordinates: return "malformed_coordinates";
    case Kind::kMalformedArguments: return "malformed_arguments";
  }
  return "unknown";
}

json ParseError::ToJson() const {
  return {{"kind", ToString(kind)},
          {"message", message},
          {"span", {span_begin, span_end}},
          {"span_text", span_text}};
}

ParseError ParseError::FromJson(const json& doc) {
  ParseError e;
  const std::string kind = doc.at("kind").get<std::string>();
  for (Kind k : {Kind::kNoAction, Kind::kMultipleActions, Kind::kUnknownVerb, Kind::kMalformedCoordinates,
                 Kind::kMalformedArguments})
    if (ToString(k) == kind) e.kind = k;
  e.message = doc.value("message", "");
  if (doc.contains("span")) {
    e.span_begin = doc.at("span").at(0).get<std::size_t>();
    e.span_end = doc.at("span").at(1).get<std::size_t>();
  }
  e.span_text = doc.value("span_text", "");
  return e;
}

std::optional<action::Swipe> ScrollSwipe(std::string_view direction, ScreenSize screen) {
  const std::string dir = Lower(Trim(direction));
  // Tenths of the screen extent, rounded half up.
  auto at = [](int extent, int tenths) {
    return static_cast<int>((static_cast<long long>(extent) * tenths + 5) / 10);
  };
  const int w = screen.width, h = screen.height;
  if (dir == "up") return action::Swipe{at(w, 5), at(h, 3), at(w, 5), at(h, 7)};
  if (dir == "down") return action::Swipe{at(w, 5), at(h, 7), at(w, 5), at(h, 3)};
  if (dir == "left") return action::Swipe{at(w, 3), at(h, 5), at(w, 7), at(h, 5)};
  if (dir == "right") return action::Swipe{at(w, 7), at(h, 5), at(w, 3), at(h, 5)};
  return std::nullopt;
}

ParseResult ParseAction(std::string_view raw, Dialect dialect, const CoordinateContext& ctx) {
  switch (dialect) {
    case Dialect::kPlainCall: return ParsePlainCall(raw, ctx);
    case Dialect::kTaggedDict: return ParseTaggedDict(raw, ctx);
    case Dialect::kUiTars: return ParseUiTars(raw, ctx);
  }
  return MakeError(Kind::kNoAction, "unsupported dialect", raw, 0, raw.size());
}

}  // namespace probench
