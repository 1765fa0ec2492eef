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

#include "probench/coordinates.h"

#include <algorithm>
#include <cstdint>
#include <string>

namespace probench {

std::string_view ToString(CoordinateMode mode) {
  return mode == CoordinateMode::kPixel ? "pixel" : "normalized_1000";
}

std::optional<CoordinateMode> ParseCoordinateMode(std::string_view text) {
  if (text == "pixel") return CoordinateMode::kPixel;
  if (text == "normalized_1000" || text == "normalized") return CoordinateMode::kNormalized1000;
  return std::nullopt;
}

Point RescalePoint(Point pt, CoordinateMode mode, ScreenSize screen) {
  if (screen.width <= 0 || screen.height <= 0)
    throw CoordinateError("screen dimensions must be positive");
  if (pt == kSentinelPoint) return pt;
  if (pt.x < 0 || pt.y < 0)
    throw CoordinateError("negative coordinate (" + std::to_string(pt.x) + ", " +
                          std::to_string(pt.y) + ")");

  Point out = pt;
  if (mode == CoordinateMode::kNormalized1000) {
    auto scale = [](int v, int extent) {
      return static_cast<int>((static_cast<std::int64_t>(v) * extent + 500) / 1000);
    };
    out = {scale(pt.x, screen.width), scale(pt.y, screen.height)};
  }
  out.x = std::clamp(out.x, 0, screen.width - 1);
  out.y = std::clamp(out.y, 0, screen.height - 1);
  return out;
}

}  // namespace probench
