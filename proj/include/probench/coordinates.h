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

#ifndef PROBENCH_COORDINATES_H_
#define PROBENCH_COORDINATES_H_

#include <optional>
#include <string_view>

#include "probench/a11y.h"
#include "probench/error.h"

namespace probench {

enum class CoordinateMode { kPixel, kNormalized1000 };

std::string_view ToString(CoordinateMode mode);
std::optional<CoordinateMode> ParseCoordinateMode(std::string_view text);

struct ScreenSize {
  int width = 0;
  int height = 0;
  bool operator==(const ScreenSize&) const = default;
};

struct CoordinateContext {
  CoordinateMode mode = CoordinateMode::kPixel;
  ScreenSize screen;
};

// Point used by the tagged-dict dialect for actions without a target.
inline constexpr Point kSentinelPoint{-100, -100};

class CoordinateError : public Error {
 public:
  using Error::Error;
};

// Maps a model-space point to device pixels. Normalized points scale by
// w/1000 and h/1000 with half-up rounding; every result is clamped into
// [0, w-1] x [0, h-1]. The sentinel passes through untouched; any other
// negative coordinate is a CoordinateError.
Point RescalePoint(Point pt, CoordinateMode mode, ScreenSize screen);

}  // namespace probench

#endif  // PROBENCH_COORDINATES_H_
