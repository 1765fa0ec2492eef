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

#include <gtest/gtest.h>

#include <random>

namespace probench {
namespace {

constexpr ScreenSize kPhone{1080, 2400};

TEST(RescalePoint, NormalizedCentre) {
  EXPECT_EQ(RescalePoint({500, 500}, CoordinateMode::kNormalized1000, kPhone), (Point{540, 1200}));
}

TEST(RescalePoint, NormalizedBoundaryClamps) {
  EXPECT_EQ(RescalePoint({1000, 1000}, CoordinateMode::kNormalized1000, kPhone), (Point{1079, 2399}));
  EXPECT_EQ(RescalePoint({0, 0}, CoordinateMode::kNormalized1000, kPhone), (Point{0, 0}));
}

TEST(RescalePoint, NormalizedRoundsHalfUp) {
  // 1 * 1080 / 1000 = 1.08 -> 1; 5 * 1080 / 1000 = 5.4 -> 5; 25 * 2400 / 1000 = 60.
  EXPECT_EQ(RescalePoint({1, 25}, CoordinateMode::kNormalized1000, kPhone), (Point{1, 60}));
  // 125 * 1004 / 1000 = 125.5 -> 126.
  EXPECT_EQ(RescalePoint({125, 125}, CoordinateMode::kNormalized1000, {1004, 1004}), (Point{126, 126}));
}

TEST(RescalePoint, PixelIdentity) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Point p{static_cast<int>(rng() % 1080), static_cast<int>(rng() % 2400)};
    EXPECT_EQ(RescalePoint(p, CoordinateMode::kPixel, kPhone), p);
  }
}

TEST(RescalePoint, PixelClampsOffscreen) {
  EXPECT_EQ(RescalePoint({5000, 100}, CoordinateMode::kPixel, kPhone), (Point{1079, 100}));
}

TEST(RescalePoint, SentinelPassesThrough) {
  EXPECT_EQ(RescalePoint(kSentinelPoint, CoordinateMode::kNormalized1000, kPhone), kSentinelPoint);
  EXPECT_EQ(RescalePoint(kSentinelPoint, CoordinateMode::kPixel, kPhone), kSentinelPoint);
}

TEST(RescalePoint, NegativeIsAnError) {
  EXPECT_THROW(RescalePoint({-1, 10}, CoordinateMode::kPixel, kPhone), CoordinateError);
  EXPECT_THROW(RescalePoint({10, -100}, CoordinateMode::kNormalized1000, kPhone), CoordinateError);
  EXPECT_THROW(RescalePoint({1, 1}, CoordinateMode::kPixel, {0, 10}), CoordinateError);
}

TEST(CoordinateMode, Parse) {
  EXPECT_EQ(ParseCoordinateMode("normalized_1000"), CoordinateMode::kNormalized1000);
  EXPECT_EQ(ParseCoordinateMode("pixel"), CoordinateMode::kPixel);
  EXPECT_FALSE(ParseCoordinateMode("relative").has_value());
}

}  // namespace
}  // namespace probench
