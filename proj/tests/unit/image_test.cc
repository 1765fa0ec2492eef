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

#include "probench/image.h"

#include <gtest/gtest.h>

#include "probench/error.h"
#include "testing/testing.h"

namespace probench {
namespace {

TEST(Image, FillAndAccess) {
  Image img(3, 2, Rgb{1, 2, 3});
  EXPECT_EQ(img.at(2, 1), (Rgb{1, 2, 3}));
  img.set(0, 0, kRed);
  EXPECT_EQ(img.at(0, 0), kRed);
  EXPECT_EQ(img.bytes().size(), 18u);
}

TEST(Image, BlitClipsOutside) {
  Image dst(4, 4, kWhite);
  Image src(3, 3, kRed);
  dst.Blit(src, 2, 2);
  EXPECT_EQ(dst.at(2, 2), kRed);
  EXPECT_EQ(dst.at(3, 3), kRed);
  EXPECT_EQ(dst.at(1, 1), kWhite);
}

TEST(Image, FillRectClips) {
  Image img(5, 5, kWhite);
  img.FillRect(3, -1, 10, 3, kRed);
  EXPECT_EQ(img.at(4, 0), kRed);
  EXPECT_EQ(img.at(4, 1), kRed);
  EXPECT_EQ(img.at(4, 2), kWhite);
  EXPECT_EQ(img.at(2, 0), kWhite);
}

TEST(Png, EncodeDecodeRoundTrip) {
  Image img(17, 9, Rgb{10, 20, 30});
  img.set(16, 8, Rgb{250, 128, 1});
  const auto bytes = EncodePng(img);
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(bytes[1], 'P');
  EXPECT_EQ(DecodePng(bytes), img);
}

TEST(Png, FileRoundTrip) {
  testing::TempDir dir;
  Image img(4, 4, kRed);
  WritePng(img, dir / "x.png");
  EXPECT_EQ(ReadPng(dir / "x.png"), img);
}

TEST(Png, GarbageIsAnError) {
  const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5};
  EXPECT_THROW(DecodePng(junk), Error);
  EXPECT_THROW(ReadPng("/nonexistent.png"), Error);
}

}  // namespace
}  // namespace probench
