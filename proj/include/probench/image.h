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

#ifndef PROBENCH_IMAGE_H_
#define PROBENCH_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace probench {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

// Packed 8-bit RGB raster, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = kWhite);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb color);
  // Copies `src` with its top-left corner at (x, y); pixels falling outside are dropped.
  void Blit(const Image& src, int x, int y);
  void FillRect(int x, int y, int w, int h, Rgb color);

  const std::vector<std::uint8_t>& bytes() const { return pixels_; }
  std::uint8_t* mutable_data() { return pixels_.data(); }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// PNG codec. Decoding accepts any bit depth/colour type and flattens alpha
// against white; encoding always writes 8-bit RGB.
Image DecodePng(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> EncodePng(const Image& image);

Image ReadPng(const std::filesystem::path& path);
void WritePng(const Image& image, const std::filesystem::path& path);

}  // namespace probench

#endif  // PROBENCH_IMAGE_H_
