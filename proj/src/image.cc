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

#include <png.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

#include "probench/error.h"

namespace probench {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw Error("image dimensions must be non-negative");
  pixels_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Image::set(int x, int y, Rgb color) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  pixels_[i] = color.r;
  pixels_[i + 1] = color.g;
  pixels_[i + 2] = color.b;
}

void Image::Blit(const Image& src, int x, int y) {
  const int x0 = std::max(0, x), x1 = std::min(width_, x + src.width());
  if (x0 >= x1) return;
  for (int row = std::max(0, y); row < std::min(height_, y + src.height()); ++row) {
    const std::uint8_t* from = &src.pixels_[(static_cast<std::size_t>(row - y) * src.width_ + (x0 - x)) * 3];
    std::uint8_t* to = &pixels_[(static_cast<std::size_t>(row) * width_ + x0) * 3];
    std::memcpy(to, from, static_cast<std::size_t>(x1 - x0) * 3);
  }
}

void Image::FillRect(int x, int y, int w, int h, Rgb color) {
  for (int row = std::max(0, y); row < std::min(height_, y + h); ++row)
    for (int col = std::max(0, x); col < std::min(width_, x + w); ++col) set(col, row, color);
}

namespace {

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void ReadFromSpan(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->data.size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, cursor->data.data() + cursor->offset, length);
  cursor->offset += length;
}

void WriteToVector(png_structp png, png_bytep in, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), in, in + length);
}

void FlushNoop(png_structp) {}

[[noreturn]] void ThrowPngError(png_structp, png_const_charp message) {
  throw Error(std::string("png: ") + message);
}

void WarnNoop(png_structp, png_const_charp) {}

}  // namespace

Image DecodePng(std::span<const std::uint8_t> data) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) throw Error("png: not a PNG stream");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, ThrowPngError, WarnNoop);
  if (!png) throw Error("png: cannot allocate read struct");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_read_struct(png, info, nullptr); }
  } guard{&png, &info};
  if (!info) throw Error("png: cannot allocate info struct");

  ReadCursor cursor{data, 0};
  png_set_read_fn(png, &cursor, ReadFromSpan);
  png_read_info(png, info);

  png_set_expand(png);
  png_set_strip_16(png);
  png_set_gray_to_rgb(png);
  png_color_16 white{0, 255, 255, 255, 255};
  if (png_get_valid(png, info, PNG_INFO_tRNS) || (png_get_color_type(png, info) & PNG_COLOR_MASK_ALPHA))
    png_set_background(png, &white, PNG_BACKGROUND_GAMMA_SCREEN, 0, 1.0);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(width) * 3)
    throw Error("png: unexpected row layout after conversion");

  Image image(width, height);
  std::vector<png_bytep> rows(height);
  auto* base = image.mutable_data();
  for (int y = 0; y < height; ++y) rows[y] = base + static_cast<std::size_t>(y) * width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  return image;
}

std::vector<std::uint8_t> EncodePng(const Image& image) {
  if (image.empty()) throw Error("png: cannot encode an empty image");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, ThrowPngError, WarnNoop);
  if (!png) throw Error("png: cannot allocate write struct");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};
  if (!info) throw Error("png: cannot allocate info struct");

  std::vector<std::uint8_t> out;
  png_set_write_fn(png, &out, WriteToVector, FlushNoop);
  png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  // Fixed settings keep the encoded bytes deterministic.
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  std::vector<png_bytep> rows(image.height());
  auto* base = const_cast<std::uint8_t*>(image.bytes().data());
  for (int y = 0; y < image.height(); ++y) rows[y] = base + static_cast<std::size_t>(y) * image.width() * 3;
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  return out;
}

Image ReadPng(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DecodePng(data);
}

void WritePng(const Image& image, const std::filesystem::path& path) {
  const auto data = EncodePng(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace probench
