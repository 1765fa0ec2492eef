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

#ifndef PROBENCH_DEVICE_H_
#define PROBENCH_DEVICE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include "probench/a11y.h"
#include "probench/action.h"
#include "probench/image.h"

namespace probench {

struct ScreenState {
  Image screenshot;
  int width = 0;
  int height = 0;
  // Parsed dump; absent when the backend has none or the dump failed.
  std::optional<A11yDocument> a11y;
  // Raw dump text as captured (kept even when parsing failed).
  std::string a11y_xml;
  // Set when a dump was attempted but could not be used.
  std::optional<std::string> a11y_warning;
  std::chrono::system_clock::time_point captured_at;
};

// A handle is owned by one running task at a time. Implementations are
// movable between threads but not safe for concurrent use.
class Device {
 public:
  virtual ~Device() = default;

  // Throws DeviceError(kUnreachable) when the device cannot be reached. A
  // failed accessibility dump is not an error: `a11y` is left empty and
  // `a11y_warning` explains why.
  virtual ScreenState Capture() = 0;

  // Applies a device-effecting action. Complete is rejected with
  // ContractError; Wait pauses without touching the device.
  virtual void Perform(const Action& action) = 0;

  // Returns the app to its launch state. Throws DeviceError(kUnknownApp).
  virtual void Reset(std::string_view app_id) = 0;

  virtual std::string Describe() const = 0;
};

inline bool IsAscii(std::string_view text) {
  for (unsigned char c : text)
    if (c >= 0x80) return false;
  return true;
}

}  // namespace probench

#endif  // PROBENCH_DEVICE_H_
