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

#ifndef PROBENCH_ADB_DEVICE_H_
#define PROBENCH_ADB_DEVICE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "probench/device.h"

namespace probench {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Runs an argv without a local shell. Tests substitute a recording fake.
class CommandRunner {
 public:
  virtual ~CommandRunner() = default;
  virtual CommandResult Run(const std::vector<std::string>& argv) = 0;
};

std::unique_ptr<CommandRunner> MakeProcessRunner();

struct AdbOptions {
  std::string adb_path = "adb";
  // ADBKeyboard installed and selected as the IME; enables non-ASCII Type.
  bool unicode_keyboard = false;
  double wait_seconds = 3.0;
  int swipe_ms = 300;
  std::string remote_dump_path = "/sdcard/window_dump.xml";
};

// Escapes text for `input text`: spaces become %s and characters the
// remote shell would interpret are backslash-escaped.
std::string EscapeInputText(std::string_view text);
// Single-quotes a string for the remote shell.
std::string ShellSingleQuote(std::string_view text);

class AdbDevice : public Device {
 public:
  // `packages` maps app ids to Android package names.
  AdbDevice(std::string serial, std::map<std::string, std::string> packages, AdbOptions options,
            std::unique_ptr<CommandRunner> runner);

  ScreenState Capture() override;
  void Perform(const Action& action) override;
  void Reset(std::string_view app_id) override;
  std::string Describe() const override { return "adb:" + serial_; }

 private:
  CommandResult Adb(std::vector<std::string> args, bool check = true);
  CommandResult Shell(std::vector<std::string> args) {
    args.insert(args.begin(), "shell");
    return Adb(std::move(args));
  }

  std::string serial_;
  std::map<std::string, std::string> packages_;
  AdbOptions options_;
  std::unique_ptr<CommandRunner> runner_;
};

}  // namespace probench

#endif  // PROBENCH_ADB_DEVICE_H_
