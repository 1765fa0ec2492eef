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

#include "probench/adb_device.h"

#include <spdlog/spdlog.h>

#include <boost/asio/io_context.hpp>
#include <boost/process.hpp>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "probench/error.h"

namespace probench {

namespace {

namespace bp = boost::process;

class ProcessRunner : public CommandRunner {
 public:
  CommandResult Run(const std::vector<std::string>& argv) override {
    if (argv.empty()) throw ContractError("empty command");
    boost::filesystem::path exe =
        argv[0].find('/') == std::string::npos ? bp::search_path(argv[0]) : boost::filesystem::path(argv[0]);
    if (exe.empty()) throw DeviceError(DeviceError::Kind::kUnreachable, "'" + argv[0] + "' not found on PATH");

    boost::asio::io_context io;
    std::future<std::vector<char>> out;
    std::future<std::string> err;
    std::error_code ec;
    bp::child child(exe, bp::args(std::vector<std::string>(argv.begin() + 1, argv.end())),
                    bp::std_in.close(), bp::std_out > out, bp::std_err > err, io, ec);
    if (ec) throw DeviceError(DeviceError::Kind::kUnreachable, "cannot start " + argv[0] + ": " + ec.message());
    io.run();
    child.wait();
    CommandResult result;
    result.exit_code = child.exit_code();
    const auto bytes = out.get();
    result.out.assign(bytes.begin(), bytes.end());
    result.err = err.get();
    return result;
  }
};

bool LooksDisconnected(const CommandResult& r) {
  const std::string text = r.err + r.out;
  for (const char* marker : {"not found", "offline", "no devices", "unauthorized", "device still connecting"})
    if (text.find(marker) != std::string::npos) return true;
  return false;
}

std::string Join(const std::vector<std::string>& argv) {
  std::string out;
  for (const auto& a : argv) out += (out.empty() ? "" : " ") + a;
  return out;
}

}  // namespace

std::unique_ptr<CommandRunner> MakeProcessRunner() { return std::make_unique<ProcessRunner>(); }

std::string EscapeInputText(std::string_view text) {
  static constexpr std::string_view kSpecial = "\\'\"`$&|;<>()[]{}*?!~#%^";
  std::string out;
  for (char c : text) {
    if (c == ' ') {
      out += "%s";
      continue;
    }
    if (kSpecial.find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string ShellSingleQuote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += '\'';
  return out;
}

AdbDevice::AdbDevice(std::string serial, std::map<std::string, std::string> packages, AdbOptions options,
                     std::unique_ptr<CommandRunner> runner)
    : serial_(std::move(serial)),
      packages_(std::move(packages)),
      options_(std::move(options)),
      runner_(runner ? std::move(runner) : MakeProcessRunner()) {}

CommandResult AdbDevice::Adb(std::vector<std::string> args, bool check) {
  std::vector<std::string> argv = {options_.adb_path, "-s", serial_};
  argv.insert(argv.end(), args.begin(), args.end());
  CommandResult result = runner_->Run(argv);
  if (check && result.exit_code != 0) {
    if (LooksDisconnected(result))
      throw DeviceError(DeviceError::Kind::kUnreachable, "device '" + serial_ + "' unreachable: " + result.err);
    throw DeviceError(DeviceError::Kind::kCommandFailed,
                      "'" + Join(argv) + "' exited with " + std::to_string(result.exit_code) + ": " + result.err);
  }
  return result;
}

ScreenState AdbDevice::Capture() {
  ScreenState state;
  const CommandResult shot = Adb({"exec-out", "screencap", "-p"});
  try {
    state.screenshot = DecodePng(
        std::span(reinterpret_cast<const std::uint8_t*>(shot.out.data()), shot.out.size()));
  } catch (const Error& e) {
    if (LooksDisconnected(shot))
      throw DeviceError(DeviceError::Kind::kUnreachable, "device '" + serial_ + "' unreachable");
    throw DeviceError(DeviceError::Kind::kCommandFailed, std::string("screencap returned no image: ") + e.what());
  }
  state.width = state.screenshot.width();
  state.height = state.screenshot.height();
  state.captured_at = std::chrono::system_clock::now();

  // The dump is best effort; failures degrade to a screenshot-only state.
  try {
    Adb({"shell", "uiautomator", "dump", options_.remote_dump_path});
    const auto local = std::filesystem::temp_directory_path() / ("probench_dump_" + serial_ + ".xml");
    Adb({"pull", options_.remote_dump_path, local.string()});
    std::ifstream in(local);
    std::stringstream buffer;
    buffer << in.rdbuf();
    state.a11y_xml = buffer.str();
    std::filesystem::remove(local);
    state.a11y = ParseA11yXml(state.a11y_xml, state.width, state.height);
  } catch (const DeviceError& e) {
    if (e.kind() == DeviceError::Kind::kUnreachable) throw;
    state.a11y_warning = std::string("a11y dump failed: ") + e.what();
  } catch (const A11yParseError& e) {
    state.a11y_warning = e.what();
  }
  if (state.a11y_warning) spdlog::warn("{}: {}", Describe(), *state.a11y_warning);
  return state;
}

void AdbDevice::Perform(const Action& action) {
  using namespace action;
  if (const auto* a = std::get_if<Click>(&action)) {
    Shell({"input", "tap", std::to_string(a->x), std::to_string(a->y)});
  } else if (const auto* a = std::get_if<Swipe>(&action)) {
    Shell({"input", "swipe", std::to_string(a->x1), std::to_string(a->y1), std::to_string(a->x2),
           std::to_string(a->y2), std::to_string(options_.swipe_ms)});
  } else if (const auto* a = std::get_if<Type>(&action)) {
    if (IsAscii(a->text)) {
      Shell({"input", "text", EscapeInputText(a->text)});
    } else if (options_.unicode_keyboard) {
      Shell({"am", "broadcast", "-a", "ADB_INPUT_TEXT", "--es", "msg", ShellSingleQuote(a->text)});
    } else {
      throw DeviceError(DeviceError::Kind::kUnicodeUnsupported,
                        "non-ASCII text needs the unicode keyboard (ADBKeyboard) on " + Describe());
    }
  } else if (std::holds_alternative<Back>(action)) {
    Shell({"input", "keyevent", "4"});
  } else if (std::holds_alternative<Enter>(action)) {
    Shell({"input", "keyevent", "66"});
  } else if (std::holds_alternative<Wait>(action)) {
    std::this_thread::sleep_for(std::chrono::duration<double>(options_.wait_seconds));
  } else {
    throw ContractError("Complete is not a device action");
  }
}

void AdbDevice::Reset(std::string_view app_id) {
  auto it = packages_.find(std::string(app_id));
  if (it == packages_.end())
    throw DeviceError(DeviceError::Kind::kUnknownApp, "unknown app '" + std::string(app_id) + "'");
  // In-app histories are not cleared here; that remains a manual step.
  Shell({"am", "force-stop", it->second});
  const CommandResult launch =
      Adb({"shell", "monkey", "-p", it->second, "-c", "android.intent.category.LAUNCHER", "1"}, false);
  if (launch.exit_code != 0 || launch.out.find("No activities found") != std::string::npos ||
      launch.out.find("monkey aborted") != std::string::npos) {
    if (LooksDisconnected(launch))
      throw DeviceError(DeviceError::Kind::kUnreachable, "device '" + serial_ + "' unreachable");
    throw DeviceError(DeviceError::Kind::kLaunchFailed, "cannot launch " + it->second + ": " + launch.out + launch.err);
  }
}

}  // namespace probench
