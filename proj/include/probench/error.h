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

#ifndef PROBENCH_ERROR_H_
#define PROBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace probench {

// Root of every exception thrown by the harness.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Suite files, agent/judger configs and other structured inputs.
class ValidationError : public Error {
 public:
  ValidationError(std::string subject, std::string field, const std::string& what)
      : Error(Compose(subject, field, what)), subject_(std::move(subject)), field_(std::move(field)) {}

  const std::string& subject() const { return subject_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Compose(const std::string& subject, const std::string& field,
                             const std::string& what) {
    std::string out;
    if (!subject.empty()) out += subject;
    if (!field.empty()) out += (out.empty() ? "" : ".") + field;
    if (!out.empty()) out += ": ";
    return out + what;
  }

  std::string subject_;
  std::string field_;
};

class DeviceError : public Error {
 public:
  enum class Kind {
    kUnreachable,
    kCommandFailed,
    kUnicodeUnsupported,
    kUnknownApp,
    kLaunchFailed,
    kUnsupportedAction,
    kFixture,
  };

  DeviceError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Raised by model endpoints once the retry budget is spent.
class TransportError : public Error {
 public:
  enum class Kind { kTimeout, kTransport, kStatus };

  TransportError(Kind kind, int attempts, const std::string& what)
      : Error(what), kind_(kind), attempts_(attempts) {}
  Kind kind() const { return kind_; }
  int attempts() const { return attempts_; }

 private:
  Kind kind_;
  int attempts_;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class SummarizerParseError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace probench

#endif  // PROBENCH_ERROR_H_
