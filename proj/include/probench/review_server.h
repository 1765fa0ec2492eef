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

#ifndef PROBENCH_REVIEW_SERVER_H_
#define PROBENCH_REVIEW_SERVER_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "probench/evaluator.h"

namespace httplib {
class Server;
}

namespace probench {

// JSON API over one run directory or a directory of runs:
//
//   GET  /runs
//   GET  /runs/{id}/tasks
//   GET  /runs/{id}/tasks/{tid}/trajectory
//   GET  /runs/{id}/tasks/{tid}/steps/{n}/image     (n may be "final")
//   POST /runs/{id}/tasks/{tid}/verdict             {"label", "annotator"}
//   GET  /runs/{id}/agreement
//
// Verdicts are appended to <run>/verdicts.jsonl under a per-run lock; a
// later verdict from the same annotator replaces the earlier one.
class ReviewServer {
 public:
  explicit ReviewServer(std::filesystem::path root,
                        std::optional<EarlyStopConvention> convention = std::nullopt);
  ~ReviewServer();

  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Binds to `port` (0 picks a free one) and returns the bound port.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind().
  void Serve();
  void Stop();

  // Run directories currently visible, keyed by run id.
  std::map<std::string, std::filesystem::path> Runs() const;

 private:
  void Route();
  std::mutex& RunLock(const std::string& run_id);

  std::filesystem::path root_;
  std::optional<EarlyStopConvention> convention_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> run_locks_;
};

}  // namespace probench

#endif  // PROBENCH_REVIEW_SERVER_H_
