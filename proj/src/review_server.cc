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

#include "probench/review_server.h"

#include <spdlog/spdlog.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "probench/error.h"
#include "probench/pipeline.h"

namespace probench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class HttpError : public Error {
 public:
  HttpError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

void SendJson(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2), "application/json");
}

std::string NowUtc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

json OutcomeField(const json& result, const char* key) { return result.contains(key) ? result.at(key) : json(nullptr); }

}  // namespace

ReviewServer::ReviewServer(fs::path root, std::optional<EarlyStopConvention> convention)
    : root_(std::move(root)), convention_(convention), server_(std::make_unique<httplib::Server>()) {
  Route();
}

ReviewServer::~ReviewServer() { Stop(); }

std::map<std::string, fs::path> ReviewServer::Runs() const {
  std::map<std::string, fs::path> runs;
  auto add = [&](const fs::path& dir) {
    try {
      runs.emplace(ReadJsonFile(dir / "run.json").value("run_id", dir.filename().string()), dir);
    } catch (const Error& e) {
      spdlog::warn("skipping {}: {}", dir.string(), e.what());
    }
  };
  if (IsRunDir(root_)) {
    add(root_);
  } else if (fs::is_directory(root_)) {
    for (const auto& entry : fs::directory_iterator(root_))
      if (entry.is_directory() && IsRunDir(entry.path())) add(entry.path());
  }
  return runs;
}

std::mutex& ReviewServer::RunLock(const std::string& run_id) {
  std::lock_guard<std::mutex> lock(locks_mu_);
  auto& slot = run_locks_[run_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void ReviewServer::Route() {
  auto open_run = [this](const std::string& run_id) {
    const auto runs = Runs();
    auto it = runs.find(run_id);
    if (it == runs.end()) throw HttpError(404, "unknown run '" + run_id + "'");
    return OpenRun(it->second);
  };
  auto task_dir = [](const RunInfo& run, const std::string& task_id) {
    if (!run.suite.FindTask(task_id) || !fs::is_regular_file(run.TaskDir(task_id) / "result.json"))
      throw HttpError(404, "unknown task '" + task_id + "' in run '" + run.run_id + "'");
    return run.TaskDir(task_id);
  };
  auto convention = [this](const RunInfo& run) { return convention_.value_or(RunConvention(run)); };
  auto agreement_body = [convention](const RunInfo& run) {
    const EarlyStopConvention c = convention(run);
    const auto by_provider = RunAgreement(run, c);
    const AgreementResult& primary = by_provider.at("default");
    json providers = json::object();
    for (const auto& [name, a] : by_provider)
      if (name != "default") providers[name] = a.ToJson();
    return json{{"run_id", run.run_id},
                {"early_stop_convention", ToString(c)},
                {"agreement", primary.overall.Render()},
                {"n", primary.overall.den},
                {"matches", primary.overall.num},
                {"per_annotator", primary.ToJson().at("per_annotator")},
                {"skipped", primary.skipped},
                {"providers", providers}};
  };

  server_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const HttpError& e) {
      SendJson(res, {{"error", e.what()}}, e.status());
    } catch (const ValidationError& e) {
      SendJson(res, {{"error", e.what()}}, 400);
    } catch (const std::exception& e) {
      spdlog::error("review server: {}", e.what());
      SendJson(res, {{"error", e.what()}}, 500);
    }
  });

  server_->Get("/runs", [this](const httplib::Request&, httplib::Response& res) {
    json runs = json::array();
    for (const auto& [run_id, dir] : Runs()) {
      const RunInfo run = OpenRun(dir);
      runs.push_back({{"run_id", run_id},
                      {"suite", run.meta.value("suite", "")},
                      {"agent", run.meta.value("agent", "")},
                      {"started_at", run.meta.value("started_at", "")},
                      {"tasks", ListTasks(run).size()}});
    }
    SendJson(res, {{"runs", runs}});
  });

  server_->Get(R"(/runs/([^/]+)/tasks)", [open_run](const httplib::Request& req, httplib::Response& res) {
    const RunInfo run = open_run(req.matches[1]);
    json tasks = json::array();
    for (const std::string& task_id : ListTasks(run)) {
      const Task& task = *run.suite.FindTask(task_id);
      const json result = ReadJsonFile(run.TaskDir(task_id) / "result.json");
      tasks.push_back({{"task_id", task_id},
                       {"app", task.app_id},
                       {"instruction", task.instruction},
                       {"language", ToString(task.language)},
                       {"task_type", ToString(task.task_type)},
                       {"termination", result.value("termination", "")},
                       {"steps", result.value("steps", 0)},
                       {"outcome", OutcomeField(result, "outcome")},
                       {"early_stop", result.value("early_stop", false)},
                       {"eval_error", OutcomeField(result, "eval_error")}});
    }
    SendJson(res, {{"run_id", run.run_id}, {"tasks", tasks}});
  });

  server_->Get(R"(/runs/([^/]+)/tasks/([^/]+)/trajectory)",
               [open_run, task_dir](const httplib::Request& req, httplib::Response& res) {
                 const RunInfo run = open_run(req.matches[1]);
                 const std::string task_id = req.matches[2];
                 const fs::path dir = task_dir(run, task_id);
                 const Trajectory traj = LoadTrajectory(dir);
                 const json result = ReadJsonFile(dir / "result.json");
                 const std::string base = "/runs/" + run.run_id + "/tasks/" + task_id + "/steps/";
                 json steps = json::array();
                 for (const StepRecord& s : traj.steps) {
                   json step = s.ToJson();
                   step["canonical"] = s.action ? json(CanonicalString(*s.action)) : json(nullptr);
                   step["image_url"] = base + std::to_string(s.index) + "/image";
                   steps.push_back(step);
                 }
                 const Task& task = *run.suite.FindTask(task_id);
                 SendJson(res, {{"run_id", run.run_id},
                                {"task_id", task_id},
                                {"instruction", task.instruction},
                                {"task_type", ToString(task.task_type)},
                                {"termination", ToString(traj.termination)},
                                {"final_image_url", base + "final/image"},
                                {"outcome", OutcomeField(result, "outcome")},
                                {"verdict", OutcomeField(result, "verdict")},
                                {"rationale", result.value("rationale", "")},
                                {"steps", steps}});
               });

  server_->Get(R"(/runs/([^/]+)/tasks/([^/]+)/steps/(\d+|final)/image)",
               [open_run, task_dir](const httplib::Request& req, httplib::Response& res) {
                 const RunInfo run = open_run(req.matches[1]);
                 const fs::path dir = task_dir(run, req.matches[2]);
                 const std::string which = req.matches[3];
                 fs::path file;
                 if (which == "final") {
                   file = dir / "final.png";
                 } else {
                   file = dir / StepFile(std::stoi(which), "png");
                 }
                 std::ifstream in(file, std::ios::binary);
                 if (!in) throw HttpError(404, "no image for step " + which);
                 std::stringstream buffer;
                 buffer << in.rdbuf();
                 res.set_content(buffer.str(), "image/png");
               });

  server_->Post(R"(/runs/([^/]+)/tasks/([^/]+)/verdict)", [this, open_run, task_dir, agreement_body](
                                                             const httplib::Request& req, httplib::Response& res) {
    const RunInfo run = open_run(req.matches[1]);
    const std::string task_id = req.matches[2];
    task_dir(run, task_id);
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error&) {
      throw HttpError(400, "verdict body must be JSON");
    }
    if (!body.is_object() || !body.contains("label") || !body.at("label").is_string())
      throw HttpError(400, "verdict needs a string 'label'");
    const auto label = ParseOutcomeClass(body.at("label").get<std::string>());
    if (!label) throw HttpError(400, "label must be Success, Failure or Uncompleted");

    HumanVerdict verdict;
    verdict.run_id = run.run_id;
    verdict.task_id = task_id;
    verdict.label = *label;
    verdict.annotator = body.value("annotator", "anonymous");
    verdict.timestamp = NowUtc();
    json agreement;
    {
      std::lock_guard<std::mutex> lock(RunLock(run.run_id));
      AppendVerdict(run, verdict);
      agreement = agreement_body(run);
    }
    SendJson(res, {{"verdict", verdict.ToJson()}, {"agreement", agreement}}, 201);
  });

  server_->Get(R"(/runs/([^/]+)/agreement)",
               [this, open_run, agreement_body](const httplib::Request& req, httplib::Response& res) {
                 const RunInfo run = open_run(req.matches[1]);
                 std::lock_guard<std::mutex> lock(RunLock(run.run_id));
                 SendJson(res, agreement_body(run));
               });
}

int ReviewServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind review server on " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port))
    throw IoError("cannot bind review server on " + host + ":" + std::to_string(port));
  return port;
}

void ReviewServer::Serve() { server_->listen_after_bind(); }

void ReviewServer::Stop() {
  if (server_) server_->stop();
}

}  // namespace probench
