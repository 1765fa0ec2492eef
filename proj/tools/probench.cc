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

// probench: command line front end for the evaluation harness.

#include <spdlog/spdlog.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "probench/adb_device.h"
#include "probench/agent_gateway.h"
#include "probench/error.h"
#include "probench/executor.h"
#include "probench/mock_device.h"
#include "probench/pipeline.h"
#include "probench/review_server.h"
#include "probench/task_model.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

probench::EndpointConfig LoadEndpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw probench::ValidationError(path.string(), "", "cannot open model config");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw probench::ValidationError(path.string(), "", e.what());
  }
  return probench::EndpointConfig::FromJson(doc, path.parent_path());
}

std::unique_ptr<probench::Device> OpenDevice(const std::string& spec, const probench::TaskSuite& suite,
                                             const probench::AdbOptions& adb) {
  if (spec.rfind("mock:", 0) == 0) {
    return std::make_unique<probench::MockDevice>(probench::MockDevice::Open(spec.substr(5)));
  }
  std::map<std::string, std::string> packages;
  for (const auto& app : suite.registry()) packages.emplace(app.app_id, app.package_name);
  return std::make_unique<probench::AdbDevice>(spec, std::move(packages), adb, probench::MakeProcessRunner());
}

probench::ProviderKind ProviderFromFlag(const std::string& flag) {
  auto kind = probench::ParseProviderKind(flag);
  if (!kind) throw probench::ValidationError("--provider", "", "expected sdc or mllm");
  return *kind;
}

probench::EarlyStopConvention ConventionFromFlag(const std::string& flag) {
  auto c = probench::ParseEarlyStopConvention(flag);
  if (!c) throw probench::ValidationError("--early-stop-as", "", "expected uncompleted or failure");
  return *c;
}

probench::ReviewServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ProBench: evaluation harness for mobile GUI agents"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error")->capture_default_str();

  // tasks validate
  auto* tasks = app.add_subcommand("tasks", "Task suite utilities");
  tasks->require_subcommand(1);
  auto* validate = tasks->add_subcommand("validate", "Validate a task suite file and print partition counts");
  std::string validate_path;
  validate->add_option("suite", validate_path, "Suite JSON file")->required()->check(CLI::ExistingFile);

  // run
  auto* run = app.add_subcommand("run", "Execute a task suite with an agent on a device");
  std::string suite_path, agent_path, device_spec, out_dir, run_id, summarizer_path, adb_path = "adb";
  std::vector<std::string> task_filter;
  int max_steps = 0;
  bool adb_keyboard = false;
  run->add_option("--suite", suite_path, "Suite JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--agent", agent_path, "Agent config JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--device", device_spec, "ADB serial, or mock:DIR for fixture apps")->required();
  run->add_option("--out", out_dir, "Directory that receives <run_id>/")->required();
  run->add_option("--max-steps", max_steps, "Override every task's step budget")->check(CLI::PositiveNumber);
  run->add_option("--run-id", run_id, "Run id (default: UTC timestamp)");
  run->add_option("--task", task_filter, "Only run these task ids");
  run->add_option("--summarizer", summarizer_path, "Model config used for clicks without an a11y dump")
      ->check(CLI::ExistingFile);
  run->add_option("--adb", adb_path, "adb executable")->capture_default_str();
  run->add_flag("--adb-keyboard", adb_keyboard, "Device has ADB Keyboard for non-ASCII input");

  // process
  auto* process = app.add_subcommand("process", "Rebuild process descriptions for a run");
  std::string process_run, provider_flag = "sdc", mllm_path;
  process->add_option("--run", process_run, "Run directory")->required()->check(CLI::ExistingDirectory);
  process->add_option("--provider", provider_flag, "sdc or mllm")->capture_default_str();
  process->add_option("--mllm", mllm_path, "Summarizer model config")->check(CLI::ExistingFile);

  // eval
  auto* eval = app.add_subcommand("eval", "Judge completed tasks and record outcomes");
  std::string eval_run, judger_path, eval_provider = "sdc", eval_convention = "uncompleted";
  eval->add_option("--run", eval_run, "Run directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--judger", judger_path, "Judger model config")->required()->check(CLI::ExistingFile);
  eval->add_option("--provider", eval_provider, "Process provider for process-related tasks")
      ->capture_default_str();
  eval->add_option("--early-stop-as", eval_convention, "uncompleted or failure")->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "Aggregate metrics and write report files");
  std::string report_run, report_out, report_convention;
  report->add_option("--run", report_run, "Run directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", report_out, "Output directory")->required();
  report->add_option("--early-stop-as", report_convention, "Override the convention used at eval time");

  // serve
  auto* serve = app.add_subcommand("serve", "Serve run artifacts over HTTP for review");
  std::string serve_run, host = "127.0.0.1";
  int port = 8642;
  serve->add_option("--run", serve_run, "Run directory or a directory of runs")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");

  try {
    if (validate->parsed()) {
      const probench::TaskSuite suite = probench::LoadTaskSuite(validate_path);
      const auto counts = suite.Counts();
      std::cout << suite.name() << " " << suite.version() << ": " << counts.Total() << " tasks\n";
      for (auto l : {probench::Language::kEnglish, probench::Language::kChinese})
        for (auto t : {probench::TaskType::kStateRelated, probench::TaskType::kProcessRelated})
          std::cout << "  " << probench::ToString(l) << " " << probench::ToString(t) << ": " << counts.Count(l, t)
                    << "\n";
      return 0;
    }

    if (run->parsed()) {
      const probench::TaskSuite suite = probench::LoadTaskSuite(suite_path);
      probench::AgentGateway agent(probench::AgentConfig::Load(agent_path));
      probench::AdbOptions adb;
      adb.adb_path = adb_path;
      adb.unicode_keyboard = adb_keyboard;
      auto device = OpenDevice(device_spec, suite, adb);

      std::unique_ptr<probench::ModelClient> summarizer;
      probench::ProviderConfig provider;
      if (!summarizer_path.empty()) {
        const auto cfg = LoadEndpoint(summarizer_path);
        summarizer = probench::MakeModelClient(cfg);
        provider.summarizer = summarizer.get();
        provider.summarizer_retries = cfg.max_retries;
      }
      probench::SuiteRunOptions options;
      options.run_id = run_id;
      options.task_filter = task_filter;
      if (max_steps > 0) options.task_options.max_steps = max_steps;
      const fs::path dir = probench::RunSuite(suite, agent, *device, provider, out_dir, options);
      std::cout << dir.string() << "\n";
      return 0;
    }

    if (process->parsed()) {
      const auto run_info = probench::OpenRun(process_run);
      const auto kind = ProviderFromFlag(provider_flag);
      std::unique_ptr<probench::ModelClient> summarizer;
      int retries = 2;
      if (!mllm_path.empty()) {
        const auto cfg = LoadEndpoint(mllm_path);
        summarizer = probench::MakeModelClient(cfg);
        retries = cfg.max_retries;
      }
      const int n = probench::ProcessRun(run_info, kind, summarizer.get(), retries);
      std::cout << n << " descriptions written (" << provider_flag << ")\n";
      return 0;
    }

    if (eval->parsed()) {
      const auto run_info = probench::OpenRun(eval_run);
      auto judger = probench::MakeModelClient(LoadEndpoint(judger_path));
      probench::EvalOptions options;
      options.provider = ProviderFromFlag(eval_provider);
      options.convention = ConventionFromFlag(eval_convention);
      const auto outcomes = probench::EvaluateRun(run_info, *judger, options);
      for (const auto& [task_id, o] : outcomes)
        std::cout << task_id << "\t" << (o.cls ? probench::ToString(*o.cls) : "eval_error")
                  << (o.early_stop ? "\tearly_stop" : "") << "\n";
      return 0;
    }

    if (report->parsed()) {
      const auto run_info = probench::OpenRun(report_run);
      std::optional<probench::EarlyStopConvention> convention;
      if (!report_convention.empty()) convention = ConventionFromFlag(report_convention);
      const auto input = probench::BuildReport(run_info, convention);
      probench::WriteReport(input, report_out);
      const auto& m = input.metrics;
      std::cout << "overall " << m.overall.Render() << " (" << m.overall.num << "/" << m.overall.den << "), "
                << "report in " << report_out << "\n";
      return 0;
    }

    if (serve->parsed()) {
      probench::ReviewServer server(serve_run);
      const int bound = server.Bind(host, port);
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cout << "serving " << serve_run << " on http://" << host << ":" << bound << "\n" << std::flush;
      server.Serve();
      g_server = nullptr;
      return 0;
    }
  } catch (const probench::ValidationError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
