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

// Python bindings. Structured values cross the boundary as plain dicts and
// lists that mirror the JSON files the harness writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>

#include "probench/a11y.h"
#include "probench/action.h"
#include "probench/action_grammar.h"
#include "probench/agent_gateway.h"
#include "probench/coordinates.h"
#include "probench/error.h"
#include "probench/evaluator.h"
#include "probench/executor.h"
#include "probench/metrics.h"
#include "probench/mock_device.h"
#include "probench/pipeline.h"
#include "probench/process_provider.h"
#include "probench/task_model.h"

namespace py = pybind11;
namespace fs = std::filesystem;
using nlohmann::json;

namespace probench {
namespace {

py::object ToPy(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

json FromPy(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

template <typename T, typename Parse>
T Enum(const std::string& text, Parse parse, const char* what) {
  const auto v = parse(text);
  if (!v) throw ValidationError(what, "", "unknown value '" + text + "'");
  return *v;
}

CoordinateMode Mode(const std::string& s) { return Enum<CoordinateMode>(s, ParseCoordinateMode, "coordinate_mode"); }
EarlyStopConvention Convention(const std::string& s) {
  return Enum<EarlyStopConvention>(s, ParseEarlyStopConvention, "early_stop_as");
}
ProviderKind Provider(const std::string& s) { return Enum<ProviderKind>(s, ParseProviderKind, "provider"); }

EndpointConfig LoadEndpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string(), "", "cannot open model config");
  return EndpointConfig::FromJson(json::parse(in), path.parent_path());
}

py::object ParseActionPy(const std::string& raw, const std::string& dialect, const std::string& mode, int width,
                         int height) {
  const ParseResult r = ParseAction(raw, Enum<Dialect>(dialect, ParseDialect, "dialect"), {Mode(mode), {width, height}});
  if (const Action* a = GetAction(r)) return ToPy({{"action", ActionToJson(*a)}});
  return ToPy({{"error", GetParseError(r)->ToJson()}});
}

py::dict Stitch(const fs::path& before, const fs::path& after, int x, int y, const fs::path& out) {
  const StitchedImage s = StitchScreens(ReadPng(before), ReadPng(after), {x, y});
  WritePng(s.composite, out);
  py::dict d;
  d["width"] = s.composite.width();
  d["height"] = s.composite.height();
  d["divider_x"] = s.divider_x;
  d["after_x"] = s.after_x;
  return d;
}

std::vector<Outcome> OutcomesFromPy(const py::list& items) {
  std::vector<Outcome> out;
  for (const auto& item : items) out.push_back(Outcome::FromJson(FromPy(item)));
  return out;
}

py::object AggregatePy(const py::list& rows, const std::vector<std::string>& categories) {
  std::vector<OutcomeRow> parsed;
  for (const auto& item : rows) {
    const json doc = FromPy(item);
    OutcomeRow r;
    r.task_id = doc.at("task_id").get<std::string>();
    r.language = Enum<Language>(doc.at("language").get<std::string>(), ParseLanguage, "language");
    r.task_type = Enum<TaskType>(doc.at("type").get<std::string>(), ParseTaskType, "type");
    r.category = doc.value("category", "");
    r.outcome = Outcome::FromJson(doc.at("outcome"));
    parsed.push_back(r);
  }
  ReportInput in;
  in.metrics = AggregateRows(parsed, categories);
  return ToPy(MetricsToJson(in));
}

py::object AgreementPy(const py::dict& automatic, const py::list& verdicts, const std::string& convention) {
  std::map<std::string, Outcome> outcomes;
  for (const auto& [k, v] : automatic) outcomes[k.cast<std::string>()] = Outcome::FromJson(FromPy(v));
  std::vector<HumanVerdict> log;
  for (const auto& item : verdicts) log.push_back(HumanVerdict::FromJson(FromPy(item)));
  return ToPy(Agreement(outcomes, log, Convention(convention)).ToJson());
}

std::string RunSuitePy(const fs::path& suite_path, const fs::path& agent_path, const std::string& device_spec,
                       const fs::path& out, const std::string& run_id, std::optional<int> max_steps) {
  if (device_spec.rfind("mock:", 0) != 0)
    throw ValidationError("device", "", "the Python module drives mock devices only; use the CLI for adb");
  const TaskSuite suite = LoadTaskSuite(suite_path);
  AgentGateway agent(AgentConfig::Load(agent_path));
  MockDevice device = MockDevice::Open(device_spec.substr(5));
  SuiteRunOptions options;
  options.run_id = run_id;
  options.task_options.max_steps = max_steps;
  py::gil_scoped_release release;
  return RunSuite(suite, agent, device, {}, out, options).string();
}

int ProcessRunPy(const fs::path& run_dir, const std::string& provider, std::optional<fs::path> mllm) {
  std::unique_ptr<ModelClient> summarizer;
  int retries = 2;
  if (mllm) {
    const EndpointConfig cfg = LoadEndpoint(*mllm);
    summarizer = MakeModelClient(cfg);
    retries = cfg.max_retries;
  }
  py::gil_scoped_release release;
  return ProcessRun(OpenRun(run_dir), Provider(provider), summarizer.get(), retries);
}

py::object EvaluateRunPy(const fs::path& run_dir, const fs::path& judger, const std::string& provider,
                         const std::string& convention) {
  auto client = MakeModelClient(LoadEndpoint(judger));
  EvalOptions options;
  options.provider = Provider(provider);
  options.convention = Convention(convention);
  std::map<std::string, Outcome> outcomes;
  {
    py::gil_scoped_release release;
    outcomes = EvaluateRun(OpenRun(run_dir), *client, options);
  }
  json doc = json::object();
  for (const auto& [id, o] : outcomes) doc[id] = o.ToJson();
  return ToPy(doc);
}

py::object ReportPy(const fs::path& run_dir, std::optional<fs::path> out, std::optional<std::string> convention) {
  std::optional<EarlyStopConvention> c;
  if (convention) c = Convention(*convention);
  const ReportInput in = BuildReport(OpenRun(run_dir), c);
  if (out) WriteReport(in, *out);
  return ToPy(MetricsToJson(in));
}

}  // namespace
}  // namespace probench

PYBIND11_MODULE(_probench, m) {
  using namespace probench;
  m.doc() = "ProBench evaluation harness";

  static py::exception<Error> error(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<TransportError>(m, "TransportError", error.ptr());
  py::register_exception<DeviceError>(m, "DeviceError", error.ptr());
  py::register_exception<EvalError>(m, "EvalError", error.ptr());
  py::register_exception<ContractError>(m, "ContractError", error.ptr());

  m.def("parse_action", &ParseActionPy, py::arg("raw"), py::arg("dialect") = "plain_call",
        py::arg("coordinate_mode") = "pixel", py::arg("width") = 1080, py::arg("height") = 2400,
        "Parse one model response. Returns {'action': ...} or {'error': ...}.");
  m.def(
      "canonical",
      [](const py::object& action) { return CanonicalString(ActionFromJson(FromPy(action))); },
      py::arg("action"));
  m.def(
      "rescale_point",
      [](int x, int y, const std::string& mode, int width, int height) {
        const Point p = RescalePoint({x, y}, Mode(mode), {width, height});
        return std::make_pair(p.x, p.y);
      },
      py::arg("x"), py::arg("y"), py::arg("coordinate_mode"), py::arg("width"), py::arg("height"));
  m.def(
      "describe_click",
      [](const std::string& xml, int width, int height, int x, int y) {
        const A11yDocument doc = ParseA11yXml(xml, width, height);
        return ConvertClickDescription(&doc, action::Click{x, y}, 0)->text;
      },
      py::arg("xml"), py::arg("width"), py::arg("height"), py::arg("x"), py::arg("y"));
  m.def("stitch", &Stitch, py::arg("before"), py::arg("after"), py::arg("x"), py::arg("y"), py::arg("out"));
  m.def(
      "early_stop",
      [](const py::list& actions) {
        std::vector<Action> history;
        for (const auto& a : actions) history.push_back(ActionFromJson(FromPy(a)));
        return CheckEarlyStop(history);
      },
      py::arg("actions"));

  m.def(
      "suite_counts",
      [](const fs::path& path) {
        const TaskSuite suite = LoadTaskSuite(path);
        json counts = {{"name", suite.name()}, {"total", suite.Counts().Total()}};
        for (auto l : {Language::kEnglish, Language::kChinese})
          for (auto t : {TaskType::kStateRelated, TaskType::kProcessRelated})
            counts[std::string(ToString(l))][std::string(ToString(t))] = suite.Counts().Count(l, t);
        return ToPy(counts);
      },
      py::arg("path"));
  m.def(
      "determine_outcome",
      [](const std::string& termination, std::optional<bool> verdict, const std::string& convention) {
        const auto t = ParseTermination(termination);
        if (!t) throw ValidationError("termination", "", "unknown value '" + termination + "'");
        return ToPy(DetermineOutcome(*t, verdict, Convention(convention)).ToJson());
      },
      py::arg("termination"), py::arg("verdict") = std::nullopt, py::arg("convention") = "uncompleted");
  m.def("aggregate", &AggregatePy, py::arg("rows"), py::arg("categories") = std::vector<std::string>{});
  m.def(
      "failure_breakdown",
      [](const py::list& outcomes) {
        const FailureStats s = FailureBreakdown(OutcomesFromPy(outcomes));
        return ToPy({{"uncompleted_ratio", s.uncompleted.ToJson()}, {"early_stop_ratio", s.early_stop.ToJson()}});
      },
      py::arg("outcomes"));
  m.def("agreement", &AgreementPy, py::arg("automatic"), py::arg("verdicts"), py::arg("convention") = "uncompleted");

  m.def("run_suite", &RunSuitePy, py::arg("suite"), py::arg("agent"), py::arg("device"), py::arg("out"),
        py::arg("run_id") = "", py::arg("max_steps") = std::nullopt);
  m.def("process_run", &ProcessRunPy, py::arg("run"), py::arg("provider") = "sdc", py::arg("mllm") = std::nullopt);
  m.def("evaluate_run", &EvaluateRunPy, py::arg("run"), py::arg("judger"), py::arg("provider") = "sdc",
        py::arg("convention") = "uncompleted");
  m.def("report", &ReportPy, py::arg("run"), py::arg("out") = std::nullopt, py::arg("convention") = std::nullopt);
  m.def(
      "validate_task_dir", [](const fs::path& dir) { return ValidateTaskDir(dir); }, py::arg("task_dir"));
}
