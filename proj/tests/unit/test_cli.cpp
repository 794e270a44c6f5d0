// Copyright 2026 The weaksym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

using namespace weaksym;
using namespace weaksym::cli;
namespace fs = std::filesystem;

namespace {

fs::path config_dir() { return fs::path(WEAKSYM_SOURCE_DIR) / "configs"; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("weaksym_cli_tests") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int invoke(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "weaksym");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text != nullptr) *err_text = err.str();
  return code;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> issue_paths(const std::string& text, std::optional<Task> task = {}) {
  try {
    parse_config_text(text, task);
  } catch (const ConfigError& e) {
    std::vector<std::string> out;
    for (const auto& [path, msg] : e.issues()) out.push_back(path);
    return out;
  }
  return {};
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal amplitude-damping config parses") {
  const auto cfg = parse_config_text(R"({"model": {"builder": "amplitude_damping"}})", Task::Repify);
  CHECK(cfg.task == Task::Repify);
  CHECK(cfg.model.rep.dim() == 2);
  CHECK(cfg.representation == RepresentationChoice::Original);
  CHECK(cfg.model.builtin_symmetries.count("parity") == 1);
  const auto sym = parse_config_text(
      R"({"task": "repify", "model": {"builder": "amplitude_damping", "params": {"gamma": 2}}, "symmetry": [{"builtin": "parity"}]})");
  CHECK(sym.representation == RepresentationChoice::Minimal);
  CHECK(std::abs(sym.model.rep.jumps[0](0, 1) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("missing seed is reported at simulation.seed") {
  const std::string text = R"({"task": "trajectories",
    "model": {"builder": "amplitude_damping"},
    "simulation": {"t_final": 1, "times": [0, 1], "n_traj": 10, "initial_state": {"basis": 1}}})";
  CHECK(issue_paths(text) == std::vector<std::string>{"simulation.seed"});
  CHECK_NOTHROW(parse_config_json(Json::parse(text), std::nullopt, 5));
}

TEST_CASE("non-Hermitian explicit Hamiltonian is a schema error") {
  const auto paths = issue_paths(R"({"model": {"builder": "explicit", "hamiltonian": [[0, 1], [0, 0]]}})", Task::Repify);
  CHECK(paths == std::vector<std::string>{"model.hamiltonian"});
}

TEST_CASE("all schema errors are collected") {
  const auto paths = issue_paths(R"({"task": "compare", "colour": 1,
    "model": {"builder": "chain", "params": {"n_sites": 0, "local_jumps": [{"op": "Q"}]}},
    "symmetry": [{"kind": "unitary", "op": [[1, 0], [0, 2]]}],
    "simulation": {"times": [1, 0], "n_traj": 0, "initial_state": {"basis": 9}},
    "output": {"formats": ["pdf"]}})");
  CHECK(contains(paths, "colour"));
  CHECK(contains(paths, "model.params.n_sites"));
  CHECK(contains(paths, "model.params.local_jumps[0].op"));
  CHECK(contains(paths, "symmetry[0].op"));
  CHECK(contains(paths, "simulation.times"));
  CHECK(contains(paths, "simulation.n_traj"));
  CHECK(contains(paths, "simulation.seed"));
  CHECK(contains(paths, "simulation.t_final"));
  CHECK(contains(paths, "simulation.observables"));
  CHECK(contains(paths, "output.formats"));
  CHECK(paths.size() >= 10);

  CHECK(issue_paths("{not json", Task::Inspect) == std::vector<std::string>{"$"});
  CHECK(issue_paths(R"({"model": {"builder": "amplitude_damping"}})") == std::vector<std::string>{"task"});
  CHECK(contains(issue_paths(R"({"task": "inspect", "symmetry": [{"builtin": "translation"}]})"), "symmetry[0].builtin"));
  CHECK(contains(issue_paths(R"({"task": "repify", "model": {"builder": "spin", "params": {"n_spins": 13}}})"),
                 "model.params"));
}

TEST_CASE("operator expressions") {
  CHECK((*pauli_string("Z") - ops::sigma_z()).norm() == 0.0);
  CHECK((*pauli_string("XI") - kron(ops::sigma_x(), identity(2))).norm() == 0.0);
  CHECK((*pauli_string("-") - ops::sigma_minus()).norm() == 0.0);
  CHECK(!pauli_string("ZQ"));
  CHECK(!pauli_string(""));
  const auto cfg = parse_config_text(R"({"task": "trajectories",
    "model": {"builder": "explicit", "hamiltonian": {"sum": [{"op": "ZI", "coeff": 0.5}, {"op": "IZ", "coeff": [0.25, 0]}]},
              "jumps": ["-I", [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, [0, 1], 0]]]},
    "simulation": {"t_final": 1, "n_times": 3, "n_traj": 2, "seed": 1, "initial_state": {"vector": [1, [0, 1], 0, 0]},
                   "observables": [{"name": "zz", "op": "ZZ"}]}})");
  const Matrix h = 0.5 * kron(ops::sigma_z(), identity(2)) + 0.25 * kron(identity(2), ops::sigma_z());
  CHECK((cfg.model.rep.hamiltonian - h).norm() < 1e-15);
  CHECK(cfg.model.rep.jumps[1](3, 2) == Complex(0.0, 1.0));
  CHECK(cfg.simulation.times == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(std::abs(cfg.simulation.initial_state->norm() - 1.0) < 1e-15);
  CHECK(cfg.simulation.initial_state->coeff(1) == Complex(0.0, 1.0 / std::sqrt(2.0)));
}

TEST_CASE("matrices round-trip through JSON at full precision") {
  const Matrix m = (Matrix(2, 3) << Complex(0.1, -1.0 / 3.0), Complex(1e-300, 2.5), Complex(M_PI, 0.0),
                    Complex(-0.0, 7e22), Complex(1.0 / 7.0, std::sqrt(2.0)), Complex(-123.456, 1e-17))
                       .finished();
  Issues issues;
  const auto back = parse_matrix(Json::parse(to_json(m).dump()), "m", issues);
  REQUIRE(back);
  CHECK(issues.empty());
  CHECK((*back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inspect on a two-qubit swap") {
  const auto out = scratch("inspect");
  CHECK(invoke({"inspect", "--config", (config_dir() / "swap_inspect.json").string(), "--out", out.string()}) == 0);
  const Json r = read_json(out / "inspect.json");
  CHECK(r["status"] == "ok");
  const Json& dec = r["decomposition"];
  REQUIRE(dec["sectors"].size() == 2);
  CHECK(dec["sectors"][0]["dim"] == 3);
  CHECK(dec["sectors"][1]["dim"] == 1);
  CHECK(dec["super_shifts"].size() == 2);
}

TEST_CASE("broken symmetry declaration fails certification") {
  const auto out = scratch("broken");
  CHECK(invoke({"repify", "--config", (config_dir() / "broken_symmetry.json").string(), "--out", out.string()}) ==
        kExitCertification);
  const Json r = read_json(out / "repify.json");
  CHECK(r["status"] == "failed");
  CHECK(r["error"]["kind"] == "NotWeaklySymmetric");
  CHECK(r["error"]["module"] == "representation");
  CHECK(r["weak_symmetry_residuals"][0]["residual"].get<double>() > 1e-3);
}

TEST_CASE("schema failures exit with code 2 and a report") {
  const auto out = scratch("schema");
  const fs::path cfg = out / "bad.json";
  std::ofstream(cfg) << R"({"model": {"builder": "explicit", "hamiltonian": [[0, 1], [0, 0]]}})";
  std::string err;
  CHECK(invoke({"repify", "--config", cfg.string(), "--out", (out / "run").string()}, &err) == kExitSchema);
  CHECK(err.find("model.hamiltonian") != std::string::npos);
  const Json r = read_json(out / "run" / "repify.json");
  CHECK(r["schema_errors"][0]["path"] == "model.hamiltonian");
  CHECK(invoke({"repify", "--config", (out / "missing.json").string()}) == kExitSchema);
  CHECK(invoke({"repify"}) == kExitSchema);
  CHECK(invoke({"frobnicate", "--config", cfg.string()}) == kExitSchema);
  CHECK(invoke({"trajectories", "--config", cfg.string(), "--workers", "0"}) == kExitSchema);
}

TEST_CASE("amplitude-damping compare agrees within tolerances") {
  const auto out = scratch("compare");
  CHECK(invoke({"compare", "--config", (config_dir() / "amplitude_damping_compare.json").string(), "--out",
                out.string(), "--workers", "3"}) == 0);
  const Json r = read_json(out / "compare.json");
  for (const auto& o : r["compare"]["observables"]) {
    CHECK(o["block_within_tolerance"] == true);
    CHECK(o["qjmc_within_4_stderr"] == true);
  }
  const std::string csv = read_text(out / "compare.csv");
  CHECK(csv.rfind("time,observable,mean,stderr,method\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 7 * 2 * 3);
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const std::string cfg = (config_dir() / "chain_plane_waves.json").string();
  REQUIRE(invoke({"trajectories", "--config", cfg, "--out", a.string(), "--workers", "1"}) == 0);
  REQUIRE(invoke({"trajectories", "--config", cfg, "--out", b.string(), "--workers", "6"}) == 0);
  CHECK(read_text(a / "trajectories.json") == read_text(b / "trajectories.json"));
  CHECK(read_text(a / "trajectories.csv") == read_text(b / "trajectories.csv"));
  const auto c = scratch("det_c");
  REQUIRE(invoke({"trajectories", "--config", cfg, "--out", c.string(), "--seed", "8"}) == 0);
  CHECK(read_text(a / "trajectories.csv") != read_text(c / "trajectories.csv"));
  const Json r = read_json(a / "trajectories.json");
  CHECK(r["representation"] == "builder");
  CHECK(r["trajectories"]["trajectories"].size() == 500);
}

TEST_CASE("steady state and time average") {
  const auto out = scratch("steady");
  CHECK(invoke({"steadystate", "--config", (config_dir() / "driven_damped_steadystate.json").string(), "--out",
                out.string()}) == 0);
  const Json r = read_json(out / "steadystate.json");
  CHECK(r["steady_state"]["residual"].get<double>() <= 1e-9);
  CHECK(r["steady_state"]["null_multiplicity"] == 1);
  CHECK(r["time_average"]["trace_distance"].get<double>() <= 0.05);

  const fs::path cfg = out / "dephasing.json";
  std::ofstream(cfg) << R"({"model": {"builder": "dephasing"}, "symmetry": [{"builtin": "parity"}]})";
  CHECK(invoke({"steadystate", "--config", cfg.string(), "--out", (out / "deg").string()}) == kExitNumerical);
  const Json d = read_json(out / "deg" / "steadystate.json");
  CHECK(d["error"]["kind"] == "DegenerateSteadyState");
  CHECK(d["steady_state"]["null_multiplicity"] == 2);
}

TEST_CASE("liouvillian and builder representations") {
  const auto out = scratch("liouvillian");
  CHECK(invoke({"liouvillian", "--config", (config_dir() / "explicit_liouvillian.json").string(), "--out",
                out.string()}) == 0);
  const Json r = read_json(out / "liouvillian.json");
  CHECK(r["liouvillian"]["assembly_residual"].get<double>() <= 1e-9);
  CHECK(r["liouvillian"]["off_block_residual"].get<double>() <= 1e-9);
  CHECK(r["liouvillian"]["blocks"].size() == 3);

  CHECK(invoke({"repify", "--config", (config_dir() / "spin_ladder_repify.json").string(), "--out", out.string()}) == 0);
  const Json s = read_json(out / "repify.json");
  CHECK(s["weak_representation"]["jumps"].size() == 6);
  CHECK(s["certificate"]["passed"] == true);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code(category(ErrorKind::SchemaError)) == 2);
  CHECK(exit_code(category(ErrorKind::NotCertified)) == 3);
  CHECK(exit_code(category(ErrorKind::NotWeaklySymmetric)) == 3);
  CHECK(exit_code(category(ErrorKind::DegenerateSteadyState)) == 4);
  CHECK(module_of(ErrorKind::ZeroTotalRate) == "qjmc");
}

}
