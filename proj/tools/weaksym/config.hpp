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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsonio.hpp"
#include "weaksym/error.hpp"
#include "weaksym/models.hpp"
#include "weaksym/representation.hpp"

namespace weaksym::cli {

enum class Task { Inspect, Repify, Liouvillian, SteadyState, Trajectories, Compare };

std::optional<Task> parse_task(std::string_view name);
std::string_view to_string(Task task);

enum class RepresentationChoice { Original, Projected, Minimal, Builder };

std::string_view to_string(RepresentationChoice choice);

struct NamedOperator {
  std::string name;
  Matrix op;
};

struct ModelSection {
  bool present = false;
  std::string builder;  // fixture name, "chain", "spin" or "explicit"
  LindbladRep rep;
  std::map<std::string, SymmetrySpec> builtin_symmetries;
  std::optional<models::ChainModel> chain;
  std::optional<models::SpinModel> spin;
};

struct TimeAverageSpec {
  double t_burn = 0.0;
  double t_total = 0.0;
};

struct SimulationSection {
  double t_final = 0.0;
  std::vector<double> times;
  int n_traj = 0;
  std::optional<std::uint64_t> seed;
  std::optional<Vector> initial_state;  // normalized
  std::vector<NamedOperator> observables;
  bool event_logs = false;
  std::optional<TimeAverageSpec> time_average;
};

struct RunConfig {
  Task task = Task::Inspect;
  ModelSection model;
  AbelianGroupSpec symmetry;
  std::vector<std::string> symmetry_names;
  RepresentationChoice representation = RepresentationChoice::Original;
  SimulationSection simulation;
  std::string output_directory = ".";
  bool write_json = true;
  bool write_csv = true;
};

// Every schema problem found in a document, each with its key path.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::pair<std::string, std::string>> issues);
  const std::vector<std::pair<std::string, std::string>>& issues() const { return issues_; }

 private:
  std::vector<std::pair<std::string, std::string>> issues_;
};

// Seed overrides are applied before validation so a command-line seed satisfies the requirement.
RunConfig parse_config_json(const Json& doc, std::optional<Task> task = {},
                            std::optional<std::uint64_t> seed_override = {});
RunConfig parse_config_text(const std::string& text, std::optional<Task> task = {},
                            std::optional<std::uint64_t> seed_override = {});
RunConfig parse_config(const std::string& path, std::optional<Task> task = {},
                       std::optional<std::uint64_t> seed_override = {});

// Pauli strings over I, X, Y, Z, + (|1><0|) and - (|0><1|), leftmost factor first.
std::optional<Matrix> pauli_string(std::string_view letters);

}  // namespace weaksym::cli
