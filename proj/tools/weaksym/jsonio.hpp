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

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "weaksym/opcore.hpp"

namespace weaksym::cli {

using Json = nlohmann::ordered_json;

// Complex scalars travel as [re, im]; matrices as row-major nested arrays.
Json to_json(Complex z);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const std::vector<double>& values);

// Accumulates schema problems keyed by their location in the document.
class Issues {
 public:
  void add(const std::string& path, const std::string& message);
  bool empty() const { return items_.empty(); }
  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::optional<Complex> parse_complex(const Json& j);
std::optional<Matrix> parse_matrix(const Json& j, const std::string& path, Issues& issues);
std::optional<Vector> parse_vector(const Json& j, const std::string& path, Issues& issues);

}  // namespace weaksym::cli
