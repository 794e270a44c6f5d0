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

#include "jsonio.hpp"

namespace weaksym::cli {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const std::vector<double>& values) { return Json(values); }

void Issues::add(const std::string& path, const std::string& message) { items_.emplace_back(path, message); }

std::optional<Complex> parse_complex(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  return std::nullopt;
}

std::optional<Matrix> parse_matrix(const Json& j, const std::string& path, Issues& issues) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    issues.add(path, "expected a non-empty array of rows");
    return std::nullopt;
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  bool ok = true;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      issues.add(row_path, "expected a row of " + std::to_string(cols) + " entries");
      ok = false;
      continue;
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto z = parse_complex(row[static_cast<std::size_t>(c)]);
      if (!z) {
        issues.add(row_path + "[" + std::to_string(c) + "]", "expected a number or [re, im]");
        ok = false;
      } else {
        m(r, c) = *z;
      }
    }
  }
  if (!ok) return std::nullopt;
  return m;
}

std::optional<Vector> parse_vector(const Json& j, const std::string& path, Issues& issues) {
  if (!j.is_array() || j.empty()) {
    issues.add(path, "expected a non-empty array of amplitudes");
    return std::nullopt;
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  bool ok = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto z = parse_complex(j[i]);
    if (!z) {
      issues.add(path + "[" + std::to_string(i) + "]", "expected a number or [re, im]");
      ok = false;
    } else {
      v(static_cast<Eigen::Index>(i)) = *z;
    }
  }
  if (!ok) return std::nullopt;
  return v;
}

}  // namespace weaksym::cli
