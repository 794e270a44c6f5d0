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

#include "weaksym/opcore.hpp"

#include <vector>

namespace weaksym {

// A Hamiltonian plus jump operators: one representation of a Lindblad
// generator.
struct LindbladRep {
  Matrix hamiltonian;
  std::vector<Matrix> jumps;

  Eigen::Index dim() const { return hamiltonian.rows(); }
};

// Throws DimensionMismatch / NotHermitian when the invariants fail.
void validate(const LindbladRep& rep, double tol = kOperatorTol);

}  // namespace weaksym
