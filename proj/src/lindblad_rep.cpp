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

#include "weaksym/lindblad_rep.hpp"

#include "weaksym/error.hpp"

#include <string>

namespace weaksym {

void validate(const LindbladRep& rep, double tol) {
  require_square(rep.hamiltonian, "hamiltonian");
  if (hermiticity_defect(rep.hamiltonian) > tol) {
    throw Error(ErrorKind::NotHermitian, "hamiltonian is not Hermitian");
  }
  for (std::size_t j = 0; j < rep.jumps.size(); ++j) {
    require_same_dim(rep.hamiltonian, rep.jumps[j], "jump " + std::to_string(j));
    if (!rep.jumps[j].allFinite()) {
      throw Error(ErrorKind::InvalidArgument, "jump " + std::to_string(j) + " has non-finite entries");
    }
  }
  if (!rep.hamiltonian.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "hamiltonian has non-finite entries");
  }
}

}  // namespace weaksym
