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

// Liouville-space form of the generator: dense matrix, per-shift blocks in
// the symmetry eigenbasis, time propagation and stationary states.

#include "weaksym/error.hpp"
#include "weaksym/lindblad_rep.hpp"
#include "weaksym/representation.hpp"
#include "weaksym/symmetry.hpp"

#include <utility>
#include <vector>

namespace weaksym {

// Row-major: flat index k*dim + l <-> rho(k, l).
Vector vectorize(const Matrix& rho);
Matrix devectorize(const Vector& v, Eigen::Index dim);

// -iH(x)1 + i1(x)H^* + sum_j [J(x)J^* - 1/2 J^dagger J(x)1 - 1/2 1(x)J^T J^*]
Matrix build_dense(const LindbladRep& rep);

// L(rho) evaluated directly in operator form.
Matrix apply_lindbladian(const LindbladRep& rep, const Matrix& rho);

struct BlockLiouvillian {
  SectorDecomposition decomposition;
  WeaklySymmetricRep wrep;
  // One dense block per super shift (same order as decomposition.super_shifts()).
  std::vector<Matrix> blocks;
  // Eigenbasis flat indices (row-major over the rotated space) spanned by each block.
  std::vector<std::vector<Eigen::Index>> block_indices;
  // Eigenbasis flat index -> (shift index, position inside the block).
  std::vector<std::pair<int, Eigen::Index>> index_map;

  Eigen::Index dim() const { return decomposition.dim(); }
};

// Throws NotCertified unless wrep is supported on the sector blocks of dec.
BlockLiouvillian build_blocks(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec);

// Dense generator in the original basis, reassembled from the blocks.
Matrix assemble_dense(const BlockLiouvillian& bl);
// Same, but left in the symmetry eigenbasis (before undoing the rotation).
Matrix assemble_rotated(const BlockLiouvillian& bl);

// e^{t L} rho0. Throws NegativeTime.
Matrix propagate(const Matrix& liouvillian, const Matrix& rho0, double t);
Matrix propagate(const BlockLiouvillian& bl, const Matrix& rho0, double t);

struct SteadyStateReport {
  Matrix state;
  double residual = 0.0;  // ||L(rho_ss)||_F over the full generator
  int null_multiplicity = 0;
  std::vector<Complex> null_eigenvalues;
  // Sector indices carrying weight in each null vector of the symmetric block.
  std::vector<std::vector<int>> null_vector_sectors;
};

class DegenerateSteadyStateError : public Error {
 public:
  DegenerateSteadyStateError(SteadyStateReport report, const std::string& msg)
      : Error(ErrorKind::DegenerateSteadyState, msg), report_(std::move(report)) {}
  const SteadyStateReport& report() const { return report_; }

 private:
  SteadyStateReport report_;
};

// Null vector of the symmetric block, trace normalized. Throws
// DegenerateSteadyStateError when the null space has dimension > 1.
SteadyStateReport steady_state(const BlockLiouvillian& bl);

}  // namespace weaksym
