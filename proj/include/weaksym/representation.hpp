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

// Weakly symmetric representations: a symmetric Hamiltonian plus jump
// operators that are eigenmatrices of the symmetry superoperator(s).

#include "weaksym/lindblad_rep.hpp"
#include "weaksym/symmetry.hpp"

#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace weaksym {

struct TaggedJump {
  Matrix op;
  Label shift;  // phase delta_j (unitary members) or gap delta_j (generators)
};

enum class Provenance { Projected, Minimal, Gauge, Builder };

std::string_view to_string(Provenance p);

struct WeaklySymmetricRep {
  Matrix hamiltonian;
  std::vector<TaggedJump> jumps;
  LabelSpace labels;
  Provenance provenance = Provenance::Builder;

  Eigen::Index dim() const { return hamiltonian.rows(); }
  LindbladRep as_lindblad() const;
};

struct TracelessForm {
  Matrix hamiltonian;
  std::vector<Matrix> jumps;
};

struct GramData {
  Matrix c_matrix;                     // C_jk = Tr(J'_j^dagger J'_k)
  RealVector rates;                    // all eigenvalues of C, descending
  Matrix combinations;                 // orthonormal eigenvectors c_j as columns
  int n_min = 0;                       // rates above the cutoff
  std::vector<Matrix> orthogonal_jumps;  // J''_j, j < n_min
};

struct ActionMatrix {
  SymmetryKind kind = SymmetryKind::Unitary;
  Matrix entries;  // n_min x n_min
};

struct GaugeTransform {
  Matrix isometry;                       // n' x n_min, V^dagger V = 1
  std::map<int, Complex> symmetric_shifts;  // output jump index -> a_j
  double energy_shift = 0.0;             // b
};

struct CertificateReport {
  std::optional<double> liouvillian_residual;  // absent when no reference rep
  double eigenmatrix_residual = 0.0;
  double hamiltonian_residual = 0.0;
  double support_residual = 0.0;
  std::vector<double> per_jump_eigenmatrix;
  std::vector<double> per_jump_support;
  double tolerance = 1e-8;

  bool liouvillian_ok() const { return !liouvillian_residual || *liouvillian_residual <= tolerance; }
  bool eigenmatrix_ok() const { return eigenmatrix_residual <= tolerance; }
  bool hamiltonian_ok() const { return hamiltonian_residual <= tolerance; }
  bool support_ok() const { return support_residual <= tolerance; }
  bool passed() const { return liouvillian_ok() && eigenmatrix_ok() && hamiltonian_ok() && support_ok(); }
};

inline constexpr double kDefaultRateCutoff = 1e-12;

// Shifts every jump to be traceless (normalized trace Tr(.)/dim) and
// compensates in the Hamiltonian so the generator is unchanged.
TracelessForm make_traceless(const LindbladRep& rep);

// Diagonalizes the Gram matrix of the (traceless) jumps. Throws AllRatesZero
// only when require_jumps is set; otherwise an empty jump list is returned.
GramData gram_orthogonalize(const std::vector<Matrix>& jumps_traceless,
                            double rate_cutoff = kDefaultRateCutoff, bool require_jumps = false);

ActionMatrix action_matrix(const GramData& gram, const SymmetrySpec& spec);

WeaklySymmetricRep minimal_weak_rep(const LindbladRep& rep, const AbelianGroupSpec& group,
                                    double rate_cutoff = kDefaultRateCutoff);

WeaklySymmetricRep projected_weak_rep(const LindbladRep& rep, const SectorDecomposition& dec);

// H - (i/2) sum_j J_j^dagger J_j
Matrix effective_hamiltonian(const LindbladRep& rep);
Matrix effective_hamiltonian(const WeaklySymmetricRep& rep);

WeaklySymmetricRep apply_gauge(const WeaklySymmetricRep& wrep, const GaugeTransform& gauge);

// Checks the weakly symmetric form against the group and, when given, the
// Liouvillian of a reference representation.
CertificateReport certify(const WeaklySymmetricRep& wrep, const LindbladRep& rep,
                          const AbelianGroupSpec& group);
CertificateReport certify(const WeaklySymmetricRep& wrep, const AbelianGroupSpec& group);
// Same checks against an existing decomposition (no Liouvillian comparison).
CertificateReport certify(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec,
                          const AbelianGroupSpec& group);

// Sector-block support only (no symmetry operators needed): the Hamiltonian
// must be block diagonal and each jump supported on the pairs of its shift.
CertificateReport certify_support(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec);

// Max-entry relative difference of the dense Liouvillians of two
// representations; random operator probes replace the dense matrices for
// large dimensions.
double liouvillian_distance(const LindbladRep& a, const LindbladRep& b);

// Throws NotWeaklySymmetric unless every member has residual <= tol.
void require_weak_symmetry(const LindbladRep& rep, const AbelianGroupSpec& group, double tol = 1e-8);

}  // namespace weaksym
