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

// Declared symmetries, their eigenspaces (sectors) and the eigenvalue classes
// of the induced superoperator (super shifts).

#include "weaksym/lindblad_rep.hpp"
#include "weaksym/opcore.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace weaksym {

enum class SymmetryKind {
  Unitary,    // rho -> U rho U^dagger
  Generator,  // rho -> [S, rho]
};

inline constexpr double kDefaultClusterTol = 1e-8;

struct SymmetrySpec {
  SymmetryKind kind = SymmetryKind::Unitary;
  Matrix op;
  double tol_cluster = kDefaultClusterTol;

  static SymmetrySpec unitary(Matrix u, double tol_cluster = kDefaultClusterTol) {
    return {SymmetryKind::Unitary, std::move(u), tol_cluster};
  }
  static SymmetrySpec generator(Matrix s, double tol_cluster = kDefaultClusterTol) {
    return {SymmetryKind::Generator, std::move(s), tol_cluster};
  }

  // Throws NotUnitary / NotHermitian.
  void validate(double tol = kOperatorTol) const;
};

// A set of mutually commuting symmetries. A single spec converts implicitly
// to a one-member group.
struct AbelianGroupSpec {
  std::vector<SymmetrySpec> members;

  AbelianGroupSpec() = default;
  AbelianGroupSpec(SymmetrySpec spec) : members{std::move(spec)} {}  // NOLINT
  explicit AbelianGroupSpec(std::vector<SymmetrySpec> specs) : members(std::move(specs)) {}

  std::vector<SymmetryKind> kinds() const;
  std::vector<double> tolerances() const;
};

// One entry per group member: an eigenphase in (-pi, pi] for unitary members,
// a real eigenvalue for generators. Used both for sector labels and for super
// shifts (phase differences / gaps).
using Label = std::vector<double>;

struct Sector {
  int index = 0;
  Label label;
  Matrix basis;  // orthonormal columns spanning the eigenspace

  Eigen::Index dim() const { return basis.cols(); }
};

struct SuperShift {
  Label value;
  std::vector<std::pair<int, int>> pairs;  // (k, l): phi_k - phi_l == value
};

// Label arithmetic and comparison under a fixed list of member kinds.
class LabelSpace {
 public:
  LabelSpace() = default;
  LabelSpace(std::vector<SymmetryKind> kinds, std::vector<double> tols)
      : kinds_(std::move(kinds)), tols_(std::move(tols)) {}

  const std::vector<SymmetryKind>& kinds() const { return kinds_; }
  const std::vector<double>& tolerances() const { return tols_; }
  std::size_t size() const { return kinds_.size(); }

  bool same(const Label& a, const Label& b) const;
  Label add(const Label& a, const Label& b) const;
  Label subtract(const Label& a, const Label& b) const;
  Label zero() const { return Label(kinds_.size(), 0.0); }
  bool is_zero(const Label& a) const { return same(a, zero()); }
  // Lexicographic order used for deterministic output.
  bool less(const Label& a, const Label& b) const;

 private:
  std::vector<SymmetryKind> kinds_;
  std::vector<double> tols_;
};

class SectorDecomposition {
 public:
  SectorDecomposition() = default;
  // Builds offsets, the change of basis and the super-shift classes from a
  // list of sectors whose bases together form an orthonormal basis.
  SectorDecomposition(LabelSpace space, std::vector<Sector> sectors);

  const LabelSpace& labels() const { return space_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  const Matrix& change_of_basis() const { return change_of_basis_; }
  const std::vector<SuperShift>& super_shifts() const { return shifts_; }

  int num_sectors() const { return static_cast<int>(sectors_.size()); }
  Eigen::Index dim() const { return change_of_basis_.rows(); }
  Eigen::Index offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  Eigen::Index max_sector_dim() const;

  // Index into super_shifts() of the class containing (k, l).
  int shift_of_pair(int k, int l) const {
    return pair_shift_[static_cast<std::size_t>(k * num_sectors() + l)];
  }
  int symmetric_shift() const { return symmetric_shift_; }
  std::optional<int> find_shift(const Label& value) const;
  std::optional<int> find_sector(const Label& label) const;
  // Sector whose label equals label_k + shift, if any.
  std::optional<int> shifted_sector(int k, const Label& shift) const;

  Matrix projector(int k) const;

 private:
  LabelSpace space_;
  std::vector<Sector> sectors_;
  std::vector<Eigen::Index> offsets_;
  Matrix change_of_basis_;
  std::vector<SuperShift> shifts_;
  std::vector<int> pair_shift_;
  int symmetric_shift_ = -1;
};

SectorDecomposition decompose(const SymmetrySpec& spec);
// One sector spanning the whole space, labels of length zero.
SectorDecomposition trivial_decomposition(Eigen::Index dim);
SectorDecomposition joint_decompose(const AbelianGroupSpec& group);

// U a U^dagger (unitary kind) or [S, a] (generator kind).
Matrix conjugate(const SymmetrySpec& spec, const Matrix& a);

// U (x) U^* or S (x) 1 - 1 (x) S^* on the row-major vectorized space.
Matrix superoperator_matrix(const SymmetrySpec& spec);

// ||[U_bar, L_bar]||_F / ||L_bar||_F (0 for a zero generator).
double weak_symmetry_residual(const LindbladRep& rep, const SymmetrySpec& spec);

// Joint eigenbasis refinement of commuting normal operators restricted to the
// span of `basis`. Each returned block carries one eigenvalue per operator.
// Used for sector construction and for diagonalizing action matrices.
struct JointBlock {
  Label label;
  Matrix basis;
};
std::vector<JointBlock> simultaneous_diagonalize(
    const std::vector<std::pair<SymmetryKind, Matrix>>& operators, const Matrix& basis,
    const std::vector<double>& cluster_tols, double validity_tol);

// Single-linkage clustering of eigenvalues; circular distance for phases.
// Throws ClusterAmbiguity if two values sit at distance in (tol, 10 tol).
std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& values, bool circular,
                                                  double tol);

}  // namespace weaksym
