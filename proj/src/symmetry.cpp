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

#include "weaksym/symmetry.hpp"

#include "weaksym/error.hpp"
#include "weaksym/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace weaksym {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double circular_mean(const std::vector<double>& phases) {
  Complex acc{0.0, 0.0};
  for (double p : phases) acc += std::polar(1.0, p);
  return canonical_phase(std::arg(acc));
}

double linear_mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<std::vector<int>> single_linkage(const std::vector<double>& values, bool circular,
                                             double tol, bool check_ambiguity) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });
  auto v = [&](int i) { return values[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]; };

  if (check_ambiguity) {
    auto check = [&](double d, int a, int b) {
      if (d > tol && d < 10.0 * tol) {
        throw Error(ErrorKind::ClusterAmbiguity,
                    "eigenvalues " + std::to_string(values[static_cast<std::size_t>(a)]) + " and " +
                        std::to_string(values[static_cast<std::size_t>(b)]) +
                        " are neither clearly degenerate nor clearly split (distance " +
                        std::to_string(d) + ", tol " + std::to_string(tol) + ")");
      }
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n && v(j) - v(i) < 10.0 * tol; ++j) {
        check(v(j) - v(i), order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
      }
    }
    if (circular) {
      for (int i = 0; i < n && v(i) - v(0) < 10.0 * tol; ++i) {
        for (int j = n - 1; j > i && v(n - 1) - v(j) < 10.0 * tol; --j) {
          check(phase_distance(v(i), v(j)), order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(j)]);
        }
      }
    }
  }

  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || v(i) - v(i - 1) > tol) clusters.emplace_back();
    clusters.back().push_back(order[static_cast<std::size_t>(i)]);
  }
  if (circular && clusters.size() > 1 && phase_distance(v(n - 1), v(0)) <= tol) {
    auto& first = clusters.front();
    first.insert(first.begin(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }
  return clusters;
}

// (a (x) b) * m for a Kronecker factorized left operand, row-major vec.
Matrix kron_apply_left(const Matrix& a, const Matrix& b, const Matrix& m) {
  const Eigen::Index d = a.rows();
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Map<const RowMajorMatrix> x(m.col(c).data(), d, d);
    RowMajorMatrix y = a * x * b.transpose();
    out.col(c) = Eigen::Map<const Vector>(y.data(), d * d);
  }
  return out;
}

}  // namespace

void SymmetrySpec::validate(double tol) const {
  require_square(op, "symmetry operator");
  if (kind == SymmetryKind::Unitary) {
    if (unitarity_defect(op) > tol) {
      throw Error(ErrorKind::NotUnitary, "symmetry operator is not unitary (defect " +
                                             std::to_string(unitarity_defect(op)) + ")");
    }
  } else if (hermiticity_defect(op) > tol) {
    throw Error(ErrorKind::NotHermitian, "symmetry generator is not Hermitian");
  }
}

std::vector<SymmetryKind> AbelianGroupSpec::kinds() const {
  std::vector<SymmetryKind> out;
  for (const auto& m : members) out.push_back(m.kind);
  return out;
}

std::vector<double> AbelianGroupSpec::tolerances() const {
  std::vector<double> out;
  for (const auto& m : members) out.push_back(m.tol_cluster);
  return out;
}

// ---------------------------------------------------------------- LabelSpace

bool LabelSpace::same(const Label& a, const Label& b) const {
  if (a.size() != kinds_.size() || b.size() != kinds_.size()) return false;
  for (std::size_t m = 0; m < kinds_.size(); ++m) {
    const double d = kinds_[m] == SymmetryKind::Unitary ? phase_distance(a[m], b[m])
                                                        : std::abs(a[m] - b[m]);
    if (d > tols_[m]) return false;
  }
  return true;
}

Label LabelSpace::add(const Label& a, const Label& b) const {
  Label out(kinds_.size());
  for (std::size_t m = 0; m < kinds_.size(); ++m) {
    out[m] = a[m] + b[m];
    if (kinds_[m] == SymmetryKind::Unitary) out[m] = canonical_phase(out[m]);
  }
  return out;
}

Label LabelSpace::subtract(const Label& a, const Label& b) const {
  Label out(kinds_.size());
  for (std::size_t m = 0; m < kinds_.size(); ++m) {
    out[m] = a[m] - b[m];
    if (kinds_[m] == SymmetryKind::Unitary) out[m] = canonical_phase(out[m]);
  }
  return out;
}

bool LabelSpace::less(const Label& a, const Label& b) const {
  for (std::size_t m = 0; m < kinds_.size(); ++m) {
    const double d = kinds_[m] == SymmetryKind::Unitary ? phase_distance(a[m], b[m])
                                                        : std::abs(a[m] - b[m]);
    if (d <= tols_[m]) continue;
    return a[m] < b[m];
  }
  return false;
}

// ------------------------------------------------------- SectorDecomposition

SectorDecomposition::SectorDecomposition(LabelSpace space, std::vector<Sector> sectors)
    : space_(std::move(space)), sectors_(std::move(sectors)) {
  if (sectors_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sector decomposition needs at least one sector");
  }
  const Eigen::Index dim = sectors_.front().basis.rows();
  Eigen::Index total = 0;
  for (std::size_t k = 0; k < sectors_.size(); ++k) {
    sectors_[k].index = static_cast<int>(k);
    offsets_.push_back(total);
    total += sectors_[k].dim();
  }
  if (total != dim) {
    throw Error(ErrorKind::DimensionMismatch, "sector dimensions sum to " + std::to_string(total) +
                                                  ", expected " + std::to_string(dim));
  }
  change_of_basis_.resize(dim, dim);
  for (std::size_t k = 0; k < sectors_.size(); ++k) {
    change_of_basis_.middleCols(offsets_[k], sectors_[k].dim()) = sectors_[k].basis;
  }

  // Super shifts: cluster every component of the pairwise differences, then
  // group pairs whose component clusters all agree.
  const int num = num_sectors();
  const std::size_t pairs = static_cast<std::size_t>(num) * static_cast<std::size_t>(num);
  const std::size_t members = space_.size();
  std::vector<std::vector<int>> component_cluster(members, std::vector<int>(pairs, 0));
  for (std::size_t m = 0; m < members; ++m) {
    const bool circular = space_.kinds()[m] == SymmetryKind::Unitary;
    std::vector<double> diffs(pairs);
    for (int k = 0; k < num; ++k) {
      for (int l = 0; l < num; ++l) {
        double d = sectors_[static_cast<std::size_t>(k)].label[m] -
                   sectors_[static_cast<std::size_t>(l)].label[m];
        if (circular) d = canonical_phase(d);
        diffs[static_cast<std::size_t>(k * num + l)] = d;
      }
    }
    const auto clusters = single_linkage(diffs, circular, space_.tolerances()[m], false);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (int idx : clusters[c]) component_cluster[m][static_cast<std::size_t>(idx)] = static_cast<int>(c);
    }
  }

  std::map<std::vector<int>, int> key_to_shift;
  std::vector<std::vector<std::pair<int, int>>> shift_pairs;
  for (int k = 0; k < num; ++k) {
    for (int l = 0; l < num; ++l) {
      std::vector<int> key(members);
      for (std::size_t m = 0; m < members; ++m) {
        key[m] = component_cluster[m][static_cast<std::size_t>(k * num + l)];
      }
      auto [it, inserted] = key_to_shift.emplace(key, static_cast<int>(shift_pairs.size()));
      if (inserted) shift_pairs.emplace_back();
      shift_pairs[static_cast<std::size_t>(it->second)].emplace_back(k, l);
    }
  }

  std::vector<SuperShift> unsorted;
  for (auto& p : shift_pairs) {
    SuperShift s;
    s.value.resize(members);
    for (std::size_t m = 0; m < members; ++m) {
      std::vector<double> comps;
      for (auto [k, l] : p) {
        comps.push_back(sectors_[static_cast<std::size_t>(k)].label[m] -
                        sectors_[static_cast<std::size_t>(l)].label[m]);
      }
      s.value[m] = space_.kinds()[m] == SymmetryKind::Unitary ? circular_mean(comps) : linear_mean(comps);
    }
    s.pairs = std::move(p);
    unsorted.push_back(std::move(s));
  }
  std::stable_sort(unsorted.begin(), unsorted.end(), [&](const SuperShift& a, const SuperShift& b) {
    return space_.less(a.value, b.value);
  });
  shifts_ = std::move(unsorted);

  pair_shift_.assign(pairs, -1);
  for (std::size_t s = 0; s < shifts_.size(); ++s) {
    for (auto [k, l] : shifts_[s].pairs) {
      pair_shift_[static_cast<std::size_t>(k * num + l)] = static_cast<int>(s);
    }
    if (symmetric_shift_ < 0 && space_.is_zero(shifts_[s].value)) symmetric_shift_ = static_cast<int>(s);
  }
  if (symmetric_shift_ < 0) symmetric_shift_ = shift_of_pair(0, 0);
}

Eigen::Index SectorDecomposition::max_sector_dim() const {
  Eigen::Index best = 0;
  for (const auto& s : sectors_) best = std::max(best, s.dim());
  return best;
}

std::optional<int> SectorDecomposition::find_shift(const Label& value) const {
  for (std::size_t s = 0; s < shifts_.size(); ++s) {
    if (space_.same(shifts_[s].value, value)) return static_cast<int>(s);
  }
  return std::nullopt;
}

std::optional<int> SectorDecomposition::find_sector(const Label& label) const {
  for (const auto& s : sectors_) {
    if (space_.same(s.label, label)) return s.index;
  }
  return std::nullopt;
}

std::optional<int> SectorDecomposition::shifted_sector(int k, const Label& shift) const {
  return find_sector(space_.add(sectors_[static_cast<std::size_t>(k)].label, shift));
}

Matrix SectorDecomposition::projector(int k) const {
  const Matrix& b = sectors_[static_cast<std::size_t>(k)].basis;
  return b * b.adjoint();
}

SectorDecomposition trivial_decomposition(Eigen::Index dim) {
  return SectorDecomposition(LabelSpace({}, {}), {Sector{0, {}, identity(dim)}});
}

// ---------------------------------------------------------------- operations

std::vector<std::vector<int>> cluster_eigenvalues(const std::vector<double>& values, bool circular,
                                                  double tol) {
  return single_linkage(values, circular, tol, true);
}

std::vector<JointBlock> simultaneous_diagonalize(
    const std::vector<std::pair<SymmetryKind, Matrix>>& operators, const Matrix& basis,
    const std::vector<double>& cluster_tols, double validity_tol) {
  std::vector<JointBlock> blocks{{Label{}, basis}};
  for (std::size_t m = 0; m < operators.size(); ++m) {
    const auto& [kind, op] = operators[m];
    std::vector<JointBlock> refined;
    for (const auto& block : blocks) {
      if (block.basis.cols() == 0) continue;
      const Matrix restricted = block.basis.adjoint() * op * block.basis;
      std::vector<double> values;
      Matrix vectors;
      if (kind == SymmetryKind::Unitary) {
        auto eig = unitary_eig(restricted, validity_tol);
        values.assign(eig.phases.data(), eig.phases.data() + eig.phases.size());
        vectors = std::move(eig.vectors);
      } else {
        auto eig = hermitian_eig(restricted, validity_tol);
        values.assign(eig.values.data(), eig.values.data() + eig.values.size());
        vectors = std::move(eig.vectors);
      }
      const bool circular = kind == SymmetryKind::Unitary;
      auto clusters = cluster_eigenvalues(values, circular, cluster_tols[m]);
      std::vector<std::pair<double, JointBlock>> pieces;
      for (const auto& cluster : clusters) {
        std::vector<double> members;
        Matrix cols(vectors.rows(), static_cast<Eigen::Index>(cluster.size()));
        for (std::size_t c = 0; c < cluster.size(); ++c) {
          members.push_back(values[static_cast<std::size_t>(cluster[c])]);
          cols.col(static_cast<Eigen::Index>(c)) = vectors.col(cluster[c]);
        }
        const double mean = circular ? circular_mean(members) : linear_mean(members);
        JointBlock piece{block.label, block.basis * cols};
        piece.label.push_back(mean);
        pieces.emplace_back(mean, std::move(piece));
      }
      // Unitary: ascending phase. Generator: descending eigenvalue.
      std::stable_sort(pieces.begin(), pieces.end(), [&](const auto& a, const auto& b) {
        return circular ? a.first < b.first : a.first > b.first;
      });
      for (auto& p : pieces) refined.push_back(std::move(p.second));
    }
    blocks = std::move(refined);
  }
  return blocks;
}

SectorDecomposition joint_decompose(const AbelianGroupSpec& group) {
  if (group.members.empty()) {
    throw Error(ErrorKind::InvalidArgument, "joint_decompose: empty symmetry group");
  }
  const Eigen::Index dim = group.members.front().op.rows();
  for (const auto& m : group.members) {
    m.validate();
    if (m.op.rows() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "symmetry operators have different dimensions");
    }
  }
  for (std::size_t a = 0; a < group.members.size(); ++a) {
    for (std::size_t b = a + 1; b < group.members.size(); ++b) {
      const Matrix& x = group.members[a].op;
      const Matrix& y = group.members[b].op;
      const double defect = (x * y - y * x).norm();
      if (defect > 1e-10 * x.norm() * y.norm()) {
        throw Error(ErrorKind::NotCommuting, "members " + std::to_string(a) + " and " +
                                                 std::to_string(b) + " do not commute (||[A,B]||_F = " +
                                                 std::to_string(defect) + ")");
      }
    }
  }
  std::vector<std::pair<SymmetryKind, Matrix>> ops;
  for (const auto& m : group.members) ops.emplace_back(m.kind, m.op);
  auto blocks = simultaneous_diagonalize(ops, identity(dim), group.tolerances(), 1e-9);
  std::vector<Sector> sectors;
  for (auto& b : blocks) {
    sectors.push_back(Sector{static_cast<int>(sectors.size()), std::move(b.label), std::move(b.basis)});
  }
  return SectorDecomposition(LabelSpace(group.kinds(), group.tolerances()), std::move(sectors));
}

SectorDecomposition decompose(const SymmetrySpec& spec) { return joint_decompose(AbelianGroupSpec(spec)); }

Matrix conjugate(const SymmetrySpec& spec, const Matrix& a) {
  require_same_dim(spec.op, a, "conjugate");
  if (spec.kind == SymmetryKind::Unitary) return spec.op * a * spec.op.adjoint();
  return spec.op * a - a * spec.op;
}

Matrix superoperator_matrix(const SymmetrySpec& spec) {
  require_square(spec.op, "superoperator_matrix");
  if (spec.kind == SymmetryKind::Unitary) return kron(spec.op, spec.op.conjugate());
  const Matrix one = identity(spec.op.rows());
  return kron(spec.op, one) - kron(one, spec.op.conjugate());
}

double weak_symmetry_residual(const LindbladRep& rep, const SymmetrySpec& spec) {
  validate(rep);
  require_same_dim(rep.hamiltonian, spec.op, "weak_symmetry_residual");
  const Matrix l = build_dense(rep);
  const double norm = l.norm();
  if (norm == 0.0) return 0.0;
  const Matrix one = identity(spec.op.rows());
  Matrix lhs;
  Matrix rhs;
  if (spec.kind == SymmetryKind::Unitary) {
    const Matrix uc = spec.op.conjugate();
    lhs = kron_apply_left(spec.op, uc, l);
    // L (A (x) B) = ((A^T (x) B^T) L^T)^T
    rhs = kron_apply_left(spec.op.transpose(), uc.transpose(), l.transpose()).transpose();
  } else {
    const Matrix sc = spec.op.conjugate();
    lhs = kron_apply_left(spec.op, one, l) - kron_apply_left(one, sc, l);
    const Matrix lt = l.transpose();
    rhs = (kron_apply_left(spec.op.transpose(), one, lt) - kron_apply_left(one, sc.transpose(), lt))
              .transpose();
  }
  return (lhs - rhs).norm() / norm;
}

}  // namespace weaksym
