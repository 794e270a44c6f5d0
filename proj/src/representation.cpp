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

#include "weaksym/representation.hpp"

#include "weaksym/error.hpp"
#include "weaksym/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace weaksym {

namespace {

constexpr double kActionDefectTol = 1e-6;
constexpr double kRateGroupTol = 1e-8;
constexpr double kPruneNorm = 1e-12;

// Groups of (descending) rate indices that are degenerate within a relative
// tolerance.
std::vector<std::vector<int>> rate_groups(const RealVector& rates, int n_min) {
  std::vector<std::vector<int>> groups;
  if (n_min == 0) return groups;
  const double scale = rates(0);
  for (int j = 0; j < n_min; ++j) {
    if (j == 0 || rates(j - 1) - rates(j) > kRateGroupTol * scale) groups.emplace_back();
    groups.back().push_back(j);
  }
  return groups;
}

double symmetry_scale(const SymmetrySpec& spec) {
  if (spec.kind == SymmetryKind::Unitary) return 1.0;
  return std::max(1.0, spec.op.cwiseAbs().rowwise().sum().maxCoeff());
}

// Residual of  conjugate(spec, a) == factor * a,  relative to ||a||.
double eigenmatrix_defect(const SymmetrySpec& spec, const Matrix& a, double component) {
  const double norm = a.norm();
  if (norm == 0.0) return 0.0;
  const Complex factor = spec.kind == SymmetryKind::Unitary ? std::polar(1.0, component) : Complex(component);
  return (conjugate(spec, a) - factor * a).norm() / (norm * symmetry_scale(spec));
}

void check_group_matches(const LabelSpace& labels, const AbelianGroupSpec& group) {
  if (labels.kinds() != group.kinds()) {
    throw Error(ErrorKind::InvalidArgument, "representation labels do not match the symmetry group");
  }
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Projected: return "projected";
    case Provenance::Minimal: return "minimal";
    case Provenance::Gauge: return "gauge";
    case Provenance::Builder: return "builder";
  }
  return "unknown";
}

LindbladRep WeaklySymmetricRep::as_lindblad() const {
  LindbladRep rep{hamiltonian, {}};
  rep.jumps.reserve(jumps.size());
  for (const auto& j : jumps) rep.jumps.push_back(j.op);
  return rep;
}

TracelessForm make_traceless(const LindbladRep& rep) {
  validate(rep);
  const Eigen::Index dim = rep.dim();
  TracelessForm out{rep.hamiltonian, {}};
  for (const auto& j : rep.jumps) {
    const Complex c = j.trace() / static_cast<double>(dim);
    out.jumps.push_back(j - c * identity(dim));
    out.hamiltonian += 0.5 * kI * (std::conj(c) * j - c * j.adjoint());
  }
  // Exact Hermiticity; the correction is Hermitian analytically.
  out.hamiltonian = 0.5 * (out.hamiltonian + out.hamiltonian.adjoint()).eval();
  return out;
}

GramData gram_orthogonalize(const std::vector<Matrix>& jumps, double rate_cutoff, bool require_jumps) {
  const auto n = static_cast<Eigen::Index>(jumps.size());
  GramData g;
  g.c_matrix = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      g.c_matrix(j, k) = frobenius_inner(jumps[static_cast<std::size_t>(j)], jumps[static_cast<std::size_t>(k)]);
      g.c_matrix(k, j) = std::conj(g.c_matrix(j, k));
    }
  }
  if (n == 0) {
    if (require_jumps) throw Error(ErrorKind::AllRatesZero, "no jump operators");
    g.rates.resize(0);
    g.combinations.resize(0, 0);
    return g;
  }
  auto eig = hermitian_eig(g.c_matrix, 1e-8);
  g.rates = eig.values;
  g.combinations = eig.vectors;
  // Fix each eigenvector's phase: largest-magnitude component real positive.
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index arg = 0;
    g.combinations.col(c).cwiseAbs().maxCoeff(&arg);
    const Complex z = g.combinations(arg, c);
    if (std::abs(z) > 0.0) g.combinations.col(c) *= std::abs(z) / z;
  }
  const double lmax = g.rates(0);
  g.n_min = 0;
  if (lmax > 0.0) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (g.rates(j) > rate_cutoff * lmax) ++g.n_min;
    }
  }
  if (g.n_min == 0 && require_jumps) {
    throw Error(ErrorKind::AllRatesZero, "every jump rate is below the cutoff");
  }
  const Eigen::Index dim = jumps.front().rows();
  for (int j = 0; j < g.n_min; ++j) {
    Matrix op = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < n; ++k) op += g.combinations(k, j) * jumps[static_cast<std::size_t>(k)];
    g.orthogonal_jumps.push_back(std::move(op));
  }
  return g;
}

ActionMatrix action_matrix(const GramData& gram, const SymmetrySpec& spec) {
  spec.validate();
  const int n = gram.n_min;
  ActionMatrix out{spec.kind, Matrix::Zero(n, n)};
  std::vector<Matrix> images;
  images.reserve(static_cast<std::size_t>(n));
  for (const auto& j : gram.orthogonal_jumps) images.push_back(conjugate(spec, j));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out.entries(j, k) = frobenius_inner(gram.orthogonal_jumps[static_cast<std::size_t>(j)],
                                          images[static_cast<std::size_t>(k)]) /
                          gram.rates(j);
    }
  }
  if (spec.kind == SymmetryKind::Unitary) {
    const double defect = unitarity_defect(out.entries);
    if (defect > kActionDefectTol) {
      throw Error(ErrorKind::UnitarityViolation,
                  "action matrix deviates from unitarity by " + std::to_string(defect) +
                      "; the declared symmetry is not a weak symmetry of this generator");
    }
  } else {
    const double defect = (out.entries - out.entries.adjoint()).norm() /
                          std::max(1.0, out.entries.norm());
    if (defect > kActionDefectTol) {
      throw Error(ErrorKind::HermiticityViolation,
                  "action matrix deviates from Hermiticity by " + std::to_string(defect) +
                      "; the declared symmetry is not a weak symmetry of this generator");
    }
  }
  // Block structure in the rate eigenspaces.
  const auto groups = rate_groups(gram.rates, n);
  std::vector<int> group_of(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int j : groups[g]) group_of[static_cast<std::size_t>(j)] = static_cast<int>(g);
  }
  double leak = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (group_of[static_cast<std::size_t>(j)] != group_of[static_cast<std::size_t>(k)]) {
        leak = std::max(leak, std::abs(out.entries(j, k)));
      }
    }
  }
  if (leak > kActionDefectTol) {
    throw Error(spec.kind == SymmetryKind::Unitary ? ErrorKind::UnitarityViolation
                                                   : ErrorKind::HermiticityViolation,
                "action matrix couples different rates (" + std::to_string(leak) + ")");
  }
  return out;
}

void require_weak_symmetry(const LindbladRep& rep, const AbelianGroupSpec& group, double tol) {
  for (std::size_t m = 0; m < group.members.size(); ++m) {
    const double r = weak_symmetry_residual(rep, group.members[m]);
    if (r > tol) {
      throw Error(ErrorKind::NotWeaklySymmetric, "symmetry member " + std::to_string(m) +
                                                     " has commutator residual " + std::to_string(r));
    }
  }
}

WeaklySymmetricRep minimal_weak_rep(const LindbladRep& rep, const AbelianGroupSpec& group,
                                    double rate_cutoff) {
  validate(rep);
  require_weak_symmetry(rep, group);
  const LabelSpace labels(group.kinds(), group.tolerances());
  TracelessForm traceless = make_traceless(rep);
  const GramData gram = gram_orthogonalize(traceless.jumps, rate_cutoff);

  WeaklySymmetricRep out{std::move(traceless.hamiltonian), {}, labels, Provenance::Minimal};
  if (gram.n_min == 0) return out;

  std::vector<ActionMatrix> actions;
  for (const auto& m : group.members) actions.push_back(action_matrix(gram, m));

  for (const auto& rate_group : rate_groups(gram.rates, gram.n_min)) {
    const auto size = static_cast<Eigen::Index>(rate_group.size());
    std::vector<std::pair<SymmetryKind, Matrix>> restricted;
    for (const auto& a : actions) {
      Matrix r(size, size);
      for (Eigen::Index x = 0; x < size; ++x) {
        for (Eigen::Index y = 0; y < size; ++y) {
          r(x, y) = a.entries(rate_group[static_cast<std::size_t>(x)], rate_group[static_cast<std::size_t>(y)]);
        }
      }
      if (a.kind == SymmetryKind::Generator) r = (0.5 * (r + r.adjoint())).eval();
      restricted.emplace_back(a.kind, std::move(r));
    }
    auto blocks = simultaneous_diagonalize(restricted, identity(size), group.tolerances(), kActionDefectTol);
    std::stable_sort(blocks.begin(), blocks.end(),
                     [&](const JointBlock& a, const JointBlock& b) { return labels.less(a.label, b.label); });
    for (const auto& block : blocks) {
      for (Eigen::Index c = 0; c < block.basis.cols(); ++c) {
        Matrix op = Matrix::Zero(rep.dim(), rep.dim());
        for (Eigen::Index x = 0; x < size; ++x) {
          op += block.basis(x, c) * gram.orthogonal_jumps[static_cast<std::size_t>(rate_group[static_cast<std::size_t>(x)])];
        }
        out.jumps.push_back(TaggedJump{std::move(op), block.label});
      }
    }
  }
  return out;
}

WeaklySymmetricRep projected_weak_rep(const LindbladRep& rep, const SectorDecomposition& dec) {
  validate(rep);
  require_same_dim(rep.hamiltonian, dec.change_of_basis(), "projected_weak_rep");
  const Matrix& q = dec.change_of_basis();
  const int num = dec.num_sectors();

  auto block = [&](auto& m, int k, int l) {
    return m.block(dec.offset(k), dec.offset(l), dec.sectors()[static_cast<std::size_t>(k)].dim(),
                   dec.sectors()[static_cast<std::size_t>(l)].dim());
  };

  const Matrix h_rot = q.adjoint() * rep.hamiltonian * q;
  Matrix h_sym = Matrix::Zero(rep.dim(), rep.dim());
  for (int k = 0; k < num; ++k) block(h_sym, k, k) = block(h_rot, k, k);

  WeaklySymmetricRep out{q * h_sym * q.adjoint(), {}, dec.labels(), Provenance::Projected};
  out.hamiltonian = 0.5 * (out.hamiltonian + out.hamiltonian.adjoint()).eval();
  for (const auto& j : rep.jumps) {
    const Matrix j_rot = q.adjoint() * j * q;
    for (const auto& shift : dec.super_shifts()) {
      Matrix piece = Matrix::Zero(rep.dim(), rep.dim());
      for (auto [k, l] : shift.pairs) block(piece, k, l) = block(j_rot, k, l);
      if (piece.norm() <= kPruneNorm) continue;
      out.jumps.push_back(TaggedJump{q * piece * q.adjoint(), shift.value});
    }
  }
  const double distance = liouvillian_distance(out.as_lindblad(), rep);
  if (distance > 1e-8) {
    throw Error(ErrorKind::NotWeaklySymmetric,
                "projection onto symmetry eigenspaces changes the generator (relative distance " +
                    std::to_string(distance) + ")");
  }
  return out;
}

Matrix effective_hamiltonian(const LindbladRep& rep) {
  Matrix h = rep.hamiltonian;
  for (const auto& j : rep.jumps) h -= 0.5 * kI * (j.adjoint() * j);
  return h;
}

Matrix effective_hamiltonian(const WeaklySymmetricRep& rep) {
  Matrix h = rep.hamiltonian;
  for (const auto& j : rep.jumps) h -= 0.5 * kI * (j.op.adjoint() * j.op);
  return h;
}

WeaklySymmetricRep apply_gauge(const WeaklySymmetricRep& wrep, const GaugeTransform& gauge) {
  const auto n_min = static_cast<Eigen::Index>(wrep.jumps.size());
  const Matrix& v = gauge.isometry;
  if (v.cols() != n_min) {
    throw Error(ErrorKind::DimensionMismatch, "gauge isometry has " + std::to_string(v.cols()) +
                                                  " columns for " + std::to_string(n_min) + " jumps");
  }
  if ((v.adjoint() * v - identity(n_min)).norm() > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "gauge matrix is not an isometry");
  }
  const LabelSpace& labels = wrep.labels;
  const Eigen::Index dim = wrep.dim();
  WeaklySymmetricRep out{wrep.hamiltonian, {}, labels, Provenance::Gauge};
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    std::optional<Label> shift;
    Matrix op = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < n_min; ++k) {
      if (std::abs(v(j, k)) <= 1e-12) continue;
      const Label& sk = wrep.jumps[static_cast<std::size_t>(k)].shift;
      if (shift && !labels.same(*shift, sk)) {
        throw Error(ErrorKind::MixesShiftClasses,
                    "row " + std::to_string(j) + " of the gauge mixes different super shifts");
      }
      shift = sk;
      op += v(j, k) * wrep.jumps[static_cast<std::size_t>(k)].op;
    }
    out.jumps.push_back(TaggedJump{std::move(op), shift.value_or(labels.zero())});
  }
  for (const auto& [j, a] : gauge.symmetric_shifts) {
    if (j < 0 || j >= static_cast<int>(out.jumps.size())) {
      throw Error(ErrorKind::InvalidArgument, "gauge shift refers to missing jump " + std::to_string(j));
    }
    auto& jump = out.jumps[static_cast<std::size_t>(j)];
    if (!labels.is_zero(jump.shift)) {
      throw Error(ErrorKind::ShiftOnAsymmetricJump,
                  "identity shift requested on jump " + std::to_string(j) + " with a nontrivial super shift");
    }
    out.hamiltonian -= 0.5 * kI * (std::conj(a) * jump.op - a * jump.op.adjoint());
    jump.op += a * identity(dim);
  }
  out.hamiltonian += gauge.energy_shift * identity(dim);
  out.hamiltonian = 0.5 * (out.hamiltonian + out.hamiltonian.adjoint()).eval();
  return out;
}

CertificateReport certify_support(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec) {
  if (wrep.labels.kinds() != dec.labels().kinds()) {
    throw Error(ErrorKind::InvalidArgument, "representation labels do not match the decomposition");
  }
  require_same_dim(wrep.hamiltonian, dec.change_of_basis(), "certify");
  CertificateReport report;
  const Matrix& q = dec.change_of_basis();
  const int num = dec.num_sectors();
  auto block_norm2 = [&](const Matrix& rot, int k, int l) {
    return rot.block(dec.offset(k), dec.offset(l), dec.sectors()[static_cast<std::size_t>(k)].dim(),
                     dec.sectors()[static_cast<std::size_t>(l)].dim())
        .squaredNorm();
  };

  {
    const Matrix h_rot = q.adjoint() * wrep.hamiltonian * q;
    double leak = 0.0;
    for (int k = 0; k < num; ++k) {
      for (int l = 0; l < num; ++l) {
        if (k != l) leak += block_norm2(h_rot, k, l);
      }
    }
    const double norm = wrep.hamiltonian.norm();
    report.support_residual = norm == 0.0 ? 0.0 : std::sqrt(leak) / norm;
  }

  for (const auto& jump : wrep.jumps) {
    const double norm = jump.op.norm();
    double support = 0.0;
    if (norm > 0.0) {
      const Matrix j_rot = q.adjoint() * jump.op * q;
      const auto shift = dec.find_shift(jump.shift);
      double leak = 0.0;
      for (int k = 0; k < num; ++k) {
        for (int l = 0; l < num; ++l) {
          if (!shift || dec.shift_of_pair(k, l) != *shift) leak += block_norm2(j_rot, k, l);
        }
      }
      support = std::sqrt(leak) / norm;
    }
    report.per_jump_support.push_back(support);
    report.support_residual = std::max(report.support_residual, support);
  }
  return report;
}

CertificateReport certify(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec,
                          const AbelianGroupSpec& group) {
  check_group_matches(wrep.labels, group);
  CertificateReport report = certify_support(wrep, dec);
  for (const auto& member : group.members) {
    report.hamiltonian_residual =
        std::max(report.hamiltonian_residual, eigenmatrix_defect(member, wrep.hamiltonian, 0.0));
  }
  for (const auto& jump : wrep.jumps) {
    double eig_res = 0.0;
    for (std::size_t m = 0; m < group.members.size(); ++m) {
      eig_res = std::max(eig_res, eigenmatrix_defect(group.members[m], jump.op, jump.shift[m]));
    }
    report.per_jump_eigenmatrix.push_back(eig_res);
    report.eigenmatrix_residual = std::max(report.eigenmatrix_residual, eig_res);
  }
  return report;
}

CertificateReport certify(const WeaklySymmetricRep& wrep, const AbelianGroupSpec& group) {
  return certify(wrep, joint_decompose(group), group);
}

CertificateReport certify(const WeaklySymmetricRep& wrep, const LindbladRep& rep,
                          const AbelianGroupSpec& group) {
  CertificateReport report = certify(wrep, group);
  report.liouvillian_residual = liouvillian_distance(wrep.as_lindblad(), rep);
  return report;
}

double liouvillian_distance(const LindbladRep& a, const LindbladRep& b) {
  require_same_dim(a.hamiltonian, b.hamiltonian, "liouvillian_distance");
  const Eigen::Index dim = a.dim();
  if (dim <= 32) {
    const Matrix la = build_dense(a);
    const Matrix lb = build_dense(b);
    const double scale = std::max(la.cwiseAbs().maxCoeff(), lb.cwiseAbs().maxCoeff());
    if (scale == 0.0) return 0.0;
    return (la - lb).cwiseAbs().maxCoeff() / scale;
  }
  // Randomized identity test on operator probes (fixed seed, deterministic).
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> normal;
  double diff = 0.0;
  double scale = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    Matrix x(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) x(i, j) = Complex(normal(gen), normal(gen));
    }
    const Matrix ya = apply_lindbladian(a, x);
    const Matrix yb = apply_lindbladian(b, x);
    diff = std::max(diff, (ya - yb).cwiseAbs().maxCoeff());
    scale = std::max({scale, ya.cwiseAbs().maxCoeff(), yb.cwiseAbs().maxCoeff()});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

}  // namespace weaksym
