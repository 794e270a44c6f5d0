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

#include "weaksym/liouville.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace weaksym {

namespace {

constexpr Eigen::Index kDenseLiouvilleMax = 4096;
constexpr double kCertifyTol = 1e-8;
constexpr double kNullTol = 1e-9;

void check_time(double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "propagation time " + std::to_string(t));
}

// Fixed-step RK4 with ||L|| h <= 0.1.
Vector rk4(const Matrix& l, const Vector& v0, double t) {
  const double norm = l.cwiseAbs().colwise().sum().maxCoeff();
  const int steps = std::max(1, static_cast<int>(std::ceil(norm * t / 0.1)));
  const double h = t / steps;
  Vector v = v0;
  for (int s = 0; s < steps; ++s) {
    const Vector k1 = l * v;
    const Vector k2 = l * (v + 0.5 * h * k1);
    const Vector k3 = l * (v + 0.5 * h * k2);
    const Vector k4 = l * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return v;
}

Vector evolve(const Matrix& l, const Vector& v, double t) {
  if (t == 0.0) return v;
  if (l.rows() <= kDenseLiouvilleMax) return expm_apply(l, v, t);
  return rk4(l, v, t);
}

Eigen::Index sector_dim(const SectorDecomposition& dec, int k) {
  return dec.sectors()[static_cast<std::size_t>(k)].dim();
}

}  // namespace

Vector vectorize(const Matrix& rho) {
  require_square(rho, "vectorize");
  const Eigen::Index d = rho.rows();
  Vector v(d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) v(k * d + l) = rho(k, l);
  }
  return v;
}

Matrix devectorize(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "devectorize: length " + std::to_string(v.size()) + " for dim " + std::to_string(dim));
  }
  Matrix rho(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l < dim; ++l) rho(k, l) = v(k * dim + l);
  }
  return rho;
}

Matrix build_dense(const LindbladRep& rep) {
  validate(rep);
  const Eigen::Index d = rep.dim();
  const Matrix one = identity(d);
  Matrix l = -kI * kron(rep.hamiltonian, one) + kI * kron(one, rep.hamiltonian.conjugate());
  for (const auto& j : rep.jumps) {
    const Matrix jdj = j.adjoint() * j;
    l += kron(j, j.conjugate()) - 0.5 * kron(jdj, one) - 0.5 * kron(one, jdj.transpose());
  }
  return l;
}

Matrix apply_lindbladian(const LindbladRep& rep, const Matrix& rho) {
  require_same_dim(rep.hamiltonian, rho, "apply_lindbladian");
  Matrix out = -kI * commutator(rep.hamiltonian, rho);
  for (const auto& j : rep.jumps) {
    const Matrix jdj = j.adjoint() * j;
    out += j * rho * j.adjoint() - 0.5 * (jdj * rho + rho * jdj);
  }
  return out;
}

BlockLiouvillian build_blocks(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec) {
  const CertificateReport report = certify_support(wrep, dec);
  if (report.support_residual > kCertifyTol) {
    throw Error(ErrorKind::NotCertified, "representation leaks outside its sector blocks (support residual " +
                                             std::to_string(report.support_residual) + ")");
  }
  const Eigen::Index d = dec.dim();
  const Matrix& q = dec.change_of_basis();
  const int num = dec.num_sectors();
  const auto& shifts = dec.super_shifts();

  BlockLiouvillian bl{dec, wrep, {}, {}, {}};
  bl.index_map.assign(static_cast<std::size_t>(d * d), {-1, 0});

  // Position of pair (k, l) inside its shift block.
  std::vector<Eigen::Index> pair_base(static_cast<std::size_t>(num * num), 0);
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    std::vector<Eigen::Index> indices;
    for (auto [k, l] : shifts[s].pairs) {
      pair_base[static_cast<std::size_t>(k * num + l)] = static_cast<Eigen::Index>(indices.size());
      for (Eigen::Index a = 0; a < sector_dim(dec, k); ++a) {
        for (Eigen::Index b = 0; b < sector_dim(dec, l); ++b) {
          const Eigen::Index flat = (dec.offset(k) + a) * d + dec.offset(l) + b;
          bl.index_map[static_cast<std::size_t>(flat)] = {static_cast<int>(s),
                                                          static_cast<Eigen::Index>(indices.size())};
          indices.push_back(flat);
        }
      }
    }
    const auto size = static_cast<Eigen::Index>(indices.size());
    bl.blocks.push_back(Matrix::Zero(size, size));
    bl.block_indices.push_back(std::move(indices));
  }

  auto sub = [&](const Matrix& m, int k, int l) {
    return m.block(dec.offset(k), dec.offset(l), sector_dim(dec, k), sector_dim(dec, l));
  };

  const Matrix heff = q.adjoint() * effective_hamiltonian(wrep) * q;
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    Matrix& block = bl.blocks[s];
    for (auto [k, l] : shifts[s].pairs) {
      const Eigen::Index base = pair_base[static_cast<std::size_t>(k * num + l)];
      const Eigen::Index dk = sector_dim(dec, k);
      const Eigen::Index dl = sector_dim(dec, l);
      block.block(base, base, dk * dl, dk * dl) +=
          -kI * kron(sub(heff, k, k), identity(dl)) + kI * kron(identity(dk), sub(heff, l, l).conjugate());
    }
  }

  for (const auto& jump : wrep.jumps) {
    const Matrix j_rot = q.adjoint() * jump.op * q;
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      Matrix& block = bl.blocks[s];
      for (auto [k, l] : shifts[s].pairs) {
        const auto kp = dec.shifted_sector(k, jump.shift);
        const auto lp = dec.shifted_sector(l, jump.shift);
        if (!kp || !lp) continue;
        if (dec.shift_of_pair(*kp, *lp) != static_cast<int>(s)) {
          throw Error(ErrorKind::NotCertified, "jump shift maps a coherence class onto another class");
        }
        const Eigen::Index src = pair_base[static_cast<std::size_t>(k * num + l)];
        const Eigen::Index dst = pair_base[static_cast<std::size_t>(*kp * num + *lp)];
        const Eigen::Index dk = sector_dim(dec, k);
        const Eigen::Index dl = sector_dim(dec, l);
        const Eigen::Index dkp = sector_dim(dec, *kp);
        const Eigen::Index dlp = sector_dim(dec, *lp);
        block.block(dst, src, dkp * dlp, dk * dl) +=
            kron(sub(j_rot, *kp, k), sub(j_rot, *lp, l).conjugate());
      }
    }
  }
  return bl;
}

Matrix assemble_rotated(const BlockLiouvillian& bl) {
  const Eigen::Index d = bl.dim();
  Matrix l = Matrix::Zero(d * d, d * d);
  for (std::size_t s = 0; s < bl.blocks.size(); ++s) {
    const auto& idx = bl.block_indices[s];
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) {
        l(idx[r], idx[c]) = bl.blocks[s](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
  }
  return l;
}

Matrix assemble_dense(const BlockLiouvillian& bl) {
  const Matrix& q = bl.decomposition.change_of_basis();
  const Matrix w = kron(q, q.conjugate());
  return w * assemble_rotated(bl) * w.adjoint();
}

Matrix propagate(const Matrix& liouvillian, const Matrix& rho0, double t) {
  check_time(t);
  require_square(rho0, "propagate");
  if (liouvillian.rows() != rho0.size() || liouvillian.cols() != rho0.size()) {
    throw Error(ErrorKind::DimensionMismatch, "propagate: generator does not match the state dimension");
  }
  if (t == 0.0) return rho0;
  return devectorize(evolve(liouvillian, vectorize(rho0), t), rho0.rows());
}

Matrix propagate(const BlockLiouvillian& bl, const Matrix& rho0, double t) {
  check_time(t);
  require_same_dim(bl.decomposition.change_of_basis(), rho0, "propagate");
  if (t == 0.0) return rho0;
  const Matrix& q = bl.decomposition.change_of_basis();
  const Vector v = vectorize(q.adjoint() * rho0 * q);
  Vector out = Vector::Zero(v.size());
  for (std::size_t s = 0; s < bl.blocks.size(); ++s) {
    const auto& idx = bl.block_indices[s];
    Vector part(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) part(static_cast<Eigen::Index>(i)) = v(idx[i]);
    if (part.squaredNorm() == 0.0) continue;
    part = evolve(bl.blocks[s], part, t);
    for (std::size_t i = 0; i < idx.size(); ++i) out(idx[i]) = part(static_cast<Eigen::Index>(i));
  }
  return q * devectorize(out, bl.dim()) * q.adjoint();
}

SteadyStateReport steady_state(const BlockLiouvillian& bl) {
  const SectorDecomposition& dec = bl.decomposition;
  const int s0 = dec.symmetric_shift();
  const Matrix& block = bl.blocks[static_cast<std::size_t>(s0)];
  const auto& idx = bl.block_indices[static_cast<std::size_t>(s0)];
  const Eigen::Index d = dec.dim();
  const Matrix& q = dec.change_of_basis();

  Eigen::ComplexEigenSolver<Matrix> solver(block, true);
  const auto& values = solver.eigenvalues();
  const double scale = std::max(block.norm(), 1e-300);

  auto to_state = [&](const Vector& v) {
    Vector full = Vector::Zero(d * d);
    for (std::size_t i = 0; i < idx.size(); ++i) full(idx[i]) = v(static_cast<Eigen::Index>(i));
    return Matrix(q * devectorize(full, d) * q.adjoint());
  };

  SteadyStateReport report;
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i)) < std::abs(values(best))) best = i;
    if (std::abs(values(i)) <= kNullTol * scale) {
      ++report.null_multiplicity;
      report.null_eigenvalues.push_back(values(i));
      const Vector& v = solver.eigenvectors().col(i);
      std::vector<int> sectors;
      for (int k = 0; k < dec.num_sectors(); ++k) {
        double w = 0.0;
        for (std::size_t p = 0; p < idx.size(); ++p) {
          const Eigen::Index row = idx[p] / d;
          const Eigen::Index col = idx[p] % d;
          if (row >= dec.offset(k) && row < dec.offset(k) + sector_dim(dec, k) && col >= dec.offset(k) &&
              col < dec.offset(k) + sector_dim(dec, k)) {
            w += std::norm(v(static_cast<Eigen::Index>(p)));
          }
        }
        if (std::sqrt(w) > 1e-9) sectors.push_back(k);
      }
      report.null_vector_sectors.push_back(std::move(sectors));
    }
  }

  Matrix rho = to_state(solver.eigenvectors().col(best));
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  report.state = rho;
  report.residual = apply_lindbladian(bl.wrep.as_lindblad(), rho).norm();
  if (report.null_multiplicity > 1) {
    throw DegenerateSteadyStateError(report, "symmetric block has a " +
                                                 std::to_string(report.null_multiplicity) +
                                                 "-dimensional null space");
  }
  return report;
}

}  // namespace weaksym
