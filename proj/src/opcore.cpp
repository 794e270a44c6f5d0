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

#include "weaksym/opcore.hpp"

#include "weaksym/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace weaksym {

namespace {

constexpr Eigen::Index kDenseExpmMaxDim = 128;

std::string dims(const Matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

void require_square(const Matrix& a, std::string_view what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected a non-empty square matrix, got " + dims(a));
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + dims(a) + " vs " + dims(b));
  }
}

double hermiticity_defect(const Matrix& a) {
  const double norm = a.norm();
  if (norm == 0.0) return 0.0;
  return (a - a.adjoint()).norm() / norm;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

double canonical_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double phase_distance(double a, double b) {
  return std::abs(canonical_phase(a - b));
}

HermitianEigen hermitian_eig(const Matrix& a, double tol) {
  require_square(a, "hermitian_eig");
  if (hermiticity_defect(a) > tol) {
    throw Error(ErrorKind::NotHermitian,
                "hermitian_eig: relative defect " + std::to_string(hermiticity_defect(a)));
  }
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NotHermitian, "hermitian_eig: eigensolver did not converge");
  }
  const Eigen::Index n = a.rows();
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

UnitaryEigen unitary_eig(const Matrix& u, double tol) {
  require_square(u, "unitary_eig");
  if (unitarity_defect(u) > tol) {
    throw Error(ErrorKind::NotUnitary,
                "unitary_eig: ||U^dagger U - 1||_F = " + std::to_string(unitarity_defect(u)));
  }
  // A unitary is normal, so its complex Schur form is diagonal and the Schur
  // vectors are an orthonormal eigenbasis, also inside degenerate eigenspaces.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::NotUnitary, "unitary_eig: Schur decomposition did not converge");
  }
  const Eigen::Index n = u.rows();
  const Matrix& t = schur.matrixT();
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    phases[static_cast<std::size_t>(i)] = canonical_phase(std::arg(t(i, i)));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return phases[static_cast<std::size_t>(x)] < phases[static_cast<std::size_t>(y)];
  });
  UnitaryEigen out;
  out.phases.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.phases(i) = phases[static_cast<std::size_t>(src)];
    out.vectors.col(i) = schur.matrixU().col(src);
  }
  return out;
}

Matrix expm(const Matrix& a) {
  require_square(a, "expm");
  return a.exp();
}

Vector expm_apply(const Matrix& a, const Vector& v, double t) {
  require_square(a, "expm_apply");
  if (a.cols() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "expm_apply: operator " + dims(a) + " vs vector " + std::to_string(v.size()));
  }
  if (t == 0.0) return v;
  if (a.rows() <= kDenseExpmMaxDim) {
    return (t * a).exp() * v;
  }
  // Taylor action: split [0, t] into s substeps with ||t a / s||_1 <= 1.
  const double norm1 = (t * a).cwiseAbs().colwise().sum().maxCoeff();
  const int steps = std::max(1, static_cast<int>(std::ceil(norm1)));
  const Matrix step = (t / steps) * a;
  Vector w = v;
  for (int s = 0; s < steps; ++s) {
    Vector term = w;
    Vector acc = w;
    for (int k = 1; k <= 80; ++k) {
      term = step * term / static_cast<double>(k);
      acc += term;
      if (term.lpNorm<1>() <= 1e-17 * acc.lpNorm<1>()) break;
    }
    w = acc;
  }
  return w;
}

Complex frobenius_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "frobenius_inner");
  // Tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

void validate_density_matrix(const Matrix& rho, double tol) {
  require_square(rho, "density matrix");
  if ((rho - rho.adjoint()).norm() > tol) {
    throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > tol) {
    throw Error(ErrorKind::NotHermitian, "density matrix trace differs from 1");
  }
  const Matrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorKind::NotHermitian, "density matrix has a negative eigenvalue");
  }
}

namespace ops {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0.0, -kI,
       kI, 0.0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

Matrix sigma_minus() { return matrix_unit(2, 0, 1); }
Matrix sigma_plus() { return matrix_unit(2, 1, 0); }

Matrix matrix_unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace ops

}  // namespace weaksym
