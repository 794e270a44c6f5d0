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

// Dense complex linear algebra shared by every other module. Operators are
// plain Eigen matrices; vectorization is row-major everywhere (flat index
// k*dim + l <-> matrix entry (k, l)).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string_view>

namespace weaksym {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Default relative tolerance for "operator equality".
inline constexpr double kOperatorTol = 1e-10;

struct HermitianEigen {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns
};

struct UnitaryEigen {
  RealVector phases;  // in (-pi, pi], ascending
  Matrix vectors;     // orthonormal columns
};

HermitianEigen hermitian_eig(const Matrix& a, double tol = kOperatorTol);
UnitaryEigen unitary_eig(const Matrix& u, double tol = kOperatorTol);

// Matrix exponential e^{a} (scaling and squaring with Pade approximants).
Matrix expm(const Matrix& a);

// e^{t a} v. Dense exponentiation for small operators, truncated Taylor
// action with scaling for large ones.
Vector expm_apply(const Matrix& a, const Vector& v, double t);

// Tr(a^dagger b).
Complex frobenius_inner(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(Eigen::Index dim);
Matrix commutator(const Matrix& a, const Matrix& b);

// ||a - a^dagger||_F / ||a||_F (0 for the zero matrix).
double hermiticity_defect(const Matrix& a);
// ||u^dagger u - 1||_F.
double unitarity_defect(const Matrix& u);

// Map any angle into (-pi, pi]; -pi itself becomes +pi.
double canonical_phase(double phi);
// Distance on the unit circle between two phases, in [0, pi].
double phase_distance(double a, double b);

void require_square(const Matrix& a, std::string_view what);
void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what);

// Throws NotHermitian unless ||rho - rho^dagger||, |Tr rho - 1| and the most
// negative eigenvalue are all within tol.
void validate_density_matrix(const Matrix& rho, double tol = 1e-9);

namespace ops {

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
// Lowering |0><1| and raising |1><0| in the computational basis, so that
// amplitude damping with sigma_minus() relaxes to |0>.
Matrix sigma_minus();
Matrix sigma_plus();
// |i><j| in dimension dim.
Matrix matrix_unit(Eigen::Index dim, Eigen::Index i, Eigen::Index j);

}  // namespace ops

}  // namespace weaksym
