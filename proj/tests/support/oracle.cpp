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

#include "oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix c = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix dagger(const Matrix& a) {
  Matrix d(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
  }
  return d;
}

}  // namespace

Matrix lindblad_action(const weaksym::LindbladRep& rep, const Matrix& rho) {
  const Complex i{0.0, 1.0};
  Matrix out = -i * (mul(rep.hamiltonian, rho) - mul(rho, rep.hamiltonian));
  for (const auto& j : rep.jumps) {
    const Matrix jd = dagger(j);
    const Matrix jdj = mul(jd, j);
    out += mul(mul(j, rho), jd) - 0.5 * (mul(jdj, rho) + mul(rho, jdj));
  }
  return out;
}

Matrix liouvillian(const weaksym::LindbladRep& rep) {
  const Eigen::Index d = rep.dim();
  Matrix l(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      Matrix unit = Matrix::Zero(d, d);
      unit(a, b) = 1.0;
      const Matrix image = lindblad_action(rep, unit);
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index m = 0; m < d; ++m) l(k * d + m, a * d + b) = image(k, m);
      }
    }
  }
  return l;
}

Matrix rk4_evolve(const weaksym::LindbladRep& rep, const Matrix& rho0, double t, int steps) {
  const double h = t / steps;
  Matrix rho = rho0;
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = lindblad_action(rep, rho);
    const Matrix k2 = lindblad_action(rep, rho + 0.5 * h * k1);
    const Matrix k3 = lindblad_action(rep, rho + 0.5 * h * k2);
    const Matrix k4 = lindblad_action(rep, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double rel_diff(const Matrix& a, const Matrix& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  return scale == 0.0 ? 0.0 : max_abs(a - b) / scale;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (d + d.adjoint()));
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return best;
}

Matrix Random::matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(), normal());
  }
  return m;
}

Matrix Random::hermitian(Eigen::Index dim) {
  const Matrix a = matrix(dim, dim);
  return 0.5 * (a + a.adjoint());
}

Matrix Random::unitary(Eigen::Index dim) {
  const Matrix a = matrix(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Vector Random::state(Eigen::Index dim) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(normal(), normal());
  return v / v.norm();
}

Matrix Random::density(Eigen::Index dim) {
  const Matrix a = matrix(dim, dim);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

RandomModel random_weak_model(Random& rng, Family family, int dim, int n_jumps) {
  const Complex i{0.0, 1.0};
  // Eigenvalue label per basis vector.
  std::vector<double> label(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    switch (family) {
      case Family::Z2: label[static_cast<std::size_t>(a)] = (a % 2) * weaksym::kPi; break;
      case Family::Z4: label[static_cast<std::size_t>(a)] = (a % 4) * weaksym::kPi / 2.0; break;
      case Family::U1: label[static_cast<std::size_t>(a)] = static_cast<double>(a % 3) - 1.0; break;
    }
  }
  const Matrix v = rng.unitary(dim);
  Matrix diag = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    diag(a, a) = family == Family::U1 ? Complex(label[static_cast<std::size_t>(a)])
                                      : std::exp(i * label[static_cast<std::size_t>(a)]);
  }
  const Matrix sym_op = v * diag * v.adjoint();

  auto same = [&](double x, double y) {
    if (family == Family::U1) return std::abs(x - y) < 1e-12;
    return weaksym::phase_distance(x, y) < 1e-12;
  };
  auto diff = [&](int a, int b) {
    const double d = label[static_cast<std::size_t>(a)] - label[static_cast<std::size_t>(b)];
    return family == Family::U1 ? d : weaksym::canonical_phase(d);
  };

  // Symmetric Hamiltonian.
  Matrix h = rng.hermitian(dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (!same(label[static_cast<std::size_t>(a)], label[static_cast<std::size_t>(b)])) h(a, b) = 0.0;
    }
  }
  weaksym::LindbladRep rep{v * h * v.adjoint(), {}};

  // Eigenmatrix jumps with randomly chosen shifts.
  for (int j = 0; j < n_jumps; ++j) {
    const int a0 = rng.integer(0, dim - 1);
    const int b0 = rng.integer(0, dim - 1);
    const double shift = diff(a0, b0);
    Matrix m = rng.matrix(dim, dim) * 0.6;
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        if (!same(diff(a, b), shift)) m(a, b) = 0.0;
      }
    }
    rep.jumps.push_back(v * m * v.adjoint());
  }
  // Unitary remixing leaves the generator unchanged.
  const Matrix w = rng.unitary(n_jumps);
  std::vector<Matrix> mixed;
  for (int j = 0; j < n_jumps; ++j) {
    Matrix op = Matrix::Zero(dim, dim);
    for (int k = 0; k < n_jumps; ++k) op += w(j, k) * rep.jumps[static_cast<std::size_t>(k)];
    mixed.push_back(std::move(op));
  }
  // Identity shifts compensated in the Hamiltonian.
  for (auto& op : mixed) {
    const Complex c(rng.normal() * 0.3, rng.normal() * 0.3);
    rep.hamiltonian -= 0.5 * i * (std::conj(c) * op - c * op.adjoint());
    op += c * Matrix::Identity(dim, dim);
  }
  rep.hamiltonian = 0.5 * (rep.hamiltonian + rep.hamiltonian.adjoint()).eval();
  rep.jumps = std::move(mixed);

  RandomModel out{rep, family == Family::U1 ? weaksym::SymmetrySpec::generator(0.5 * (sym_op + sym_op.adjoint()))
                                            : weaksym::SymmetrySpec::unitary(sym_op)};
  return out;
}

weaksym::GaugeTransform random_gauge(Random& rng, const weaksym::WeaklySymmetricRep& w, int extra_rows) {
  const auto n = static_cast<Eigen::Index>(w.jumps.size());
  auto at = [&](Eigen::Index a) -> const weaksym::Label& { return w.jumps[static_cast<std::size_t>(a)].shift; };
  std::vector<std::vector<Eigen::Index>> classes;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (done[static_cast<std::size_t>(a)]) continue;
    auto& cls = classes.emplace_back();
    for (Eigen::Index b = a; b < n; ++b) {
      if (w.labels.same(at(a), at(b))) {
        cls.push_back(b);
        done[static_cast<std::size_t>(b)] = true;
      }
    }
  }
  weaksym::GaugeTransform g{Matrix::Zero(n + (n > 0 ? extra_rows : 0), n), {}, rng.uniform(-1.0, 1.0)};
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto m = static_cast<Eigen::Index>(classes[c].size());
    const Eigen::Index rows = m + (c == 0 ? extra_rows : 0);
    const Matrix u = rng.unitary(rows);
    const bool symmetric = w.labels.is_zero(at(classes[c][0]));
    for (Eigen::Index x = 0; x < rows; ++x) {
      for (Eigen::Index y = 0; y < m; ++y) g.isometry(row + x, classes[c][static_cast<std::size_t>(y)]) = u(x, y);
      if (symmetric) g.symmetric_shifts[static_cast<int>(row + x)] = Complex(rng.normal(), rng.normal());
    }
    row += rows;
  }
  return g;
}

weaksym::LindbladRep random_rep(Random& rng, int dim, int n_jumps) {
  weaksym::LindbladRep rep{rng.hermitian(dim), {}};
  for (int j = 0; j < n_jumps; ++j) rep.jumps.push_back(rng.matrix(dim, dim) * 0.5);
  return rep;
}

}  // namespace oracle
