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

#include "weaksym/models.hpp"

#include "weaksym/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace weaksym::models {

namespace {

Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Index map of T^power.
std::vector<Eigen::Index> translation_map(int n_sites, int local_dim, int power) {
  const Eigen::Index dim = ipow(local_dim, n_sites);
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index x = i;
    for (int p = 0; p < power; ++p) x = translate_index(x, n_sites, local_dim);
    map[static_cast<std::size_t>(i)] = x;
  }
  return map;
}

// P m P^dagger for the permutation P|a> = |map[a]>.
Matrix permute(const Matrix& m, const std::vector<Eigen::Index>& map) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      out(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]) = m(a, b);
    }
  }
  return out;
}

Matrix pauli(char axis) {
  switch (axis) {
    case 'x': return ops::sigma_x();
    case 'y': return ops::sigma_y();
    case 'z': return ops::sigma_z();
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, std::string("unknown spin axis ") + axis);
}

Matrix plane_wave(const std::vector<const Matrix*>& site_ops, int k) {
  const int n = static_cast<int>(site_ops.size());
  Matrix out = Matrix::Zero(site_ops.front()->rows(), site_ops.front()->cols());
  for (int j = 1; j <= n; ++j) {
    out += std::polar(1.0, -2.0 * kPi * j * k / n) * *site_ops[static_cast<std::size_t>(j - 1)];
  }
  return out / std::sqrt(static_cast<double>(n));
}

}  // namespace

Eigen::Index chain_dim(int n_sites, int local_dim, Eigen::Index cap) {
  if (n_sites < 1 || local_dim < 1) {
    throw Error(ErrorKind::InvalidArgument, "chain needs at least one site and local dimension >= 1");
  }
  Eigen::Index dim = 1;
  for (int i = 0; i < n_sites; ++i) {
    dim *= local_dim;
    if (dim > cap) {
      throw Error(ErrorKind::DimCap, std::to_string(local_dim) + "^" + std::to_string(n_sites) +
                                         " exceeds the dimension cap " + std::to_string(cap));
    }
  }
  return dim;
}

Eigen::Index translate_index(Eigen::Index index, int n_sites, int local_dim) {
  const Eigen::Index last = index % local_dim;
  return last * ipow(local_dim, n_sites - 1) + index / local_dim;
}

Matrix translation_operator(int n_sites, int local_dim) {
  const Eigen::Index dim = ipow(local_dim, n_sites);
  Matrix t = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) t(translate_index(i, n_sites, local_dim), i) = 1.0;
  return t;
}

Matrix embed_sites(const Matrix& op, int first, int n_sites, int local_dim) {
  int range = 0;
  for (Eigen::Index d = 1; d < op.rows(); d *= local_dim) ++range;
  if (ipow(local_dim, range) != op.rows() || op.rows() != op.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "site operator dimension is not a power of the local dimension");
  }
  if (range > n_sites) throw Error(ErrorKind::DimensionMismatch, "site operator spans more sites than the chain");
  const Matrix placed = kron(op, identity(ipow(local_dim, n_sites - range)));
  const int shift = ((first % n_sites) + n_sites) % n_sites;
  if (shift == 0) return placed;
  return permute(placed, translation_map(n_sites, local_dim, shift));
}

ChainModel build_chain(const ChainSpec& spec) {
  const Eigen::Index dim = chain_dim(spec.n_sites, spec.local_dim, spec.dim_cap);
  ChainModel model;
  model.n_sites = spec.n_sites;
  model.local_dim = spec.local_dim;
  model.n_types = static_cast<int>(spec.local_jumps.size());
  model.translation = SymmetrySpec::unitary(translation_operator(spec.n_sites, spec.local_dim));
  model.rep.hamiltonian = Matrix::Zero(dim, dim);
  for (const auto& term : spec.hamiltonian_terms) {
    for (int j = 0; j < spec.n_sites; ++j) model.rep.hamiltonian += embed_sites(term.op, j, spec.n_sites, spec.local_dim);
  }
  for (const auto& jump : spec.local_jumps) {
    if (jump.op.rows() != spec.local_dim || jump.op.cols() != spec.local_dim) {
      throw Error(ErrorKind::DimensionMismatch, "local jump must act on a single site");
    }
    if (!(jump.rate >= 0.0)) throw Error(ErrorKind::InvalidArgument, "jump rates must be non-negative");
    for (int j = 0; j < spec.n_sites; ++j) {
      model.rep.jumps.push_back(std::sqrt(jump.rate) * embed_sites(jump.op, j, spec.n_sites, spec.local_dim));
    }
  }
  validate(model.rep);
  return model;
}

WeaklySymmetricRep plane_wave_jumps(const ChainModel& chain) {
  const int n = chain.n_sites;
  const auto shift_map = translation_map(n, chain.local_dim, 1);
  WeaklySymmetricRep out{chain.rep.hamiltonian, {}, LabelSpace({SymmetryKind::Unitary}, {kDefaultClusterTol}),
                         Provenance::Builder};
  for (int alpha = 0; alpha < chain.n_types; ++alpha) {
    std::vector<const Matrix*> sites;
    for (int j = 0; j < n; ++j) sites.push_back(&chain.rep.jumps[static_cast<std::size_t>(alpha * n + j)]);
    for (int j = 0; j < n; ++j) {
      const Matrix& cur = *sites[static_cast<std::size_t>(j)];
      const Matrix& next = *sites[static_cast<std::size_t>((j + 1) % n)];
      if ((permute(cur, shift_map) - next).norm() > 1e-10 * std::max(1.0, cur.norm())) {
        throw Error(ErrorKind::NonUniform, "jump type " + std::to_string(alpha) +
                                               " is not a translate of itself at site " + std::to_string(j + 1));
      }
    }
    for (int k = 1; k <= n; ++k) {
      out.jumps.push_back(TaggedJump{plane_wave(sites, k), {canonical_phase(2.0 * kPi * k / n)}});
    }
  }
  return out;
}

MomentumBasis momentum_basis(int n_sites, int local_dim, Eigen::Index cap) {
  const Eigen::Index dim = chain_dim(n_sites, local_dim, cap);
  MomentumBasis mb;
  mb.change_of_basis = Matrix::Zero(dim, dim);
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  Eigen::Index col = 0;
  for (Eigen::Index s = 0; s < dim; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Eigen::Index> orbit{s};
    seen[static_cast<std::size_t>(s)] = true;
    for (Eigen::Index x = translate_index(s, n_sites, local_dim); x != s; x = translate_index(x, n_sites, local_dim)) {
      orbit.push_back(x);
      seen[static_cast<std::size_t>(x)] = true;
    }
    const int len = static_cast<int>(orbit.size());
    const int cycle = static_cast<int>(mb.representatives.size());
    mb.representatives.push_back(s);
    mb.cycle_lengths.push_back(len);
    const double norm = 1.0 / std::sqrt(static_cast<double>(len));
    for (int m = 0; m < len; ++m) {
      for (int r = 0; r < len; ++r) {
        mb.change_of_basis(orbit[static_cast<std::size_t>(r)], col) = norm * std::polar(1.0, -2.0 * kPi * m * r / len);
      }
      mb.column_cycle.push_back(cycle);
      mb.column_phase.push_back(canonical_phase(2.0 * kPi * m / len));
      ++col;
    }
  }
  return mb;
}

SectorDecomposition momentum_decomposition(const MomentumBasis& basis) {
  std::vector<double> phases;
  for (double p : basis.column_phase) {
    const bool known = std::any_of(phases.begin(), phases.end(), [&](double q) { return phase_distance(p, q) <= 1e-9; });
    if (!known) phases.push_back(p);
  }
  std::sort(phases.begin(), phases.end());
  std::vector<Sector> sectors;
  for (double p : phases) {
    std::vector<Eigen::Index> cols;
    for (std::size_t c = 0; c < basis.column_phase.size(); ++c) {
      if (phase_distance(basis.column_phase[c], p) <= 1e-9) cols.push_back(static_cast<Eigen::Index>(c));
    }
    Matrix b(basis.change_of_basis.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = basis.change_of_basis.col(cols[i]);
    sectors.push_back(Sector{static_cast<int>(sectors.size()), {p}, std::move(b)});
  }
  return SectorDecomposition(LabelSpace({SymmetryKind::Unitary}, {kDefaultClusterTol}), std::move(sectors));
}

int max_column_nonzeros(const Matrix& op, double threshold) {
  int best = 0;
  for (Eigen::Index c = 0; c < op.cols(); ++c) {
    int count = 0;
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
      if (std::abs(op(r, c)) > threshold) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

SparsityReport sparsity_census(const Matrix& op_momentum, int n_sites, int z_alpha) {
  SparsityReport report;
  report.max_nonzeros = max_column_nonzeros(op_momentum);
  report.bound = static_cast<long long>(n_sites) * n_sites * n_sites * z_alpha;
  if (report.max_nonzeros > report.bound) {
    throw Error(ErrorKind::BoundViolated, "column with " + std::to_string(report.max_nonzeros) +
                                              " nonzeros exceeds the bound " + std::to_string(report.bound));
  }
  return report;
}

Matrix spin_operator(char axis, int site, int n_spins) {
  if (site < 0 || site >= n_spins) throw Error(ErrorKind::InvalidArgument, "spin index out of range");
  return kron(kron(identity(ipow(2, site)), 0.5 * pauli(axis)), identity(ipow(2, n_spins - site - 1)));
}

SpinModel build_spin_model(const SpinModelSpec& spec) {
  const int n = spec.n_spins;
  const Eigen::Index dim = chain_dim(n, 2, spec.dim_cap);
  const Eigen::MatrixXd v = spec.v.size() == 0 ? Eigen::MatrixXd::Zero(n, n) : spec.v;
  if (v.rows() != n || v.cols() != n) throw Error(ErrorKind::DimensionMismatch, "V must be n x n");
  if ((v - v.transpose()).norm() > 1e-12 * std::max(1.0, v.norm())) {
    throw Error(ErrorKind::InvalidArgument, "V must be symmetric");
  }
  const auto n4 = static_cast<std::size_t>(n) * n * n * n;
  if (!spec.w.empty() && spec.w.size() != n4) throw Error(ErrorKind::DimensionMismatch, "W must have n^4 entries");
  if (spec.rates.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::DimensionMismatch, "one rate per spin");
  for (double r : spec.rates) {
    if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rates must be non-negative");
  }

  std::vector<std::array<Matrix, 3>> s(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    s[static_cast<std::size_t>(j)] = {spin_operator('x', j, n), spin_operator('y', j, n), spin_operator('z', j, n)};
  }
  std::vector<Matrix> dot(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Matrix d = Matrix::Zero(dim, dim);
      for (int a = 0; a < 3; ++a) d += s[static_cast<std::size_t>(j)][a] * s[static_cast<std::size_t>(k)][a];
      dot[static_cast<std::size_t>(j * n + k)] = std::move(d);
    }
  }

  SpinModel model;
  model.n_spins = n;
  model.rep.hamiltonian = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) model.rep.hamiltonian += v(j, k) * dot[static_cast<std::size_t>(j * n + k)];
  }
  for (std::size_t idx = 0; idx < spec.w.size(); ++idx) {
    if (spec.w[idx] == 0.0) continue;
    const std::size_t jk = idx / static_cast<std::size_t>(n * n);
    const std::size_t lm = idx % static_cast<std::size_t>(n * n);
    const Matrix& a = dot[jk];
    const Matrix& b = dot[lm];
    model.rep.hamiltonian += 0.5 * spec.w[idx] * (a * b + b * a);
  }
  Matrix sz = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    sz += s[static_cast<std::size_t>(j)][2];
    for (int a = 0; a < 3; ++a) {
      model.rep.jumps.push_back(std::sqrt(spec.rates[static_cast<std::size_t>(j)]) * s[static_cast<std::size_t>(j)][a]);
    }
  }
  model.s_z = SymmetrySpec::generator(sz);
  model.translation = SymmetrySpec::unitary(translation_operator(n, 2));
  validate(model.rep);
  return model;
}

WeaklySymmetricRep ladder_jumps(const SpinModel& model) {
  if (model.rep.jumps.size() != static_cast<std::size_t>(3 * model.n_spins)) {
    throw Error(ErrorKind::InvalidArgument, "expected x, y, z jumps on every spin");
  }
  WeaklySymmetricRep out{model.rep.hamiltonian, {}, LabelSpace({SymmetryKind::Generator}, {kDefaultClusterTol}),
                         Provenance::Builder};
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < model.n_spins; ++j) {
    const Matrix& jx = model.rep.jumps[static_cast<std::size_t>(3 * j)];
    const Matrix& jy = model.rep.jumps[static_cast<std::size_t>(3 * j + 1)];
    const Matrix& jz = model.rep.jumps[static_cast<std::size_t>(3 * j + 2)];
    out.jumps.push_back(TaggedJump{r * (jx + kI * jy), {1.0}});
    out.jumps.push_back(TaggedJump{r * (jx - kI * jy), {-1.0}});
    out.jumps.push_back(TaggedJump{jz, {0.0}});
  }
  return out;
}

WeaklySymmetricRep translation_ladder_jumps(const SpinModel& model) {
  const WeaklySymmetricRep ladder = ladder_jumps(model);
  const int n = model.n_spins;
  // Uniform rates: every site's J_z must have the same norm.
  const double ref = ladder.jumps[2].op.norm();
  for (int j = 1; j < n; ++j) {
    if (std::abs(ladder.jumps[static_cast<std::size_t>(3 * j + 2)].op.norm() - ref) > 1e-12 * std::max(1.0, ref)) {
      throw Error(ErrorKind::NonUniform, "depolarization rates differ between spins");
    }
  }
  WeaklySymmetricRep out{model.rep.hamiltonian, {},
                         LabelSpace({SymmetryKind::Unitary, SymmetryKind::Generator},
                                    {kDefaultClusterTol, kDefaultClusterTol}),
                         Provenance::Builder};
  const double gaps[3] = {1.0, -1.0, 0.0};
  for (int alpha = 0; alpha < 3; ++alpha) {
    std::vector<const Matrix*> sites;
    for (int j = 0; j < n; ++j) sites.push_back(&ladder.jumps[static_cast<std::size_t>(3 * j + alpha)].op);
    for (int k = 1; k <= n; ++k) {
      out.jumps.push_back(TaggedJump{plane_wave(sites, k), {canonical_phase(2.0 * kPi * k / n), gaps[alpha]}});
    }
  }
  return out;
}

LindbladRep amplitude_damping(double gamma, double delta) {
  return {0.5 * delta * ops::sigma_z(), {std::sqrt(gamma) * ops::sigma_minus()}};
}

LindbladRep driven_damped(double omega, double gamma) {
  return {omega * ops::sigma_x(), {std::sqrt(gamma) * ops::sigma_minus()}};
}

LindbladRep dephasing(double gamma) { return {Matrix::Zero(2, 2), {std::sqrt(gamma) * ops::sigma_z()}}; }

LindbladRep depolarizing(double gamma) {
  const double g = std::sqrt(gamma);
  return {Matrix::Zero(2, 2), {g * ops::sigma_x(), g * ops::sigma_y(), g * ops::sigma_z()}};
}

std::vector<Fixture> standard_fixtures() {
  std::vector<Fixture> out;
  const SymmetrySpec z2 = SymmetrySpec::unitary(ops::sigma_z());
  out.push_back({"amplitude_damping", amplitude_damping(1.0, 0.7), z2});
  out.push_back({"dephasing", dephasing(0.8), z2});
  out.push_back({"depolarizing", depolarizing(0.5), z2});
  out.push_back({"driven_damped", driven_damped(1.0, 1.0), SymmetrySpec::unitary(identity(2))});

  for (int n : {2, 3}) {
    ChainSpec spec;
    spec.n_sites = n;
    spec.hamiltonian_terms.push_back({0.4 * ops::sigma_z(), 1});
    spec.hamiltonian_terms.push_back({0.3 * kron(ops::sigma_z(), ops::sigma_z()), 2});
    spec.local_jumps.push_back({ops::sigma_minus(), 1.0});
    const ChainModel chain = build_chain(spec);
    out.push_back({"chain_n" + std::to_string(n), chain.rep, chain.translation});
  }

  SpinModelSpec spin;
  spin.n_spins = 2;
  spin.v = Eigen::MatrixXd::Constant(2, 2, 0.5);
  spin.rates = {0.6, 0.6};
  const SpinModel model = build_spin_model(spin);
  out.push_back({"spin_n2_sz", model.rep, model.s_z});
  out.push_back({"spin_n2_t_sz", model.rep, AbelianGroupSpec({model.translation, model.s_z})});
  return out;
}

}  // namespace weaksym::models
