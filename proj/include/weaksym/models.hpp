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

// Model builders: translation-invariant chains with plane-wave jumps and
// momentum bases, depolarized spin models with ladder jumps, and small
// single-qubit fixtures.

#include "weaksym/lindblad_rep.hpp"
#include "weaksym/representation.hpp"
#include "weaksym/symmetry.hpp"

#include <string>
#include <vector>

namespace weaksym::models {

inline constexpr Eigen::Index kDefaultDimCap = 4096;

// A term acting on `op.rows() == local_dim^range` consecutive sites, placed
// periodically on every site.
struct SiteTerm {
  Matrix op;
  int range = 1;
};

struct LocalJump {
  Matrix op;  // local_dim x local_dim
  double rate = 1.0;
};

struct ChainSpec {
  int n_sites = 1;
  int local_dim = 2;
  std::vector<SiteTerm> hamiltonian_terms;
  std::vector<LocalJump> local_jumps;
  Eigen::Index dim_cap = kDefaultDimCap;
};

struct ChainModel {
  LindbladRep rep;  // jumps ordered type-major: index = alpha * n_sites + site
  SymmetrySpec translation;
  int n_sites = 1;
  int local_dim = 2;
  int n_types = 0;
};

// Checked d^N, throws DimCap.
Eigen::Index chain_dim(int n_sites, int local_dim, Eigen::Index cap = kDefaultDimCap);

// T |s_1 ... s_N> = |s_N s_1 ... s_{N-1}>; site 1 is the most significant digit.
Matrix translation_operator(int n_sites, int local_dim);
Eigen::Index translate_index(Eigen::Index index, int n_sites, int local_dim);

// op (acting on sites first..first+range-1, periodic) embedded in the chain.
Matrix embed_sites(const Matrix& op, int first, int n_sites, int local_dim);

ChainModel build_chain(const ChainSpec& spec);

// Fourier combinations N^{-1/2} sum_j e^{-i j 2 pi k / N} J_j (j, k = 1..N)
// tagged with the translation phase 2 pi k / N. Throws NonUniform.
WeaklySymmetricRep plane_wave_jumps(const ChainModel& chain);

struct MomentumBasis {
  std::vector<Eigen::Index> representatives;  // smallest product index of each cycle
  std::vector<int> cycle_lengths;
  std::vector<int> column_cycle;     // cycle of each column
  std::vector<double> column_phase;  // translation eigenphase of each column
  Matrix change_of_basis;            // columns are the momentum states
};

MomentumBasis momentum_basis(int n_sites, int local_dim, Eigen::Index cap = kDefaultDimCap);
// Sectors grouped by translation phase, ascending.
SectorDecomposition momentum_decomposition(const MomentumBasis& basis);

// Largest number of entries above threshold in any column.
int max_column_nonzeros(const Matrix& op, double threshold = 1e-12);

struct SparsityReport {
  int max_nonzeros = 0;
  long long bound = 0;
};

// Counts nonzeros per column of an operator already in the momentum basis
// and checks the N^3 z bound. Throws BoundViolated.
SparsityReport sparsity_census(const Matrix& op_momentum, int n_sites, int z_alpha);

struct SpinModelSpec {
  int n_spins = 1;
  Eigen::MatrixXd v;        // n x n, symmetric
  std::vector<double> w;    // n^4 entries, index ((j n + k) n + l) n + m; empty = 0
  std::vector<double> rates;  // lambda_j >= 0
  Eigen::Index dim_cap = kDefaultDimCap;
};

struct SpinModel {
  LindbladRep rep;  // jumps ordered site-major: x, y, z per site
  SymmetrySpec s_z;
  SymmetrySpec translation;
  int n_spins = 1;
};

// S_alpha^(j) = sigma_alpha / 2 on spin j.
Matrix spin_operator(char axis, int site, int n_spins);

SpinModel build_spin_model(const SpinModelSpec& spec);

// Per site: J_+ = (J_x + i J_y)/sqrt2 (shift +1), J_- (shift -1), J_z (shift 0).
WeaklySymmetricRep ladder_jumps(const SpinModel& model);

// Plane-wave ladder jumps for the group {T, S_z}; labels are
// (translation phase, S_z gap). Throws NonUniform for site-dependent rates.
WeaklySymmetricRep translation_ladder_jumps(const SpinModel& model);

// ---------------------------------------------------------------- fixtures

// H = delta sigma_z / 2, J = sqrt(gamma) sigma_minus.
LindbladRep amplitude_damping(double gamma = 1.0, double delta = 0.0);
// H = omega sigma_x, J = sqrt(gamma) sigma_minus.
LindbladRep driven_damped(double omega = 1.0, double gamma = 1.0);
// H = 0, J = sqrt(gamma) sigma_z.
LindbladRep dephasing(double gamma = 1.0);
// H = 0, J = sqrt(gamma) sigma_{x,y,z}.
LindbladRep depolarizing(double gamma = 1.0);

struct Fixture {
  std::string name;
  LindbladRep rep;
  AbelianGroupSpec group;
};

// Weakly symmetric fixtures used across tests and the CLI.
std::vector<Fixture> standard_fixtures();

}  // namespace weaksym::models
