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

// Quantum-jump Monte Carlo: waiting-time sampling under the effective
// Hamiltonian, jump selection by instantaneous rate, and trajectories that
// are either full-space or confined to symmetry sectors.

#include "weaksym/lindblad_rep.hpp"
#include "weaksym/representation.hpp"
#include "weaksym/symmetry.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace weaksym {

// Sector-block pieces of one jump: applied to a state in sector `source`, the
// jump lands in `target` via `block` (dim_target x dim_source).
struct SectorTransition {
  int jump = 0;
  int target = 0;
  Matrix block;
};

class QjmcModel {
 public:
  // Plain unraveling of a representation: one sector, the whole space.
  static QjmcModel full_space(const LindbladRep& rep);
  // Sector-confined unraveling. Throws NotCertified / ShiftLeavesSpectrum.
  static QjmcModel sectored(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec);

  const SectorDecomposition& decomposition() const { return dec_; }
  const Matrix& heff(int sector) const { return heff_[static_cast<std::size_t>(sector)]; }
  const std::vector<SectorTransition>& transitions(int source) const {
    return transitions_[static_cast<std::size_t>(source)];
  }
  int num_jumps() const { return static_cast<int>(shifts_.size()); }
  const Label& shift(int jump) const { return shifts_[static_cast<std::size_t>(jump)]; }
  Eigen::Index dim() const { return dec_.dim(); }

 private:
  SectorDecomposition dec_;
  std::vector<Matrix> heff_;
  std::vector<std::vector<SectorTransition>> transitions_;
  std::vector<Label> shifts_;
};

struct SectorState {
  int sector = 0;
  Vector amplitudes;  // coordinates in the sector basis
};

// Sector index -> amplitudes in that sector's basis; absent sectors are zero.
using SectorSuperposition = std::map<int, Vector>;

SectorSuperposition as_superposition(const SectorState& state);
// Coordinates of a full-space vector in the sectors of `dec` (components below
// 1e-14 dropped).
SectorSuperposition split_into_sectors(const SectorDecomposition& dec, const Vector& psi);
// Full-space vector Q a.
Vector embed(const SectorDecomposition& dec, const SectorSuperposition& state);
double squared_norm(const SectorSuperposition& state);

struct WaitingTime {
  bool censored = false;
  double time = 0.0;          // jump time, or t_max when censored
  SectorSuperposition state;  // unnormalized state at `time`
};

// Called at every integration checkpoint (including the endpoints) with the
// time since the segment start and the unnormalized state.
using CheckpointObserver = std::function<void(double, const SectorSuperposition&)>;

// Smallest t with ||e^{-i t H_eff} psi||^2 = u, located by checkpoint
// bracketing and bisection. Throws InvalidU / NormIncreased.
WaitingTime sample_waiting_time(const QjmcModel& model, const SectorSuperposition& psi, double u,
                                double t_max, const CheckpointObserver& observer = {});
WaitingTime sample_waiting_time(const Matrix& heff, const Vector& psi, double u, double t_max);

// Instantaneous rate of each jump for the (not necessarily normalized) state.
std::vector<double> jump_rates(const QjmcModel& model, const SectorSuperposition& psi);
// Index drawn with probability rate_j / sum(rates), u in (0, 1]. Throws
// ZeroTotalRate when the total is below 1e-14.
int select_jump(const std::vector<double>& rates, double u);
// Applies jump j and renormalizes.
SectorSuperposition apply_jump(const QjmcModel& model, const SectorSuperposition& psi, int jump);

struct JumpEvent {
  double time = 0.0;
  int jump_index = 0;
  Label shift;
  std::vector<std::pair<int, int>> sector_moves;  // (sector before, sector after) per component
};

struct Snapshot {
  double time = 0.0;
  SectorSuperposition state;  // normalized
};

struct TrajectoryRecord {
  std::vector<JumpEvent> events;
  std::vector<Snapshot> samples;
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
  double censored_at = 0.0;
};

struct TrajectoryOptions {
  std::vector<double> sample_times;  // ascending, within [0, t_final]
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
};

TrajectoryRecord run_trajectory_general(const QjmcModel& model, const SectorSuperposition& start,
                                        double t_final, const TrajectoryOptions& options);
TrajectoryRecord run_trajectory(const LindbladRep& rep, const Vector& psi0, double t_final,
                                const TrajectoryOptions& options);
TrajectoryRecord run_trajectory_sectored(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec,
                                         const SectorState& start, double t_final,
                                         const TrajectoryOptions& options);

struct EnsembleConfig {
  std::vector<double> times;
  int n_traj = 1;
  std::uint64_t master_seed = 0;
  std::vector<Matrix> observables;
  int workers = 1;
  bool keep_records = false;
};

struct EnsembleEstimate {
  std::vector<double> times;
  std::vector<Matrix> mean_state;                     // per time
  std::vector<std::vector<double>> observable_means;  // [observable][time]
  std::vector<std::vector<double>> standard_errors;   // [observable][time]
  std::vector<std::vector<double>> sector_occupation;  // [time][sector]
  std::vector<TrajectoryRecord> records;              // when keep_records
  int n_traj = 0;
};

// Trajectories run in fixed chunks and are reduced in chunk order, so the
// result does not depend on the worker count.
EnsembleEstimate ensemble_average(const QjmcModel& model, const SectorSuperposition& initial,
                                  const EnsembleConfig& config);

// Time average of one normalized trajectory over [t_burn, t_total]. Throws
// NonUniqueSteadyState / InvalidWindow.
Matrix time_average(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec,
                    const SectorSuperposition& start, double t_burn, double t_total, std::uint64_t seed);

}  // namespace weaksym
