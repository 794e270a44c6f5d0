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

#include "weaksym/qjmc.hpp"

#include "weaksym/error.hpp"
#include "weaksym/liouville.hpp"
#include "weaksym/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace weaksym {

namespace {

constexpr double kNormRiseTol = 1e-8;
constexpr double kRootTol = 1e-10;
constexpr double kDropNorm = 1e-14;
constexpr double kZeroRate = 1e-14;
constexpr int kChunk = 16;

using HeffLookup = std::function<const Matrix&(int)>;

SectorSuperposition evolve_components(const HeffLookup& heff, const SectorSuperposition& psi, double tau) {
  if (tau == 0.0) return psi;
  SectorSuperposition out;
  for (const auto& [k, a] : psi) out[k] = expm(-kI * tau * heff(k)) * a;
  return out;
}

SectorSuperposition normalized(const SectorSuperposition& psi) {
  const double n = std::sqrt(squared_norm(psi));
  if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero state");
  SectorSuperposition out;
  for (const auto& [k, a] : psi) out[k] = a / n;
  return out;
}

WaitingTime waiting_time_impl(const HeffLookup& heff, const SectorSuperposition& psi, double u, double t_max,
                              const CheckpointObserver& observer) {
  if (!(u > 0.0 && u <= 1.0)) throw Error(ErrorKind::InvalidU, "u = " + std::to_string(u) + " is outside (0, 1]");
  if (!(t_max >= 0.0)) throw Error(ErrorKind::NegativeTime, "t_max = " + std::to_string(t_max));

  double hnorm = 0.0;
  for (const auto& [k, a] : psi) hnorm = std::max(hnorm, heff(k).norm());
  double h = t_max / 100.0;
  if (hnorm > 0.0) h = std::min(h, 0.01 / hnorm);

  SectorSuperposition cur = psi;
  double n_cur = squared_norm(cur);
  if (observer) observer(0.0, cur);
  if (n_cur <= u) return {false, 0.0, cur};
  if (t_max == 0.0 || h <= 0.0) return {true, t_max, cur};

  std::map<int, Matrix> step;
  for (const auto& [k, a] : psi) step[k] = expm(-kI * h * heff(k));

  const auto n_steps = static_cast<long long>(std::ceil(t_max / h));
  double t = 0.0;
  for (long long i = 0; i < n_steps; ++i) {
    const bool last = i + 1 == n_steps;
    const double t_next = last ? t_max : static_cast<double>(i + 1) * h;
    const double dt = t_next - t;
    SectorSuperposition next;
    if (!last) {
      for (const auto& [k, a] : cur) next[k] = step[k] * a;
    } else {
      next = evolve_components(heff, cur, dt);
    }
    const double n_next = squared_norm(next);
    if (n_next > 1.0 + kNormRiseTol || n_next > n_cur + kNormRiseTol) {
      throw Error(ErrorKind::NormIncreased, "no-jump norm grew to " + std::to_string(n_next) +
                                                "; the effective Hamiltonian is not dissipative");
    }
    if (n_next <= u) {
      double lo = 0.0;
      double hi = dt;
      double tau = hi;
      SectorSuperposition at = next;
      double n_at = n_next;
      for (int iter = 0; iter < 200 && std::abs(n_at - u) > kRootTol; ++iter) {
        tau = 0.5 * (lo + hi);
        at = evolve_components(heff, cur, tau);
        n_at = squared_norm(at);
        if (n_at > u) {
          lo = tau;
        } else {
          hi = tau;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (t + hi)) break;
      }
      if (observer) observer(t + tau, at);
      return {false, t + tau, at};
    }
    t = t_next;
    cur = std::move(next);
    n_cur = n_next;
    if (observer) observer(t, cur);
  }
  return {true, t_max, cur};
}

void check_state(const QjmcModel& model, const SectorSuperposition& psi) {
  if (psi.empty()) throw Error(ErrorKind::InvalidArgument, "initial state has no components");
  const auto& dec = model.decomposition();
  for (const auto& [k, a] : psi) {
    if (k < 0 || k >= dec.num_sectors()) {
      throw Error(ErrorKind::InvalidArgument, "sector " + std::to_string(k) + " does not exist");
    }
    if (a.size() != dec.sectors()[static_cast<std::size_t>(k)].dim()) {
      throw Error(ErrorKind::DimensionMismatch, "amplitudes for sector " + std::to_string(k) +
                                                    " have the wrong length");
    }
  }
}

}  // namespace

QjmcModel QjmcModel::full_space(const LindbladRep& rep) {
  validate(rep);
  QjmcModel m;
  m.dec_ = trivial_decomposition(rep.dim());
  m.heff_.push_back(effective_hamiltonian(rep));
  m.transitions_.resize(1);
  for (std::size_t j = 0; j < rep.jumps.size(); ++j) {
    m.transitions_[0].push_back(SectorTransition{static_cast<int>(j), 0, rep.jumps[j]});
    m.shifts_.emplace_back();
  }
  return m;
}

QjmcModel QjmcModel::sectored(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec) {
  const CertificateReport report = certify_support(wrep, dec);
  if (report.support_residual > 1e-8) {
    throw Error(ErrorKind::NotCertified, "representation leaks outside its sector blocks (support residual " +
                                             std::to_string(report.support_residual) + ")");
  }
  QjmcModel m;
  m.dec_ = dec;
  const Matrix& q = dec.change_of_basis();
  const int num = dec.num_sectors();
  auto dim_of = [&](int k) { return dec.sectors()[static_cast<std::size_t>(k)].dim(); };

  const Matrix heff = q.adjoint() * effective_hamiltonian(wrep) * q;
  for (int k = 0; k < num; ++k) m.heff_.push_back(heff.block(dec.offset(k), dec.offset(k), dim_of(k), dim_of(k)));
  m.transitions_.resize(static_cast<std::size_t>(num));
  for (std::size_t j = 0; j < wrep.jumps.size(); ++j) {
    const auto& jump = wrep.jumps[j];
    m.shifts_.push_back(jump.shift);
    const Matrix rot = q.adjoint() * jump.op * q;
    const double scale = std::max(1.0, jump.op.norm());
    for (int l = 0; l < num; ++l) {
      const auto k = dec.shifted_sector(l, jump.shift);
      if (!k) {
        if (rot.middleCols(dec.offset(l), dim_of(l)).norm() > 1e-12 * scale) {
          throw Error(ErrorKind::ShiftLeavesSpectrum,
                      "jump " + std::to_string(j) + " acts on sector " + std::to_string(l) +
                          " but its shift leads to no sector");
        }
        continue;
      }
      Matrix block = rot.block(dec.offset(*k), dec.offset(l), dim_of(*k), dim_of(l));
      if (block.norm() <= kDropNorm * scale) continue;
      m.transitions_[static_cast<std::size_t>(l)].push_back(
          SectorTransition{static_cast<int>(j), *k, std::move(block)});
    }
  }
  return m;
}

SectorSuperposition as_superposition(const SectorState& state) { return {{state.sector, state.amplitudes}}; }

SectorSuperposition split_into_sectors(const SectorDecomposition& dec, const Vector& psi) {
  if (psi.size() != dec.dim()) throw Error(ErrorKind::DimensionMismatch, "state has the wrong dimension");
  SectorSuperposition out;
  for (const auto& s : dec.sectors()) {
    Vector a = s.basis.adjoint() * psi;
    if (a.norm() > kDropNorm) out[s.index] = std::move(a);
  }
  return out;
}

Vector embed(const SectorDecomposition& dec, const SectorSuperposition& state) {
  Vector psi = Vector::Zero(dec.dim());
  for (const auto& [k, a] : state) psi += dec.sectors()[static_cast<std::size_t>(k)].basis * a;
  return psi;
}

double squared_norm(const SectorSuperposition& state) {
  double n = 0.0;
  for (const auto& [k, a] : state) n += a.squaredNorm();
  return n;
}

WaitingTime sample_waiting_time(const QjmcModel& model, const SectorSuperposition& psi, double u, double t_max,
                                const CheckpointObserver& observer) {
  check_state(model, psi);
  return waiting_time_impl([&](int k) -> const Matrix& { return model.heff(k); }, psi, u, t_max, observer);
}

WaitingTime sample_waiting_time(const Matrix& heff, const Vector& psi, double u, double t_max) {
  require_square(heff, "sample_waiting_time");
  if (psi.size() != heff.rows()) throw Error(ErrorKind::DimensionMismatch, "state does not match H_eff");
  return waiting_time_impl([&](int) -> const Matrix& { return heff; }, {{0, psi}}, u, t_max, {});
}

std::vector<double> jump_rates(const QjmcModel& model, const SectorSuperposition& psi) {
  std::vector<double> rates(static_cast<std::size_t>(model.num_jumps()), 0.0);
  for (const auto& [l, a] : psi) {
    for (const auto& tr : model.transitions(l)) rates[static_cast<std::size_t>(tr.jump)] += (tr.block * a).squaredNorm();
  }
  return rates;
}

int select_jump(const std::vector<double>& rates, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw Error(ErrorKind::InvalidU, "u = " + std::to_string(u) + " is outside (0, 1]");
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  if (!(total > kZeroRate)) {
    throw Error(ErrorKind::ZeroTotalRate, "total jump rate " + std::to_string(total) +
                                              " at a sampled jump time (state is dark)");
  }
  const double target = u * total;
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t j = 0; j < rates.size(); ++j) {
    if (rates[j] <= 0.0) continue;
    last_positive = static_cast<int>(j);
    cum += rates[j];
    if (cum >= target) return static_cast<int>(j);
  }
  return last_positive;
}

SectorSuperposition apply_jump(const QjmcModel& model, const SectorSuperposition& psi, int jump) {
  SectorSuperposition out;
  for (const auto& [l, a] : psi) {
    for (const auto& tr : model.transitions(l)) {
      if (tr.jump != jump) continue;
      Vector image = tr.block * a;
      auto it = out.find(tr.target);
      if (it == out.end()) {
        out.emplace(tr.target, std::move(image));
      } else {
        it->second += image;
      }
    }
  }
  const double n = std::sqrt(squared_norm(out));
  if (n == 0.0) throw Error(ErrorKind::ZeroTotalRate, "jump " + std::to_string(jump) + " annihilates the state");
  SectorSuperposition kept;
  for (auto& [k, a] : out) {
    a /= n;
    if (a.norm() >= kDropNorm) kept.emplace(k, std::move(a));
  }
  return normalized(kept);
}

TrajectoryRecord run_trajectory_general(const QjmcModel& model, const SectorSuperposition& start, double t_final,
                                        const TrajectoryOptions& options) {
  check_state(model, start);
  if (!(t_final >= 0.0)) throw Error(ErrorKind::NegativeTime, "t_final = " + std::to_string(t_final));
  if (!std::is_sorted(options.sample_times.begin(), options.sample_times.end())) {
    throw Error(ErrorKind::InvalidArgument, "sample times must be ascending");
  }
  const HeffLookup heff = [&](int k) -> const Matrix& { return model.heff(k); };
  PhiloxStream rng(options.master_seed, options.stream);
  TrajectoryRecord record;
  record.master_seed = options.master_seed;
  record.stream = options.stream;
  record.censored_at = t_final;

  const auto& samples = options.sample_times;
  std::size_t next_sample = 0;
  while (next_sample < samples.size() && samples[next_sample] < 0.0) ++next_sample;

  SectorSuperposition state = normalized(start);
  double t = 0.0;
  while (true) {
    const WaitingTime wt = waiting_time_impl(heff, state, rng.uniform(), t_final - t, {});
    const double t_end = wt.censored ? t_final : t + wt.time;
    while (next_sample < samples.size() &&
           (samples[next_sample] < t_end || (wt.censored && samples[next_sample] <= t_end))) {
      const double tau = std::max(0.0, samples[next_sample] - t);
      record.samples.push_back(Snapshot{samples[next_sample], normalized(evolve_components(heff, state, tau))});
      ++next_sample;
    }
    if (wt.censored) break;

    const double n2 = squared_norm(wt.state);
    std::vector<double> rates = jump_rates(model, wt.state);
    for (double& r : rates) r /= n2;
    const int j = select_jump(rates, rng.uniform());

    JumpEvent event{t_end, j, model.shift(j), {}};
    for (const auto& [l, a] : wt.state) {
      for (const auto& tr : model.transitions(l)) {
        if (tr.jump == j && (tr.block * a).norm() > 0.0) event.sector_moves.emplace_back(l, tr.target);
      }
    }
    record.events.push_back(std::move(event));
    state = apply_jump(model, wt.state, j);
    t = t_end;
  }
  return record;
}

TrajectoryRecord run_trajectory(const LindbladRep& rep, const Vector& psi0, double t_final,
                                const TrajectoryOptions& options) {
  const QjmcModel model = QjmcModel::full_space(rep);
  return run_trajectory_general(model, {{0, psi0}}, t_final, options);
}

TrajectoryRecord run_trajectory_sectored(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec,
                                         const SectorState& start, double t_final,
                                         const TrajectoryOptions& options) {
  const QjmcModel model = QjmcModel::sectored(wrep, dec);
  return run_trajectory_general(model, as_superposition(start), t_final, options);
}

EnsembleEstimate ensemble_average(const QjmcModel& model, const SectorSuperposition& initial,
                                  const EnsembleConfig& config) {
  if (config.n_traj < 1) throw Error(ErrorKind::InvalidArgument, "n_traj must be at least 1");
  check_state(model, initial);
  const std::size_t n_times = config.times.size();
  const std::size_t n_obs = config.observables.size();
  const auto n_traj = static_cast<std::size_t>(config.n_traj);
  const int n_sectors = model.decomposition().num_sectors();
  const Eigen::Index dim = model.dim();
  for (const auto& o : config.observables) require_same_dim(o, model.decomposition().change_of_basis(), "observable");
  for (double t : config.times) {
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sample times must be non-negative");
  }
  const double t_final = n_times == 0 ? 0.0 : *std::max_element(config.times.begin(), config.times.end());

  struct Partial {
    std::vector<Matrix> rho;
    std::vector<std::vector<double>> occupation;
  };
  const std::size_t n_chunks = (n_traj + kChunk - 1) / kChunk;
  std::vector<Partial> partials(n_chunks);
  std::vector<std::exception_ptr> failures(n_chunks);
  std::vector<double> values(n_traj * n_times * n_obs, 0.0);
  EnsembleEstimate est;
  est.times = config.times;
  est.n_traj = config.n_traj;
  if (config.keep_records) est.records.resize(n_traj);

  std::atomic<std::size_t> next_chunk{0};
  auto worker = [&]() {
    for (std::size_t c = next_chunk++; c < n_chunks; c = next_chunk++) {
      try {
        Partial p{std::vector<Matrix>(n_times, Matrix::Zero(dim, dim)),
                  std::vector<std::vector<double>>(n_times, std::vector<double>(static_cast<std::size_t>(n_sectors), 0.0))};
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(n_traj, begin + kChunk);
        for (std::size_t traj = begin; traj < end; ++traj) {
          TrajectoryOptions opts{config.times, config.master_seed, traj};
          TrajectoryRecord rec = run_trajectory_general(model, initial, t_final, opts);
          for (std::size_t i = 0; i < n_times; ++i) {
            const auto& snap = rec.samples[i];
            const Vector psi = embed(model.decomposition(), snap.state);
            p.rho[i] += psi * psi.adjoint();
            for (const auto& [k, a] : snap.state) p.occupation[i][static_cast<std::size_t>(k)] += a.squaredNorm();
            for (std::size_t o = 0; o < n_obs; ++o) {
              values[(traj * n_times + i) * n_obs + o] = psi.dot(config.observables[o] * psi).real();
            }
          }
          if (config.keep_records) est.records[traj] = std::move(rec);
        }
        partials[c] = std::move(p);
      } catch (...) {
        failures[c] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, config.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  const double n = static_cast<double>(n_traj);
  est.mean_state.assign(n_times, Matrix::Zero(dim, dim));
  est.sector_occupation.assign(n_times, std::vector<double>(static_cast<std::size_t>(n_sectors), 0.0));
  for (const auto& p : partials) {
    for (std::size_t i = 0; i < n_times; ++i) {
      est.mean_state[i] += p.rho[i];
      for (int k = 0; k < n_sectors; ++k) {
        est.sector_occupation[i][static_cast<std::size_t>(k)] += p.occupation[i][static_cast<std::size_t>(k)];
      }
    }
  }
  for (std::size_t i = 0; i < n_times; ++i) {
    est.mean_state[i] /= n;
    est.mean_state[i] = 0.5 * (est.mean_state[i] + est.mean_state[i].adjoint()).eval();
    for (double& x : est.sector_occupation[i]) x /= n;
  }
  est.observable_means.assign(n_obs, std::vector<double>(n_times, 0.0));
  est.standard_errors.assign(n_obs, std::vector<double>(n_times, 0.0));
  for (std::size_t o = 0; o < n_obs; ++o) {
    for (std::size_t i = 0; i < n_times; ++i) {
      double mean = 0.0;
      for (std::size_t traj = 0; traj < n_traj; ++traj) mean += values[(traj * n_times + i) * n_obs + o];
      mean /= n;
      double var = 0.0;
      for (std::size_t traj = 0; traj < n_traj; ++traj) {
        const double d = values[(traj * n_times + i) * n_obs + o] - mean;
        var += d * d;
      }
      est.observable_means[o][i] = mean;
      est.standard_errors[o][i] = n_traj > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    }
  }
  return est;
}

Matrix time_average(const WeaklySymmetricRep& wrep, const SectorDecomposition& dec, const SectorSuperposition& start,
                    double t_burn, double t_total, std::uint64_t seed) {
  if (!(t_burn >= 0.0) || !(t_total > t_burn)) {
    throw Error(ErrorKind::InvalidWindow, "averaging window [" + std::to_string(t_burn) + ", " +
                                              std::to_string(t_total) + "] is empty");
  }
  try {
    steady_state(build_blocks(wrep, dec));
  } catch (const DegenerateSteadyStateError& e) {
    throw Error(ErrorKind::NonUniqueSteadyState, "time averages are not unique: " + std::string(e.what()));
  }
  const QjmcModel model = QjmcModel::sectored(wrep, dec);
  check_state(model, start);
  const HeffLookup heff = [&](int k) -> const Matrix& { return model.heff(k); };
  PhiloxStream rng(seed, 0);

  const Eigen::Index dim = model.dim();
  Matrix integral = Matrix::Zero(dim, dim);
  bool have_prev = false;
  double t_prev = 0.0;
  Matrix rho_prev;
  double t = 0.0;
  auto observer = [&](double tau, const SectorSuperposition& s) {
    const double time = t + tau;
    const Vector psi = embed(dec, s);
    const Matrix rho = psi * psi.adjoint() / psi.squaredNorm();
    if (have_prev) {
      const double a = std::max(t_prev, t_burn);
      const double b = std::min(time, t_total);
      if (b > a) {
        const double span = time - t_prev;
        const Matrix fa = rho_prev + (rho - rho_prev) * ((a - t_prev) / span);
        const Matrix fb = rho_prev + (rho - rho_prev) * ((b - t_prev) / span);
        integral += 0.5 * (b - a) * (fa + fb);
      }
    }
    have_prev = true;
    t_prev = time;
    rho_prev = rho;
  };

  SectorSuperposition state = normalized(start);
  while (true) {
    const WaitingTime wt = waiting_time_impl(heff, state, rng.uniform(), t_total - t, observer);
    if (wt.censored) break;
    const double n2 = squared_norm(wt.state);
    std::vector<double> rates = jump_rates(model, wt.state);
    for (double& r : rates) r /= n2;
    state = apply_jump(model, wt.state, select_jump(rates, rng.uniform()));
    t += wt.time;
  }
  Matrix avg = integral / (t_total - t_burn);
  return 0.5 * (avg + avg.adjoint());
}

}  // namespace weaksym
