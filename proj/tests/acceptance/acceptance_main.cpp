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


// Standalone acceptance driver. Prints one PASS/FAIL line per criterion and
// exits nonzero when any of them fails.

#include "commands.hpp"
#include "oracle.hpp"
#include "weaksym/liouville.hpp"
#include "weaksym/models.hpp"
#include "weaksym/qjmc.hpp"
#include "weaksym/representation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace weaksym;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (failures_.size() < 4) failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome outcome() const {
    std::string d;
    for (const auto& s : notes_) d += (d.empty() ? "" : "; ") + s;
    for (const auto& s : failures_) d += (d.empty() ? "failed: " : "; failed: ") + s;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int worker_count() { return static_cast<int>(std::max(2u, std::min(8u, std::thread::hardware_concurrency()))); }

Vector basis_state(Eigen::Index dim, Eigen::Index i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

// Shift-equation residual of one jump against every group member.
double shift_residual(const AbelianGroupSpec& group, const TaggedJump& j) {
  double worst = 0.0;
  const double scale = std::max(1.0, j.op.norm());
  for (std::size_t m = 0; m < group.members.size(); ++m) {
    const auto& s = group.members[m];
    Matrix r;
    if (s.kind == SymmetryKind::Unitary) {
      r = s.op * j.op * s.op.adjoint() - std::exp(kI * j.shift[m]) * j.op;
    } else {
      r = commutator(s.op, j.op) - j.shift[m] * j.op;
    }
    worst = std::max(worst, r.norm() / scale);
  }
  return worst;
}

// Largest sector block of `op` lying outside the class of `shift`.
double support_residual(const SectorDecomposition& dec, const Matrix& op, const Label& shift) {
  const Matrix& q = dec.change_of_basis();
  const Matrix rot = q.adjoint() * op * q;
  const double scale = std::max(1.0, op.norm());
  double worst = 0.0;
  for (int k = 0; k < dec.num_sectors(); ++k) {
    for (int l = 0; l < dec.num_sectors(); ++l) {
      const Label diff = dec.labels().subtract(dec.sectors()[static_cast<std::size_t>(k)].label,
                                               dec.sectors()[static_cast<std::size_t>(l)].label);
      if (dec.labels().same(diff, shift)) continue;
      const auto& sk = dec.sectors()[static_cast<std::size_t>(k)];
      const auto& sl = dec.sectors()[static_cast<std::size_t>(l)];
      worst = std::max(worst, rot.block(dec.offset(k), dec.offset(l), sk.dim(), sl.dim()).norm() / scale);
    }
  }
  return worst;
}

oracle::Family family_of(int i) { return static_cast<oracle::Family>(i % 3); }
const char* family_name(oracle::Family f) {
  switch (f) {
    case oracle::Family::Z2: return "Z2";
    case oracle::Family::Z4: return "Z4";
    case oracle::Family::U1: return "U1";
  }
  return "?";
}

Outcome representation_equivalence() {
  Tally t;
  oracle::Random rng(1201);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto fam = family_of(i);
    const int dim = rng.integer(4, 16);
    const int n_jumps = rng.integer(2, 5);
    const auto model = oracle::random_weak_model(rng, fam, dim, n_jumps);
    const Matrix ref = oracle::liouvillian(model.rep);
    const auto dec = decompose(model.symmetry);
    const auto projected = projected_weak_rep(model.rep, dec);
    const auto minimal = minimal_weak_rep(model.rep, model.symmetry);
    const auto gauged = apply_gauge(minimal, oracle::random_gauge(rng, minimal, 1));
    const std::string tag = std::string(family_name(fam)) + " d=" + std::to_string(dim);
    for (const auto* w : {&projected, &minimal, &gauged}) {
      const double r = oracle::rel_diff(oracle::liouvillian(w->as_lindblad()), ref);
      worst = std::max(worst, r);
      t.check(r <= 1e-9, tag + " residual " + fmt(r));
    }
  }
  const double elapsed = seconds_since(t0);
  t.check(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
  t.note("20 models, max rel diff " + fmt(worst) + ", " + fmt(elapsed) + " s");
  return t.outcome();
}

Outcome certification() {
  Tally t;
  double worst = 0.0;
  for (const auto& fx : models::standard_fixtures()) {
    for (const auto& m : fx.group.members) {
      const double r = weak_symmetry_residual(fx.rep, m);
      worst = std::max(worst, r);
      t.check(r <= 1e-10, fx.name + " residual " + fmt(r));
    }
  }
  const LindbladRep broken{ops::sigma_x(), {ops::sigma_minus()}};
  const SymmetrySpec parity = SymmetrySpec::unitary(ops::sigma_z());
  const double br = weak_symmetry_residual(broken, parity);
  t.check(br > 1e-3, "broken residual " + fmt(br));
  t.check(oracle::throws_kind(ErrorKind::NotWeaklySymmetric, [&] { minimal_weak_rep(broken, parity); }),
          "broken model accepted");
  t.check(oracle::throws_kind(ErrorKind::NotWeaklySymmetric, [&] { require_weak_symmetry(broken, parity); }),
          "require_weak_symmetry accepted broken model");
  t.note("fixtures max " + fmt(worst) + ", broken " + fmt(br));
  return t.outcome();
}

struct NamedModel {
  std::string name;
  LindbladRep rep;
  AbelianGroupSpec group;
};

std::vector<NamedModel> property_models() {
  std::vector<NamedModel> out;
  for (const auto& fx : models::standard_fixtures()) out.push_back({fx.name, fx.rep, fx.group});
  oracle::Random rng(303);
  for (int i = 0; i < 6; ++i) {
    const auto fam = family_of(i);
    auto m = oracle::random_weak_model(rng, fam, rng.integer(4, 10), 3);
    out.push_back({std::string("random_") + family_name(fam), m.rep, m.symmetry});
  }
  return out;
}

Outcome eigenmatrix_support() {
  Tally t;
  double worst_shift = 0.0;
  double worst_support = 0.0;
  std::size_t count = 0;
  for (const auto& m : property_models()) {
    const auto dec = joint_decompose(m.group);
    std::vector<std::pair<std::string, WeaklySymmetricRep>> reps{{"minimal", minimal_weak_rep(m.rep, m.group)},
                                                                 {"projected", projected_weak_rep(m.rep, dec)}};
    for (const auto& [kind, w] : reps) {
      for (const auto& j : w.jumps) {
        const double s = shift_residual(m.group, j);
        const double p = support_residual(dec, j.op, j.shift);
        worst_shift = std::max(worst_shift, s);
        worst_support = std::max(worst_support, p);
        t.check(s <= 1e-9, m.name + " " + kind + " shift " + fmt(s));
        t.check(p <= 1e-9, m.name + " " + kind + " support " + fmt(p));
        ++count;
      }
      const double h = support_residual(dec, w.hamiltonian, dec.labels().zero());
      worst_support = std::max(worst_support, h);
      t.check(h <= 1e-9, m.name + " " + kind + " hamiltonian " + fmt(h));
    }
  }
  t.note(std::to_string(count) + " jumps, shift " + fmt(worst_shift) + ", support " + fmt(worst_support));
  return t.outcome();
}

Outcome block_assembly() {
  Tally t;
  double worst_dense = 0.0;
  double worst_off = 0.0;
  for (const auto& fx : models::standard_fixtures()) {
    const auto dec = joint_decompose(fx.group);
    const auto bl = build_blocks(minimal_weak_rep(fx.rep, fx.group), dec);
    const Matrix dense = build_dense(fx.rep);
    const double r = oracle::rel_diff(assemble_dense(bl), dense);
    const double ro = oracle::rel_diff(assemble_dense(bl), oracle::liouvillian(fx.rep));
    worst_dense = std::max({worst_dense, r, ro});
    t.check(r <= 1e-9 && ro <= 1e-9, fx.name + " assembly " + fmt(std::max(r, ro)));

    const Matrix& q = dec.change_of_basis();
    const Matrix w = kron(q, q.conjugate());
    const Matrix rotated = w.adjoint() * dense * w;
    double off = 0.0;
    for (Eigen::Index a = 0; a < rotated.rows(); ++a) {
      for (Eigen::Index b = 0; b < rotated.cols(); ++b) {
        if (bl.index_map[static_cast<std::size_t>(a)].first != bl.index_map[static_cast<std::size_t>(b)].first) {
          off = std::max(off, std::abs(rotated(a, b)));
        }
      }
    }
    worst_off = std::max(worst_off, off);
    t.check(off <= 1e-9, fx.name + " off-class " + fmt(off));
  }
  t.note("assembly " + fmt(worst_dense) + ", off-class " + fmt(worst_off));
  return t.outcome();
}

struct UnravelCase {
  std::string name;
  LindbladRep rep;
  AbelianGroupSpec group;
  Vector psi0;
  std::vector<Matrix> observables;
  std::function<double(std::size_t, double)> closed_form;  // observable, time; empty when none
};

Outcome unraveling() {
  Tally t;
  std::vector<UnravelCase> cases;
  const double gamma = 1.0;
  cases.push_back({"amplitude_damping", models::amplitude_damping(gamma, 0.7), SymmetrySpec::unitary(ops::sigma_z()),
                   basis_state(2, 1), {ops::matrix_unit(2, 1, 1), ops::sigma_z()},
                   [gamma](std::size_t o, double time) {
                     const double p = std::exp(-gamma * time);
                     return o == 0 ? p : 1.0 - 2.0 * p;
                   }});
  Vector tilted(2);
  tilted << 0.6, 0.8;
  cases.push_back({"driven_damped", models::driven_damped(1.0, 1.0), SymmetrySpec::unitary(identity(2)), tilted,
                   {ops::sigma_x(), ops::sigma_y(), ops::sigma_z()}, {}});
  {
    const auto fx = models::standard_fixtures();
    const auto& chain = *std::find_if(fx.begin(), fx.end(), [](const auto& f) { return f.name == "chain_n2"; });
    cases.push_back({"chain_n2", chain.rep, chain.group, basis_state(4, 3),
                     {kron(ops::sigma_z(), identity(2)), kron(ops::sigma_z(), ops::sigma_z()),
                      kron(ops::sigma_plus() * ops::sigma_minus(), ops::sigma_minus() * ops::sigma_plus())},
                     {}});
  }
  std::vector<double> times;
  for (int i = 1; i <= 10; ++i) times.push_back(0.3 * i);

  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dec = joint_decompose(c.group);
    const auto model = QjmcModel::sectored(minimal_weak_rep(c.rep, c.group), dec);
    EnsembleConfig cfg;
    cfg.times = times;
    cfg.n_traj = 10000;
    cfg.master_seed = 4242;
    cfg.observables = c.observables;
    cfg.workers = worker_count();
    const auto est = ensemble_average(model, split_into_sectors(dec, c.psi0), cfg);
    const double elapsed = seconds_since(t0);

    const Matrix l = oracle::liouvillian(c.rep);
    const Matrix rho0 = c.psi0 * c.psi0.adjoint();
    double worst_sigma = 0.0;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const Matrix rho = propagate(l, rho0, times[ti]);
      for (std::size_t o = 0; o < c.observables.size(); ++o) {
        const double exact = (c.observables[o] * rho).trace().real();
        if (c.closed_form) {
          const double cf = c.closed_form(o, times[ti]);
          t.check(std::abs(cf - exact) <= 1e-9, c.name + " closed form " + fmt(std::abs(cf - exact)));
        }
        const double mean = est.observable_means[o][ti];
        const double se = est.standard_errors[o][ti];
        const double dev = std::abs(mean - exact);
        worst_sigma = std::max(worst_sigma, dev / std::max(se, 1e-12));
        t.check(dev <= 4.0 * se + 1e-9, c.name + " obs " + std::to_string(o) + " t=" + fmt(times[ti]) + " off by " +
                                             fmt(dev / std::max(se, 1e-12)) + " SE");
      }
    }
    t.check(elapsed < 120.0, c.name + " runtime " + fmt(elapsed) + " s");
    t.note(c.name + " max " + fmt(worst_sigma) + " SE in " + fmt(elapsed) + " s");
  }
  return t.outcome();
}

double leakage(const SectorDecomposition& dec, const Snapshot& snap) {
  const Vector psi = embed(dec, snap.state);
  Vector inside = Vector::Zero(psi.size());
  for (const auto& [k, a] : snap.state) inside += dec.projector(k) * psi;
  return (psi - inside).norm();
}

Outcome confinement() {
  Tally t;
  oracle::Random rng(606);
  double worst = 0.0;
  std::size_t jumps = 0;
  std::vector<double> times;
  for (int i = 0; i <= 16; ++i) times.push_back(0.25 * i);
  for (const auto& fx : models::standard_fixtures()) {
    const auto dec = joint_decompose(fx.group);
    const auto model = QjmcModel::sectored(minimal_weak_rep(fx.rep, fx.group), dec);
    for (std::uint64_t traj = 0; traj < 120; ++traj) {
      const int start = static_cast<int>(traj % static_cast<std::uint64_t>(dec.num_sectors()));
      const auto& sec = dec.sectors()[static_cast<std::size_t>(start)];
      const Vector amp = rng.state(sec.dim());
      const auto rec = run_trajectory_general(model, {{start, amp}}, 4.0, {times, 99, traj});
      for (const auto& s : rec.samples) {
        const double lk = leakage(dec, s);
        worst = std::max(worst, lk);
        t.check(s.state.size() == 1 && lk <= 1e-10, fx.name + " leakage " + fmt(lk));
      }
      int sector = start;
      for (const auto& e : rec.events) {
        ++jumps;
        const bool one = e.sector_moves.size() == 1;
        t.check(one, fx.name + " jump split the state");
        if (!one) break;
        const auto expected = dec.shifted_sector(sector, e.shift);
        t.check(e.sector_moves[0].first == sector && expected && *expected == e.sector_moves[0].second,
                fx.name + " transition disagrees with shift tag");
        t.check(dec.labels().same(e.shift, model.shift(e.jump_index)), fx.name + " event shift mislabeled");
        sector = e.sector_moves[0].second;
      }
    }
  }
  t.note("120 trajectories per fixture, " + std::to_string(jumps) + " jumps, max leakage " + fmt(worst));
  return t.outcome();
}

Outcome steady_states() {
  Tally t;
  double worst = 0.0;
  for (const auto& fx : models::standard_fixtures()) {
    const auto dec = joint_decompose(fx.group);
    const auto bl = build_blocks(minimal_weak_rep(fx.rep, fx.group), dec);
    const bool expect_degenerate = fx.name == "dephasing";
    SteadyStateReport report;
    bool degenerate = false;
    try {
      report = steady_state(bl);
    } catch (const DegenerateSteadyStateError& e) {
      report = e.report();
      degenerate = true;
    }
    t.check(degenerate == expect_degenerate, fx.name + " degeneracy " + std::to_string(report.null_multiplicity));
    const double oracle_res = oracle::lindblad_action(fx.rep, report.state).norm();
    const double tr = std::abs(report.state.trace() - 1.0);
    const Matrix& q = dec.change_of_basis();
    const Matrix rot = q.adjoint() * report.state * q;
    double support = 0.0;
    for (int k = 0; k < dec.num_sectors(); ++k) {
      for (int l = 0; l < dec.num_sectors(); ++l) {
        if (dec.shift_of_pair(k, l) == dec.symmetric_shift()) continue;
        support = std::max(support, rot.block(dec.offset(k), dec.offset(l), dec.sectors()[static_cast<std::size_t>(k)].dim(),
                                              dec.sectors()[static_cast<std::size_t>(l)].dim())
                                        .norm());
      }
    }
    worst = std::max({worst, report.residual, oracle_res, tr, support});
    t.check(report.residual <= 1e-9 && oracle_res <= 1e-9, fx.name + " residual " + fmt(oracle_res));
    t.check(tr <= 1e-9, fx.name + " trace " + fmt(tr));
    t.check(support <= 1e-9, fx.name + " support " + fmt(support));
  }

  const LindbladRep driven = models::driven_damped(1.0, 1.0);
  const AbelianGroupSpec trivial(SymmetrySpec::unitary(identity(2)));
  const auto dec = joint_decompose(trivial);
  const auto w = minimal_weak_rep(driven, trivial);
  const Matrix exact = steady_state(build_blocks(w, dec)).state;
  const auto t0 = std::chrono::steady_clock::now();
  const Matrix avg = time_average(w, dec, split_into_sectors(dec, basis_state(2, 1)), 10.0, 1.0e4, 2026);
  const double td = oracle::trace_distance(avg, exact);
  t.check(td <= 0.05, "time average trace distance " + fmt(td));
  t.note("max residual " + fmt(worst) + ", time-average distance " + fmt(td) + " in " + fmt(seconds_since(t0)) + " s");
  return t.outcome();
}

Outcome plane_waves() {
  Tally t;
  double worst_eig = 0.0;
  double worst_l = 0.0;
  for (int n : {2, 3, 4}) {
    models::ChainSpec spec;
    spec.n_sites = n;
    spec.hamiltonian_terms = {{0.7 * ops::sigma_z(), 1}, {0.25 * kron(ops::sigma_x(), ops::sigma_x()), 2}};
    spec.local_jumps = {{ops::sigma_minus(), 1.0}, {ops::sigma_z(), 0.4}};
    const auto chain = models::build_chain(spec);
    const auto pw = models::plane_wave_jumps(chain);
    const Matrix& tr = chain.translation.op;
    for (const auto& j : pw.jumps) {
      const double r = (tr * j.op * tr.adjoint() - std::exp(kI * j.shift[0]) * j.op).norm();
      worst_eig = std::max(worst_eig, r);
      t.check(r <= 1e-12, "N=" + std::to_string(n) + " eigen " + fmt(r));
    }
    const double lr = oracle::rel_diff(oracle::liouvillian(pw.as_lindblad()), oracle::liouvillian(chain.rep));
    worst_l = std::max(worst_l, lr);
    t.check(lr <= 1e-9, "N=" + std::to_string(n) + " Liouvillian " + fmt(lr));
    const auto mb = models::momentum_basis(n, 2);
    const Matrix& q = mb.change_of_basis;
    for (const auto& j : pw.jumps) {
      const auto report = models::sparsity_census(q.adjoint() * j.op * q, n, 1);
      t.check(report.max_nonzeros <= report.bound && report.bound == static_cast<long long>(n) * n * n,
              "N=" + std::to_string(n) + " sparsity " + std::to_string(report.max_nonzeros));
    }
  }
  t.note("eigen " + fmt(worst_eig) + ", Liouvillian " + fmt(worst_l));
  return t.outcome();
}

Outcome traceless_shift() {
  Tally t;
  oracle::Random rng(909);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int dim = rng.integer(2, 8);
    LindbladRep rep = oracle::random_rep(rng, dim, rng.integer(1, 4));
    for (auto& j : rep.jumps) j += Complex(rng.normal(), rng.normal()) * 2.0 * identity(dim);
    const TracelessForm tf = make_traceless(rep);
    double tr = 0.0;
    for (const auto& j : tf.jumps) tr = std::max(tr, std::abs(j.trace()));
    const double r = oracle::rel_diff(oracle::liouvillian(LindbladRep{tf.hamiltonian, tf.jumps}), oracle::liouvillian(rep));
    worst = std::max(worst, r);
    t.check(r <= 1e-10, "d=" + std::to_string(dim) + " residual " + fmt(r));
    t.check(tr <= 1e-10, "d=" + std::to_string(dim) + " trace left " + fmt(tr));
  }
  t.note("20 reps, max rel diff " + fmt(worst));
  return t.outcome();
}

std::string serialize(const EnsembleEstimate& e) {
  std::ostringstream out;
  char buf[40];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g ", x);
    out << buf;
  };
  for (const auto& rho : e.mean_state) {
    for (Eigen::Index a = 0; a < rho.size(); ++a) {
      put(rho(a).real());
      put(rho(a).imag());
    }
  }
  for (const auto& row : e.observable_means) for (double x : row) put(x);
  for (const auto& row : e.standard_errors) for (double x : row) put(x);
  for (const auto& row : e.sector_occupation) for (double x : row) put(x);
  for (const auto& rec : e.records) {
    out << '\n';
    for (const auto& ev : rec.events) {
      put(ev.time);
      out << ev.jump_index << ' ';
    }
    put(rec.censored_at);
  }
  return out.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int invoke_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "weaksym");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  Tally t;
  std::size_t bytes = 0;
  for (const auto& fx : models::standard_fixtures()) {
    const auto dec = joint_decompose(fx.group);
    const auto model = QjmcModel::sectored(minimal_weak_rep(fx.rep, fx.group), dec);
    EnsembleConfig cfg;
    cfg.times = {0.0, 0.5, 1.0, 2.0};
    cfg.n_traj = 300;
    cfg.master_seed = 77;
    cfg.observables = {fx.rep.hamiltonian};
    cfg.keep_records = true;
    const Vector psi0 = oracle::Random(5).state(fx.rep.dim());
    std::vector<std::string> runs;
    for (int workers : {1, 3, 8}) {
      cfg.workers = workers;
      runs.push_back(serialize(ensemble_average(model, split_into_sectors(dec, psi0), cfg)));
    }
    bytes += runs[0].size();
    t.check(runs[0] == runs[1] && runs[0] == runs[2], fx.name + " outputs differ across workers");
  }

  const fs::path root = fs::temp_directory_path() / "weaksym_acceptance";
  const fs::path configs = fs::path(WEAKSYM_SOURCE_DIR) / "configs";
  for (const char* name : {"chain_plane_waves.json", "amplitude_damping_compare.json"}) {
    std::vector<fs::path> dirs;
    for (const char* workers : {"1", "4"}) {
      const fs::path dir = root / (std::string(name) + "_w" + workers);
      fs::remove_all(dir);
      fs::create_directories(dir);
      const std::string task = std::string(name).find("compare") != std::string::npos ? "compare" : "trajectories";
      const int code = invoke_cli({task, "--config", (configs / name).string(), "--out", dir.string(), "--workers", workers});
      t.check(code == 0, std::string(name) + " exit " + std::to_string(code));
      dirs.push_back(dir);
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const fs::path other = dirs[1] / entry.path().filename();
      t.check(fs::exists(other) && read_file(entry.path()) == read_file(other),
              std::string(name) + " " + entry.path().filename().string() + " differs");
      ++files;
    }
    t.check(files > 0, std::string(name) + " wrote nothing");
  }
  fs::remove_all(root);
  t.note("library " + std::to_string(bytes) + " bytes per fixture run set, CLI outputs compared");
  return t.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"representation equivalence", representation_equivalence},
      {"weak-symmetry certification", certification},
      {"eigenmatrix and support", eigenmatrix_support},
      {"block assembly", block_assembly},
      {"unraveling correctness", unraveling},
      {"sector confinement", confinement},
      {"steady state", steady_states},
      {"plane-wave jumps", plane_waves},
      {"traceless shift", traceless_shift},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << (i + 1) << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << " ["
              << fmt(seconds_since(t0)) << " s] " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
