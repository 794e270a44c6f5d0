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

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "weaksym/liouville.hpp"
#include "weaksym/qjmc.hpp"

namespace weaksym::cli {

namespace fs = std::filesystem;

namespace {

constexpr Eigen::Index kInlineMatrixLimit = 256;  // entries per matrix written inline

struct Prepared {
  LindbladRep rep;
  SectorDecomposition declared;
  WeaklySymmetricRep wrep;
  SectorDecomposition dec;
};

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json label_json(const Label& label) { return Json(label); }

Json decomposition_json(const SectorDecomposition& dec) {
  Json sectors = Json::array();
  for (const auto& s : dec.sectors()) {
    sectors.push_back({{"index", s.index}, {"label", label_json(s.label)}, {"dim", s.dim()}});
  }
  Json shifts = Json::array();
  for (std::size_t i = 0; i < dec.super_shifts().size(); ++i) {
    const auto& sh = dec.super_shifts()[i];
    Json pairs = Json::array();
    for (auto [k, l] : sh.pairs) pairs.push_back({k, l});
    shifts.push_back({{"index", i}, {"value", label_json(sh.value)}, {"pairs", std::move(pairs)}});
  }
  return {{"dim", dec.dim()},
          {"num_sectors", dec.num_sectors()},
          {"sectors", std::move(sectors)},
          {"super_shifts", std::move(shifts)},
          {"symmetric_shift", dec.symmetric_shift()}};
}

Json certificate_json(const CertificateReport& r) {
  Json j = {{"tolerance", r.tolerance},
            {"liouvillian_residual", r.liouvillian_residual ? Json(*r.liouvillian_residual) : Json(nullptr)},
            {"eigenmatrix_residual", r.eigenmatrix_residual},
            {"hamiltonian_residual", r.hamiltonian_residual},
            {"support_residual", r.support_residual},
            {"per_jump_eigenmatrix", r.per_jump_eigenmatrix},
            {"per_jump_support", r.per_jump_support},
            {"passed", r.passed()}};
  return j;
}

Json matrix_or_omitted(const Matrix& m) {
  if (m.size() <= kInlineMatrixLimit) return to_json(m);
  return {{"omitted", true}, {"rows", m.rows()}, {"cols", m.cols()}};
}

Json representation_json(const WeaklySymmetricRep& w, RepresentationChoice choice) {
  Json jumps = Json::array();
  for (const auto& j : w.jumps) {
    jumps.push_back({{"shift", label_json(j.shift)},
                     {"rate", (j.op.adjoint() * j.op).trace().real()},
                     {"op", to_json(j.op)}});
  }
  return {{"choice", to_string(choice)},
          {"provenance", choice == RepresentationChoice::Original ? "original" : std::string(to_string(w.provenance))},
          {"hamiltonian", to_json(w.hamiltonian)},
          {"jumps", std::move(jumps)}};
}

WeaklySymmetricRep unlabeled(const LindbladRep& rep) {
  WeaklySymmetricRep w{rep.hamiltonian, {}, LabelSpace({}, {}), Provenance::Builder};
  for (const auto& j : rep.jumps) w.jumps.push_back(TaggedJump{j, {}});
  return w;
}

bool same_operator(const SymmetrySpec& a, const SymmetrySpec& b) {
  return a.kind == b.kind && a.op.rows() == b.op.rows() && (a.op - b.op).norm() == 0.0;
}

WeaklySymmetricRep builder_rep(const RunConfig& cfg) {
  const auto& members = cfg.symmetry.members;
  if (cfg.model.chain) {
    if (members.size() != 1 || !same_operator(members[0], cfg.model.chain->translation)) {
      throw Error(ErrorKind::InvalidArgument, "plane-wave jumps are tagged by translation only; declare [translation]");
    }
    return models::plane_wave_jumps(*cfg.model.chain);
  }
  const auto& spin = *cfg.model.spin;
  if (members.size() == 1 && same_operator(members[0], spin.s_z)) return models::ladder_jumps(spin);
  if (members.size() == 2 && same_operator(members[0], spin.translation) && same_operator(members[1], spin.s_z)) {
    return models::translation_ladder_jumps(spin);
  }
  throw Error(ErrorKind::InvalidArgument, "spin ladder jumps need symmetry [s_z] or [translation, s_z]");
}

void check_residuals(const RunConfig& cfg, double tol, Json& report) {
  Json residuals = Json::array();
  std::optional<std::string> failure;
  for (std::size_t m = 0; m < cfg.symmetry.members.size(); ++m) {
    const double r = weak_symmetry_residual(cfg.model.rep, cfg.symmetry.members[m]);
    residuals.push_back({{"name", cfg.symmetry_names[m]}, {"residual", r}});
    if (r > tol && !failure) {
      failure = "declared symmetry '" + cfg.symmetry_names[m] + "' has commutator residual " + fmt_double(r) +
                " above " + fmt_double(tol);
    }
  }
  report["weak_symmetry_residuals"] = std::move(residuals);
  if (failure) throw Error(ErrorKind::NotWeaklySymmetric, *failure);
}

Prepared prepare(const RunConfig& cfg, const RunOptions& opt, Json& report) {
  Prepared p;
  p.rep = cfg.model.rep;
  report["model"] = {{"builder", cfg.model.builder}, {"dim", p.rep.dim()}, {"num_jumps", p.rep.jumps.size()}};
  Json symmetry = Json::array();
  for (std::size_t m = 0; m < cfg.symmetry.members.size(); ++m) {
    symmetry.push_back({{"name", cfg.symmetry_names[m]},
                        {"kind", cfg.symmetry.members[m].kind == SymmetryKind::Unitary ? "unitary" : "generator"}});
  }
  report["symmetry"] = std::move(symmetry);
  report["representation"] = to_string(cfg.representation);
  if (cfg.symmetry.members.empty()) {
    p.dec = trivial_decomposition(p.rep.dim());
    p.wrep = unlabeled(p.rep);
    return p;
  }
  check_residuals(cfg, opt.tol, report);
  p.declared = joint_decompose(cfg.symmetry);
  switch (cfg.representation) {
    case RepresentationChoice::Original:
      p.dec = trivial_decomposition(p.rep.dim());
      p.wrep = unlabeled(p.rep);
      return p;
    case RepresentationChoice::Projected:
      p.wrep = projected_weak_rep(p.rep, p.declared);
      break;
    case RepresentationChoice::Minimal:
      p.wrep = minimal_weak_rep(p.rep, cfg.symmetry);
      break;
    case RepresentationChoice::Builder:
      p.wrep = builder_rep(cfg);
      break;
  }
  p.dec = p.declared;
  CertificateReport cert = certify(p.wrep, p.declared, cfg.symmetry);
  cert.liouvillian_residual = liouvillian_distance(p.wrep.as_lindblad(), p.rep);
  cert.tolerance = opt.tol;
  report["certificate"] = certificate_json(cert);
  if (!cert.passed()) {
    throw Error(ErrorKind::NotCertified, "weakly symmetric representation failed certification at tolerance " +
                                             fmt_double(opt.tol));
  }
  return p;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  const auto eig = hermitian_eig(0.5 * (d + d.adjoint()));
  return 0.5 * eig.values.cwiseAbs().sum();
}

double expectation(const Matrix& op, const Matrix& rho) { return (op * rho).trace().real(); }

struct CsvRow {
  double time;
  std::string observable;
  double mean;
  double stderr_value;
  std::string method;
};

void write_csv(const fs::path& path, const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  out << "time,observable,mean,stderr,method\n";
  for (const auto& r : rows) {
    out << fmt_double(r.time) << ',' << r.observable << ',' << fmt_double(r.mean) << ',' << fmt_double(r.stderr_value)
        << ',' << r.method << '\n';
  }
}

void write_json(const fs::path& path, const Json& doc) {
  std::ofstream out(path);
  out << doc.dump(2) << '\n';
}

int task_inspect(const RunConfig& cfg, const RunOptions& opt, Json& report, std::ostream& log) {
  const auto dec = joint_decompose(cfg.symmetry);
  report["decomposition"] = decomposition_json(dec);
  log << "sector  dim  label\n";
  for (const auto& s : dec.sectors()) {
    log << s.index << "  " << s.dim() << "  [";
    for (std::size_t i = 0; i < s.label.size(); ++i) log << (i ? ", " : "") << fmt_double(s.label[i]);
    log << "]\n";
  }
  log << dec.super_shifts().size() << " super shifts\n";
  if (cfg.model.present) {
    report["model"] = {{"builder", cfg.model.builder}, {"dim", cfg.model.rep.dim()}, {"num_jumps", cfg.model.rep.jumps.size()}};
    check_residuals(cfg, opt.tol, report);
  }
  return kExitOk;
}

int task_repify(const Prepared& p, const RunConfig& cfg, Json& report, std::ostream& log) {
  report["weak_representation"] = representation_json(p.wrep, cfg.representation);
  log << "representation with " << p.wrep.jumps.size() << " jumps\n";
  return kExitOk;
}

int task_liouvillian(const Prepared& p, const RunOptions& opt, Json& report, std::ostream& log) {
  const Matrix dense = build_dense(p.rep);
  const BlockLiouvillian bl = build_blocks(p.wrep, p.dec);
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  const double assembly = (assemble_dense(bl) - dense).cwiseAbs().maxCoeff() / scale;
  const Matrix& q = p.dec.change_of_basis();
  const Matrix w = kron(q, q.conjugate());
  const Matrix rotated = w.adjoint() * dense * w;
  double off_block = 0.0;
  for (Eigen::Index r = 0; r < rotated.rows(); ++r) {
    for (Eigen::Index c = 0; c < rotated.cols(); ++c) {
      if (bl.index_map[static_cast<std::size_t>(r)].first != bl.index_map[static_cast<std::size_t>(c)].first) {
        off_block = std::max(off_block, std::abs(rotated(r, c)));
      }
    }
  }
  off_block /= scale;
  Json blocks = Json::array();
  for (std::size_t s = 0; s < bl.blocks.size(); ++s) {
    blocks.push_back({{"shift", label_json(p.dec.super_shifts()[s].value)},
                      {"size", bl.blocks[s].rows()},
                      {"matrix", matrix_or_omitted(bl.blocks[s])}});
  }
  report["liouvillian"] = {{"dimension", dense.rows()},
                           {"assembly_residual", assembly},
                           {"off_block_residual", off_block},
                           {"dense", matrix_or_omitted(dense)},
                           {"blocks", std::move(blocks)}};
  log << "assembly residual " << fmt_double(assembly) << ", off-block residual " << fmt_double(off_block) << '\n';
  if (assembly > opt.tol || off_block > opt.tol) {
    throw Error(ErrorKind::NotCertified, "block Liouvillian does not reproduce the dense generator (assembly " +
                                             fmt_double(assembly) + ", off-block " + fmt_double(off_block) + ")");
  }
  return kExitOk;
}

Json steady_json(const SteadyStateReport& ss) {
  Json eigenvalues = Json::array();
  for (const auto& z : ss.null_eigenvalues) eigenvalues.push_back(to_json(z));
  return {{"state", to_json(ss.state)},
          {"trace", ss.state.trace().real()},
          {"residual", ss.residual},
          {"null_multiplicity", ss.null_multiplicity},
          {"null_eigenvalues", std::move(eigenvalues)}};
}

int task_steadystate(const Prepared& p, const RunConfig& cfg, Json& report, std::ostream& log) {
  const BlockLiouvillian bl = build_blocks(p.wrep, p.dec);
  SteadyStateReport ss;
  try {
    ss = steady_state(bl);
  } catch (const DegenerateSteadyStateError& e) {
    report["steady_state"] = steady_json(e.report());
    throw;
  }
  report["steady_state"] = steady_json(ss);
  log << "steady state residual " << fmt_double(ss.residual) << '\n';
  if (const auto& ta = cfg.simulation.time_average) {
    const auto start = split_into_sectors(p.dec, *cfg.simulation.initial_state);
    const Matrix avg = time_average(p.wrep, p.dec, start, ta->t_burn, ta->t_total, *cfg.simulation.seed);
    const double dist = trace_distance(avg, ss.state);
    report["time_average"] = {{"t_burn", ta->t_burn},
                              {"t_total", ta->t_total},
                              {"seed", *cfg.simulation.seed},
                              {"state", to_json(avg)},
                              {"trace_distance", dist}};
    log << "time average trace distance " << fmt_double(dist) << '\n';
  }
  return kExitOk;
}

EnsembleEstimate run_ensemble(const Prepared& p, const RunConfig& cfg, const RunOptions& opt) {
  const auto& sim = cfg.simulation;
  const QjmcModel model = cfg.representation == RepresentationChoice::Original || cfg.symmetry.members.empty()
                              ? QjmcModel::full_space(p.rep)
                              : QjmcModel::sectored(p.wrep, p.dec);
  EnsembleConfig ec;
  ec.times = sim.times;
  ec.n_traj = sim.n_traj;
  ec.master_seed = *sim.seed;
  for (const auto& o : sim.observables) ec.observables.push_back(o.op);
  ec.workers = opt.workers;
  ec.keep_records = sim.event_logs;
  return ensemble_average(model, split_into_sectors(model.decomposition(), *sim.initial_state), ec);
}

Json events_json(const std::vector<TrajectoryRecord>& records) {
  Json out = Json::array();
  for (const auto& rec : records) {
    Json events = Json::array();
    for (const auto& e : rec.events) {
      Json moves = Json::array();
      for (auto [from, to] : e.sector_moves) moves.push_back({from, to});
      events.push_back(
          {{"time", e.time}, {"jump", e.jump_index}, {"shift", label_json(e.shift)}, {"sector_moves", std::move(moves)}});
    }
    out.push_back({{"stream", rec.stream}, {"censored_at", rec.censored_at}, {"events", std::move(events)}});
  }
  return out;
}

int task_trajectories(const Prepared& p, const RunConfig& cfg, const RunOptions& opt, const fs::path& dir,
                      Json& report, std::ostream& log) {
  const auto& sim = cfg.simulation;
  const EnsembleEstimate est = run_ensemble(p, cfg, opt);
  std::vector<CsvRow> rows;
  Json observables = Json::array();
  for (std::size_t o = 0; o < sim.observables.size(); ++o) {
    observables.push_back({{"name", sim.observables[o].name},
                           {"mean", est.observable_means[o]},
                           {"stderr", est.standard_errors[o]}});
  }
  for (std::size_t t = 0; t < est.times.size(); ++t) {
    for (std::size_t o = 0; o < sim.observables.size(); ++o) {
      rows.push_back({est.times[t], sim.observables[o].name, est.observable_means[o][t], est.standard_errors[o][t], "qjmc"});
    }
  }
  Json labels = Json::array();
  for (const auto& s : p.dec.sectors()) labels.push_back(label_json(s.label));
  Json traj = {{"n_traj", est.n_traj},
               {"seed", *sim.seed},
               {"t_final", sim.t_final},
               {"times", est.times},
               {"observables", std::move(observables)},
               {"sector_labels", std::move(labels)},
               {"sector_occupation", est.sector_occupation},
               {"final_mean_state", to_json(est.mean_state.back())}};
  if (sim.event_logs) traj["trajectories"] = events_json(est.records);
  report["trajectories"] = std::move(traj);
  if (cfg.write_csv) write_csv(dir / "trajectories.csv", rows);
  log << est.n_traj << " trajectories, " << est.times.size() << " sample times\n";
  return kExitOk;
}

int task_compare(const Prepared& p, const RunConfig& cfg, const RunOptions& opt, const fs::path& dir, Json& report,
                 std::ostream& log) {
  const auto& sim = cfg.simulation;
  const Vector& psi0 = *sim.initial_state;
  const Matrix rho0 = psi0 * psi0.adjoint();
  const Matrix dense_l = build_dense(p.rep);
  const BlockLiouvillian bl = build_blocks(p.wrep, p.dec);
  const std::size_t n_obs = sim.observables.size();
  const std::size_t n_t = sim.times.size();
  std::vector<std::vector<double>> dense(n_obs, std::vector<double>(n_t));
  std::vector<std::vector<double>> block(n_obs, std::vector<double>(n_t));
  Matrix rho_dense = rho0;
  Matrix rho_block = rho0;
  double prev = 0.0;
  for (std::size_t t = 0; t < n_t; ++t) {
    const double dt = sim.times[t] - prev;
    rho_dense = propagate(dense_l, rho_dense, dt);
    rho_block = propagate(bl, rho_block, dt);
    prev = sim.times[t];
    for (std::size_t o = 0; o < n_obs; ++o) {
      dense[o][t] = expectation(sim.observables[o].op, rho_dense);
      block[o][t] = expectation(sim.observables[o].op, rho_block);
    }
  }
  const EnsembleEstimate est = run_ensemble(p, cfg, opt);

  std::vector<CsvRow> rows;
  for (std::size_t t = 0; t < n_t; ++t) {
    for (std::size_t o = 0; o < n_obs; ++o) {
      const auto& name = sim.observables[o].name;
      rows.push_back({sim.times[t], name, dense[o][t], 0.0, "dense"});
      rows.push_back({sim.times[t], name, block[o][t], 0.0, "block"});
      rows.push_back({sim.times[t], name, est.observable_means[o][t], est.standard_errors[o][t], "qjmc"});
    }
  }
  constexpr double kSigmas = 4.0;
  constexpr double kSeFloor = 1e-9;
  bool ok = true;
  Json summary = Json::array();
  for (std::size_t o = 0; o < n_obs; ++o) {
    const double op_scale = std::max(1.0, sim.observables[o].op.norm());
    double block_gap = 0.0;
    double worst_sigma = 0.0;
    bool within = true;
    Json discrepancies = Json::array();
    for (std::size_t t = 0; t < n_t; ++t) {
      const double bd = block[o][t] - dense[o][t];
      const double qd = est.observable_means[o][t] - dense[o][t];
      const double se = est.standard_errors[o][t];
      block_gap = std::max(block_gap, std::abs(bd));
      worst_sigma = std::max(worst_sigma, std::abs(qd) / std::max(se, kSeFloor));
      within = within && std::abs(qd) <= kSigmas * se + kSeFloor;
      discrepancies.push_back({{"time", sim.times[t]}, {"block_minus_dense", bd}, {"qjmc_minus_dense", qd}, {"qjmc_stderr", se}});
    }
    const bool block_ok = block_gap <= opt.tol * op_scale;
    ok = ok && block_ok && within;
    summary.push_back({{"name", sim.observables[o].name},
                       {"max_block_minus_dense", block_gap},
                       {"block_within_tolerance", block_ok},
                       {"max_qjmc_sigmas", worst_sigma},
                       {"qjmc_within_4_stderr", within},
                       {"discrepancies", std::move(discrepancies)}});
  }
  report["compare"] = {{"n_traj", est.n_traj}, {"seed", *sim.seed}, {"observables", std::move(summary)}};
  if (cfg.write_csv) write_csv(dir / "compare.csv", rows);
  log << "compare: " << (ok ? "all methods agree" : "discrepancy beyond tolerance") << '\n';
  if (!ok) {
    report["status"] = "failed";
    report["error"] = {{"module", "cli"}, {"kind", "Discrepancy"}, {"message", "methods disagree beyond tolerance"}};
    return kExitNumerical;
  }
  return kExitOk;
}

int dispatch(const RunConfig& cfg, const RunOptions& opt, const fs::path& dir, Json& report, std::ostream& log) {
  if (cfg.task == Task::Inspect) return task_inspect(cfg, opt, report, log);
  const Prepared p = prepare(cfg, opt, report);
  switch (cfg.task) {
    case Task::Repify: return task_repify(p, cfg, report, log);
    case Task::Liouvillian: return task_liouvillian(p, opt, report, log);
    case Task::SteadyState: return task_steadystate(p, cfg, report, log);
    case Task::Trajectories: return task_trajectories(p, cfg, opt, dir, report, log);
    case Task::Compare: return task_compare(p, cfg, opt, dir, report, log);
    case Task::Inspect: break;
  }
  return kExitOk;
}

Json error_json(ErrorKind kind, const std::string& message) {
  return {{"module", module_of(kind)}, {"kind", to_string(kind)}, {"message", message}};
}

}  // namespace

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Schema: return kExitSchema;
    case ErrorCategory::Certification: return kExitCertification;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

std::string_view module_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NotUnitary:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidArgument:
      return "opcore";
    case ErrorKind::ClusterAmbiguity:
    case ErrorKind::NotCommuting:
      return "symmetry";
    case ErrorKind::AllRatesZero:
    case ErrorKind::UnitarityViolation:
    case ErrorKind::HermiticityViolation:
    case ErrorKind::NotWeaklySymmetric:
    case ErrorKind::MixesShiftClasses:
    case ErrorKind::ShiftOnAsymmetricJump:
      return "representation";
    case ErrorKind::NotCertified:
    case ErrorKind::NegativeTime:
    case ErrorKind::DegenerateSteadyState:
      return "liouville";
    case ErrorKind::NormIncreased:
    case ErrorKind::InvalidU:
    case ErrorKind::ZeroTotalRate:
    case ErrorKind::ShiftLeavesSpectrum:
    case ErrorKind::NonUniqueSteadyState:
    case ErrorKind::InvalidWindow:
      return "qjmc";
    case ErrorKind::DimCap:
    case ErrorKind::NonUniform:
    case ErrorKind::BoundViolated:
      return "models";
    case ErrorKind::SchemaError:
      return "cli";
  }
  return "unknown";
}

int run(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
  const fs::path dir = opt.out_dir.value_or(cfg.output_directory);
  fs::create_directories(dir);
  Json report = Json::object();
  report["task"] = to_string(cfg.task);
  report["status"] = "ok";
  int code = kExitOk;
  try {
    code = dispatch(cfg, opt, dir, report, log);
  } catch (const Error& e) {
    report["status"] = "failed";
    report["error"] = error_json(e.kind(), e.what());
    code = exit_code(category(e.kind()));
    log << module_of(e.kind()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    report["status"] = "failed";
    report["error"] = {{"module", "cli"}, {"kind", "Internal"}, {"message", e.what()}};
    code = kExitNumerical;
    log << "cli: " << e.what() << '\n';
  }
  report["exit_code"] = code;
  if (cfg.write_json || code != kExitOk) write_json(dir / (std::string(to_string(cfg.task)) + ".json"), report);
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-symmetry decomposition, block Liouvillians and sectored quantum-jump sampling"};
  app.name("weaksym");
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  const std::pair<const char*, const char*> commands[] = {
      {"inspect", "List symmetry sectors and super shifts"},
      {"repify", "Build and certify a weakly symmetric representation"},
      {"liouvillian", "Dense and block Liouvillians with the assembly residual"},
      {"steadystate", "Steady state from the symmetric block"},
      {"trajectories", "Quantum-jump ensemble estimates"},
      {"compare", "Dense, block and trajectory estimates side by side"},
  };
  std::vector<std::pair<CLI::App*, std::array<CLI::Option*, 3>>> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    CLI::Option* o_out = sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sub->add_option("--workers", workers, "Worker threads for trajectory ensembles")->check(CLI::PositiveNumber);
    CLI::Option* o_seed = sub->add_option("--seed", seed, "Master seed (overrides simulation.seed)");
    CLI::Option* o_tol = sub->add_option("--tol", tol, "Certification tolerance")->check(CLI::PositiveNumber);
    subs.push_back({sub, {o_out, o_seed, o_tol}});
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitSchema;
  }
  CLI::App* chosen = app.get_subcommands().front();
  std::array<CLI::Option*, 3> flags{};
  for (const auto& [sub, opts] : subs) {
    if (sub == chosen) flags = opts;
  }
  const Task task = *parse_task(chosen->get_name());
  RunOptions opt;
  if (flags[0]->count() > 0) opt.out_dir = out_dir;
  opt.workers = workers;
  opt.tol = tol;
  const std::optional<std::uint64_t> seed_override =
      flags[1]->count() > 0 ? std::optional<std::uint64_t>(seed) : std::nullopt;

  RunConfig cfg;
  try {
    cfg = parse_config(config_path, task, seed_override);
  } catch (const ConfigError& e) {
    err << "cli: " << e.what() << '\n';
    if (opt.out_dir) {
      Json issues = Json::array();
      for (const auto& [path, msg] : e.issues()) issues.push_back({{"path", path}, {"message", msg}});
      Json report = {{"task", to_string(task)},
                     {"status", "failed"},
                     {"error", error_json(ErrorKind::SchemaError, e.what())},
                     {"schema_errors", std::move(issues)},
                     {"exit_code", kExitSchema}};
      fs::create_directories(*opt.out_dir);
      write_json(fs::path(*opt.out_dir) / (std::string(to_string(task)) + ".json"), report);
    }
    return kExitSchema;
  }
  return run(cfg, opt, err);
}

}  // namespace weaksym::cli
