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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace weaksym::cli {

namespace {

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void check_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed,
                Issues& issues) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      issues.add(join_path(path, it.key()), "unknown key");
    }
  }
}

const Json* child(const Json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::optional<double> number_at(const Json& obj, const std::string& key, const std::string& path, Issues& issues,
                                std::optional<double> fallback = {}) {
  const Json* j = child(obj, key);
  if (j == nullptr) {
    if (!fallback) issues.add(join_path(path, key), "required number is missing");
    return fallback;
  }
  if (!j->is_number()) {
    issues.add(join_path(path, key), "expected a number");
    return std::nullopt;
  }
  const double v = j->get<double>();
  if (!std::isfinite(v)) {
    issues.add(join_path(path, key), "expected a finite number");
    return std::nullopt;
  }
  return v;
}

std::optional<double> non_negative_at(const Json& obj, const std::string& key, const std::string& path,
                                      Issues& issues, std::optional<double> fallback = {}) {
  const auto v = number_at(obj, key, path, issues, fallback);
  if (v && *v < 0.0) {
    issues.add(join_path(path, key), "must be non-negative");
    return std::nullopt;
  }
  return v;
}

std::optional<int> integer_at(const Json& obj, const std::string& key, const std::string& path, Issues& issues,
                              int min_value, std::optional<int> fallback = {}) {
  const Json* j = child(obj, key);
  if (j == nullptr) {
    if (!fallback) issues.add(join_path(path, key), "required integer is missing");
    return fallback;
  }
  if (!j->is_number_integer() || j->get<long long>() < min_value || j->get<long long>() > (1LL << 30)) {
    issues.add(join_path(path, key), "expected an integer >= " + std::to_string(min_value));
    return std::nullopt;
  }
  return j->get<int>();
}

std::optional<std::string> string_at(const Json& obj, const std::string& key, const std::string& path,
                                     Issues& issues, bool required) {
  const Json* j = child(obj, key);
  if (j == nullptr) {
    if (required) issues.add(join_path(path, key), "required string is missing");
    return std::nullopt;
  }
  if (!j->is_string()) {
    issues.add(join_path(path, key), "expected a string");
    return std::nullopt;
  }
  return j->get<std::string>();
}

// Operator expressions: Pauli string, matrix literal, or {"sum": [{"op": ..., "coeff": ...}]}.
std::optional<Matrix> parse_operator(const Json& j, const std::string& path, Issues& issues) {
  if (j.is_string()) {
    auto m = pauli_string(j.get<std::string>());
    if (!m) issues.add(path, "invalid Pauli string '" + j.get<std::string>() + "' (letters I, X, Y, Z, +, -)");
    return m;
  }
  if (j.is_array()) return parse_matrix(j, path, issues);
  if (j.is_object() && j.contains("sum")) {
    check_keys(j, path, {"sum"}, issues);
    const Json& terms = j["sum"];
    const std::string terms_path = join_path(path, "sum");
    if (!terms.is_array() || terms.empty()) {
      issues.add(terms_path, "expected a non-empty list of terms");
      return std::nullopt;
    }
    std::optional<Matrix> total;
    bool ok = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string term_path = index_path(terms_path, i);
      const Json& term = terms[i];
      if (!term.is_object() || !term.contains("op")) {
        issues.add(term_path, "expected {\"op\": ..., \"coeff\": ...}");
        ok = false;
        continue;
      }
      check_keys(term, term_path, {"op", "coeff"}, issues);
      Complex coeff = 1.0;
      if (term.contains("coeff")) {
        const auto c = parse_complex(term["coeff"]);
        if (!c) {
          issues.add(join_path(term_path, "coeff"), "expected a number or [re, im]");
          ok = false;
          continue;
        }
        coeff = *c;
      }
      auto op = parse_operator(term["op"], join_path(term_path, "op"), issues);
      if (!op) {
        ok = false;
        continue;
      }
      if (total && (total->rows() != op->rows() || total->cols() != op->cols())) {
        issues.add(term_path, "term dimension differs from earlier terms");
        ok = false;
        continue;
      }
      total = total ? Matrix(*total + coeff * *op) : Matrix(coeff * *op);
    }
    if (!ok) return std::nullopt;
    return total;
  }
  issues.add(path, "expected a Pauli string, a matrix literal or {\"sum\": [...]}");
  return std::nullopt;
}

std::optional<Matrix> square_operator(const Json& j, const std::string& path, Issues& issues) {
  auto m = parse_operator(j, path, issues);
  if (m && m->rows() != m->cols()) {
    issues.add(path, "operator must be square");
    return std::nullopt;
  }
  return m;
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Matrix parity_operator(int n_qubits) {
  Matrix p = Matrix::Identity(1, 1);
  for (int i = 0; i < n_qubits; ++i) p = kron(p, ops::sigma_z());
  return p;
}

int log2_dim(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

void parse_chain(const Json& params, const std::string& path, ModelSection& model, Issues& issues) {
  check_keys(params, path, {"n_sites", "local_dim", "hamiltonian_terms", "local_jumps", "dim_cap"}, issues);
  models::ChainSpec spec;
  const auto n = integer_at(params, "n_sites", path, issues, 1);
  const auto d = integer_at(params, "local_dim", path, issues, 2, 2);
  const auto cap = integer_at(params, "dim_cap", path, issues, 1, static_cast<int>(models::kDefaultDimCap));
  bool ok = n && d && cap;
  if (ok) {
    spec.n_sites = *n;
    spec.local_dim = *d;
    spec.dim_cap = *cap;
  }
  if (const Json* terms = child(params, "hamiltonian_terms")) {
    const std::string terms_path = join_path(path, "hamiltonian_terms");
    if (!terms->is_array()) {
      issues.add(terms_path, "expected a list");
      ok = false;
    } else {
      for (std::size_t i = 0; i < terms->size(); ++i) {
        const std::string term_path = index_path(terms_path, i);
        const Json& t = (*terms)[i];
        if (!t.is_object() || !t.contains("op")) {
          issues.add(term_path, "expected {\"op\": ...}");
          ok = false;
          continue;
        }
        check_keys(t, term_path, {"op", "coeff"}, issues);
        auto op = square_operator(t["op"], join_path(term_path, "op"), issues);
        Complex coeff = 1.0;
        if (t.contains("coeff")) {
          const auto c = parse_complex(t["coeff"]);
          if (!c) issues.add(join_path(term_path, "coeff"), "expected a number or [re, im]");
          coeff = c.value_or(0.0);
          ok = ok && c.has_value();
        }
        if (!op) {
          ok = false;
          continue;
        }
        if (ok && hermiticity_defect(coeff * *op) > kOperatorTol) {
          issues.add(term_path, "Hamiltonian term is not Hermitian");
          ok = false;
        }
        spec.hamiltonian_terms.push_back({coeff * *op, 1});
      }
    }
  }
  if (const Json* jumps = child(params, "local_jumps")) {
    const std::string jumps_path = join_path(path, "local_jumps");
    if (!jumps->is_array()) {
      issues.add(jumps_path, "expected a list");
      ok = false;
    } else {
      for (std::size_t i = 0; i < jumps->size(); ++i) {
        const std::string jump_path = index_path(jumps_path, i);
        const Json& t = (*jumps)[i];
        if (!t.is_object() || !t.contains("op")) {
          issues.add(jump_path, "expected {\"op\": ..., \"rate\": ...}");
          ok = false;
          continue;
        }
        check_keys(t, jump_path, {"op", "rate"}, issues);
        auto op = square_operator(t["op"], join_path(jump_path, "op"), issues);
        const auto rate = non_negative_at(t, "rate", jump_path, issues, 1.0);
        if (!op || !rate) {
          ok = false;
          continue;
        }
        spec.local_jumps.push_back({*op, *rate});
      }
    }
  }
  if (!ok) return;
  try {
    auto chain = models::build_chain(spec);
    model.rep = chain.rep;
    model.builtin_symmetries.emplace("translation", chain.translation);
    if (spec.local_dim == 2) model.builtin_symmetries.emplace("parity", SymmetrySpec::unitary(parity_operator(spec.n_sites)));
    model.chain = std::move(chain);
  } catch (const Error& e) {
    issues.add(path, e.what());
  }
}

void parse_spin(const Json& params, const std::string& path, ModelSection& model, Issues& issues) {
  check_keys(params, path, {"n_spins", "v", "w", "rates", "dim_cap"}, issues);
  const auto n = integer_at(params, "n_spins", path, issues, 1);
  const auto cap = integer_at(params, "dim_cap", path, issues, 1, static_cast<int>(models::kDefaultDimCap));
  if (!n || !cap) return;
  models::SpinModelSpec spec;
  spec.n_spins = *n;
  spec.dim_cap = *cap;
  bool ok = true;
  spec.v = Eigen::MatrixXd::Zero(*n, *n);
  if (const Json* v = child(params, "v")) {
    const std::string v_path = join_path(path, "v");
    if (v->is_number()) {
      // A scalar couples every distinct pair.
      spec.v = Eigen::MatrixXd::Constant(*n, *n, v->get<double>());
      spec.v.diagonal().setZero();
    } else {
      const auto m = parse_matrix(*v, v_path, issues);
      if (!m) {
        ok = false;
      } else if (m->rows() != *n || m->cols() != *n || m->imag().norm() != 0.0) {
        issues.add(v_path, "expected a real n_spins x n_spins matrix");
        ok = false;
      } else if ((m->real() - m->real().transpose()).norm() > 0.0) {
        issues.add(v_path, "couplings must be symmetric");
        ok = false;
      } else {
        spec.v = m->real();
      }
    }
  }
  if (const Json* w = child(params, "w")) {
    const std::string w_path = join_path(path, "w");
    const auto expected = static_cast<std::size_t>(*n) * static_cast<std::size_t>(*n) * static_cast<std::size_t>(*n) *
                          static_cast<std::size_t>(*n);
    if (!w->is_array() || w->size() != expected ||
        !std::all_of(w->begin(), w->end(), [](const Json& x) { return x.is_number(); })) {
      issues.add(w_path, "expected " + std::to_string(expected) + " real numbers");
      ok = false;
    } else {
      spec.w = w->get<std::vector<double>>();
    }
  }
  const std::string rates_path = join_path(path, "rates");
  const Json* rates = child(params, "rates");
  if (rates == nullptr) {
    spec.rates.assign(static_cast<std::size_t>(*n), 1.0);
  } else if (rates->is_number()) {
    spec.rates.assign(static_cast<std::size_t>(*n), rates->get<double>());
  } else if (rates->is_array() && rates->size() == static_cast<std::size_t>(*n) &&
             std::all_of(rates->begin(), rates->end(), [](const Json& x) { return x.is_number(); })) {
    spec.rates = rates->get<std::vector<double>>();
  } else {
    issues.add(rates_path, "expected a number or one rate per spin");
    ok = false;
  }
  if (std::any_of(spec.rates.begin(), spec.rates.end(), [](double r) { return !(r >= 0.0); })) {
    issues.add(rates_path, "rates must be non-negative");
    ok = false;
  }
  if (!ok) return;
  try {
    auto spin = models::build_spin_model(spec);
    model.rep = spin.rep;
    model.builtin_symmetries.emplace("s_z", spin.s_z);
    model.builtin_symmetries.emplace("translation", spin.translation);
    model.spin = std::move(spin);
  } catch (const Error& e) {
    issues.add(path, e.what());
  }
}

void parse_explicit(const Json& section, const std::string& path, ModelSection& model, Issues& issues) {
  const std::string h_path = join_path(path, "hamiltonian");
  const Json* h = child(section, "hamiltonian");
  if (h == nullptr) {
    issues.add(h_path, "required operator is missing");
    return;
  }
  auto hm = square_operator(*h, h_path, issues);
  if (!hm) return;
  if (hermiticity_defect(*hm) > kOperatorTol) issues.add(h_path, "Hamiltonian is not Hermitian");
  model.rep.hamiltonian = *hm;
  if (const Json* jumps = child(section, "jumps")) {
    const std::string jumps_path = join_path(path, "jumps");
    if (!jumps->is_array()) {
      issues.add(jumps_path, "expected a list of operators");
      return;
    }
    for (std::size_t i = 0; i < jumps->size(); ++i) {
      auto j = square_operator((*jumps)[i], index_path(jumps_path, i), issues);
      if (!j) continue;
      if (j->rows() != hm->rows()) {
        issues.add(index_path(jumps_path, i), "dimension differs from the Hamiltonian");
        continue;
      }
      model.rep.jumps.push_back(*j);
    }
  }
  if (is_power_of_two(hm->rows()) && hm->rows() > 1) {
    model.builtin_symmetries.emplace("parity", SymmetrySpec::unitary(parity_operator(log2_dim(hm->rows()))));
  }
}

void parse_model(const Json& section, ModelSection& model, Issues& issues) {
  const std::string path = "model";
  if (!section.is_object()) {
    issues.add(path, "expected an object");
    return;
  }
  check_keys(section, path, {"builder", "params", "hamiltonian", "jumps"}, issues);
  const auto builder = string_at(section, "builder", path, issues, true);
  if (!builder) return;
  model.present = true;
  model.builder = *builder;
  static const Json kEmpty = Json::object();
  const Json* params_ptr = child(section, "params");
  const Json& params = params_ptr != nullptr ? *params_ptr : kEmpty;
  const std::string params_path = "model.params";
  if (!params.is_object()) {
    issues.add(params_path, "expected an object");
    return;
  }
  if (*builder != "explicit" && (child(section, "hamiltonian") != nullptr || child(section, "jumps") != nullptr)) {
    issues.add(path, "hamiltonian/jumps are only read by the explicit builder");
  }
  const SymmetrySpec parity = SymmetrySpec::unitary(ops::sigma_z());
  if (*builder == "amplitude_damping") {
    check_keys(params, params_path, {"gamma", "delta"}, issues);
    const auto g = non_negative_at(params, "gamma", params_path, issues, 1.0);
    const auto d = number_at(params, "delta", params_path, issues, 0.0);
    if (g && d) model.rep = models::amplitude_damping(*g, *d);
  } else if (*builder == "driven_damped") {
    check_keys(params, params_path, {"omega", "gamma"}, issues);
    const auto o = number_at(params, "omega", params_path, issues, 1.0);
    const auto g = non_negative_at(params, "gamma", params_path, issues, 1.0);
    if (o && g) model.rep = models::driven_damped(*o, *g);
  } else if (*builder == "dephasing" || *builder == "depolarizing") {
    check_keys(params, params_path, {"gamma"}, issues);
    const auto g = non_negative_at(params, "gamma", params_path, issues, 1.0);
    if (g) model.rep = *builder == "dephasing" ? models::dephasing(*g) : models::depolarizing(*g);
  } else if (*builder == "chain") {
    parse_chain(params, params_path, model, issues);
    return;
  } else if (*builder == "spin") {
    parse_spin(params, params_path, model, issues);
    return;
  } else if (*builder == "explicit") {
    if (params_ptr != nullptr) issues.add(params_path, "the explicit builder takes hamiltonian and jumps");
    parse_explicit(section, path, model, issues);
    return;
  } else {
    issues.add(join_path(path, "builder"),
               "unknown builder '" + *builder +
                   "' (amplitude_damping, driven_damped, dephasing, depolarizing, chain, spin, explicit)");
    return;
  }
  model.builtin_symmetries.emplace("parity", parity);
}

void parse_symmetry(const Json& section, const ModelSection& model, RunConfig& cfg, Issues& issues) {
  const std::string path = "symmetry";
  if (!section.is_array()) {
    issues.add(path, "expected a list of symmetry declarations");
    return;
  }
  for (std::size_t i = 0; i < section.size(); ++i) {
    const std::string item_path = index_path(path, i);
    const Json& item = section[i];
    if (!item.is_object()) {
      issues.add(item_path, "expected an object");
      continue;
    }
    check_keys(item, item_path, {"builtin", "kind", "op", "tol_cluster", "name"}, issues);
    const auto tol = non_negative_at(item, "tol_cluster", item_path, issues, kDefaultClusterTol);
    if (!tol) continue;
    if (const auto builtin = string_at(item, "builtin", item_path, issues, false)) {
      if (child(item, "op") != nullptr || child(item, "kind") != nullptr) {
        issues.add(item_path, "a builtin symmetry takes no kind or op");
      }
      const auto it = model.builtin_symmetries.find(*builtin);
      if (it == model.builtin_symmetries.end()) {
        std::string known;
        for (const auto& [name, spec] : model.builtin_symmetries) known += (known.empty() ? "" : ", ") + name;
        issues.add(join_path(item_path, "builtin"), "model provides no symmetry '" + *builtin + "'" +
                                                        (known.empty() ? std::string() : " (available: " + known + ")"));
        continue;
      }
      SymmetrySpec spec = it->second;
      spec.tol_cluster = *tol;
      cfg.symmetry.members.push_back(std::move(spec));
      cfg.symmetry_names.push_back(string_at(item, "name", item_path, issues, false).value_or(*builtin));
      continue;
    }
    const auto kind = string_at(item, "kind", item_path, issues, true);
    const Json* op_json = child(item, "op");
    if (op_json == nullptr) issues.add(join_path(item_path, "op"), "required operator is missing");
    if (!kind || op_json == nullptr) continue;
    if (*kind != "unitary" && *kind != "generator") {
      issues.add(join_path(item_path, "kind"), "expected \"unitary\" or \"generator\"");
      continue;
    }
    const auto op = square_operator(*op_json, join_path(item_path, "op"), issues);
    if (!op) continue;
    SymmetrySpec spec = *kind == "unitary" ? SymmetrySpec::unitary(*op, *tol) : SymmetrySpec::generator(*op, *tol);
    try {
      spec.validate();
    } catch (const Error& e) {
      issues.add(join_path(item_path, "op"), e.what());
      continue;
    }
    cfg.symmetry.members.push_back(std::move(spec));
    cfg.symmetry_names.push_back(string_at(item, "name", item_path, issues, false).value_or("symmetry" + std::to_string(i)));
  }
}

std::optional<std::uint64_t> parse_seed(const Json& j, const std::string& path, Issues& issues) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  issues.add(path, "expected a non-negative integer");
  return std::nullopt;
}

void parse_simulation(const Json& section, Eigen::Index dim, SimulationSection& sim, Issues& issues) {
  const std::string path = "simulation";
  if (!section.is_object()) {
    issues.add(path, "expected an object");
    return;
  }
  check_keys(section, path,
             {"t_final", "times", "n_times", "n_traj", "seed", "initial_state", "observables", "event_logs",
              "time_average"},
             issues);
  if (child(section, "t_final") != nullptr) sim.t_final = non_negative_at(section, "t_final", path, issues).value_or(0.0);
  if (child(section, "n_traj") != nullptr) sim.n_traj = integer_at(section, "n_traj", path, issues, 1).value_or(0);
  if (const Json* s = child(section, "seed")) sim.seed = parse_seed(*s, join_path(path, "seed"), issues);
  if (const Json* times = child(section, "times")) {
    const std::string times_path = join_path(path, "times");
    if (!times->is_array() || times->empty() ||
        !std::all_of(times->begin(), times->end(), [](const Json& x) { return x.is_number(); })) {
      issues.add(times_path, "expected a non-empty list of numbers");
    } else {
      sim.times = times->get<std::vector<double>>();
      for (std::size_t i = 0; i < sim.times.size(); ++i) {
        if (!(sim.times[i] >= 0.0) || (i > 0 && sim.times[i] < sim.times[i - 1])) {
          issues.add(times_path, "sample times must be non-negative and ascending");
          break;
        }
      }
      if (!sim.times.empty() && sim.times.back() > sim.t_final) {
        issues.add(times_path, "sample times must not exceed simulation.t_final");
      }
    }
    if (child(section, "n_times") != nullptr) issues.add(join_path(path, "n_times"), "give either times or n_times");
  } else if (child(section, "n_times") != nullptr) {
    if (const auto n = integer_at(section, "n_times", path, issues, 2)) {
      for (int i = 0; i < *n; ++i) sim.times.push_back(sim.t_final * i / (*n - 1));
    }
  }
  if (const Json* init = child(section, "initial_state")) {
    const std::string init_path = join_path(path, "initial_state");
    std::optional<Vector> psi;
    if (init->is_object() && init->contains("basis")) {
      check_keys(*init, init_path, {"basis"}, issues);
      const auto b = integer_at(*init, "basis", init_path, issues, 0);
      if (b) {
        if (dim > 0 && *b >= dim) {
          issues.add(join_path(init_path, "basis"), "index outside the Hilbert space of dimension " + std::to_string(dim));
        } else if (dim > 0) {
          psi = Vector::Zero(dim);
          (*psi)(*b) = 1.0;
        }
      }
    } else if (init->is_object() && init->contains("vector")) {
      check_keys(*init, init_path, {"vector"}, issues);
      psi = parse_vector((*init)["vector"], join_path(init_path, "vector"), issues);
    } else {
      issues.add(init_path, "expected {\"basis\": i} or {\"vector\": [...]}");
    }
    if (psi) {
      if (dim > 0 && psi->size() != dim) {
        issues.add(init_path, "state length differs from the model dimension " + std::to_string(dim));
      } else if (psi->norm() == 0.0) {
        issues.add(init_path, "state has zero norm");
      } else {
        sim.initial_state = *psi / psi->norm();
      }
    }
  }
  if (const Json* obs = child(section, "observables")) {
    const std::string obs_path = join_path(path, "observables");
    if (!obs->is_array()) {
      issues.add(obs_path, "expected a list");
    } else {
      std::set<std::string> names;
      for (std::size_t i = 0; i < obs->size(); ++i) {
        const std::string item_path = index_path(obs_path, i);
        const Json& item = (*obs)[i];
        if (!item.is_object()) {
          issues.add(item_path, "expected {\"name\": ..., \"op\": ...}");
          continue;
        }
        check_keys(item, item_path, {"name", "op"}, issues);
        const auto name = string_at(item, "name", item_path, issues, true);
        const Json* op_json = child(item, "op");
        if (op_json == nullptr) issues.add(join_path(item_path, "op"), "required operator is missing");
        if (!name || op_json == nullptr) continue;
        if (!names.insert(*name).second) issues.add(join_path(item_path, "name"), "duplicate observable name");
        if (name->find_first_of(",\"\n") != std::string::npos) {
          issues.add(join_path(item_path, "name"), "names may not contain commas, quotes or newlines");
        }
        auto op = square_operator(*op_json, join_path(item_path, "op"), issues);
        if (!op) continue;
        if (dim > 0 && op->rows() != dim) {
          issues.add(join_path(item_path, "op"), "dimension differs from the model dimension " + std::to_string(dim));
          continue;
        }
        sim.observables.push_back({*name, *op});
      }
    }
  }
  if (const Json* ev = child(section, "event_logs")) {
    if (!ev->is_boolean()) {
      issues.add(join_path(path, "event_logs"), "expected true or false");
    } else {
      sim.event_logs = ev->get<bool>();
    }
  }
  if (const Json* ta = child(section, "time_average")) {
    const std::string ta_path = join_path(path, "time_average");
    if (!ta->is_object()) {
      issues.add(ta_path, "expected {\"t_burn\": ..., \"t_total\": ...}");
    } else {
      check_keys(*ta, ta_path, {"t_burn", "t_total"}, issues);
      const auto burn = non_negative_at(*ta, "t_burn", ta_path, issues, 0.0);
      const auto total = non_negative_at(*ta, "t_total", ta_path, issues);
      if (burn && total) {
        if (*burn >= *total) {
          issues.add(ta_path, "t_burn must be smaller than t_total");
        } else {
          sim.time_average = TimeAverageSpec{*burn, *total};
        }
      }
    }
  }
}

}  // namespace

std::optional<Task> parse_task(std::string_view name) {
  if (name == "inspect") return Task::Inspect;
  if (name == "repify") return Task::Repify;
  if (name == "liouvillian") return Task::Liouvillian;
  if (name == "steadystate") return Task::SteadyState;
  if (name == "trajectories") return Task::Trajectories;
  if (name == "compare") return Task::Compare;
  return std::nullopt;
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::Inspect: return "inspect";
    case Task::Repify: return "repify";
    case Task::Liouvillian: return "liouvillian";
    case Task::SteadyState: return "steadystate";
    case Task::Trajectories: return "trajectories";
    case Task::Compare: return "compare";
  }
  return "unknown";
}

std::string_view to_string(RepresentationChoice choice) {
  switch (choice) {
    case RepresentationChoice::Original: return "original";
    case RepresentationChoice::Projected: return "projected";
    case RepresentationChoice::Minimal: return "minimal";
    case RepresentationChoice::Builder: return "builder";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<std::pair<std::string, std::string>>& issues) {
  std::ostringstream out;
  out << issues.size() << " schema error" << (issues.size() == 1 ? "" : "s");
  for (const auto& [path, msg] : issues) out << "\n  " << path << ": " << msg;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::pair<std::string, std::string>> issues)
    : Error(ErrorKind::SchemaError, summarize(issues)), issues_(std::move(issues)) {}

std::optional<Matrix> pauli_string(std::string_view letters) {
  if (letters.empty()) return std::nullopt;
  Matrix out = Matrix::Identity(1, 1);
  for (char c : letters) {
    Matrix factor;
    switch (c) {
      case 'I': factor = identity(2); break;
      case 'X': factor = ops::sigma_x(); break;
      case 'Y': factor = ops::sigma_y(); break;
      case 'Z': factor = ops::sigma_z(); break;
      case '+': factor = ops::sigma_plus(); break;
      case '-': factor = ops::sigma_minus(); break;
      default: return std::nullopt;
    }
    out = kron(out, factor);
  }
  return out;
}

RunConfig parse_config_json(const Json& doc, std::optional<Task> task, std::optional<std::uint64_t> seed_override) {
  Issues issues;
  RunConfig cfg;
  if (!doc.is_object()) {
    issues.add("$", "configuration must be a JSON object");
    throw ConfigError(issues.items());
  }
  check_keys(doc, "", {"task", "model", "symmetry", "representation", "simulation", "output"}, issues);

  if (const auto name = string_at(doc, "task", "", issues, false)) {
    const auto parsed = parse_task(*name);
    if (!parsed) {
      issues.add("task", "unknown task '" + *name + "'");
    } else if (task && *task != *parsed) {
      issues.add("task", "config declares '" + *name + "' but the command is '" + std::string(to_string(*task)) + "'");
    } else {
      task = parsed;
    }
  }
  if (!task) {
    issues.add("task", "no task given on the command line or in the config");
    throw ConfigError(issues.items());
  }
  cfg.task = *task;

  if (const Json* model = child(doc, "model")) {
    parse_model(*model, cfg.model, issues);
  } else if (cfg.task != Task::Inspect) {
    issues.add("model", "required section is missing");
  }

  if (const Json* sym = child(doc, "symmetry")) parse_symmetry(*sym, cfg.model, cfg, issues);

  Eigen::Index dim = cfg.model.present && cfg.model.rep.hamiltonian.size() > 0 ? cfg.model.rep.dim() : 0;
  if (dim == 0 && !cfg.symmetry.members.empty()) dim = cfg.symmetry.members.front().op.rows();
  for (std::size_t m = 0; m < cfg.symmetry.members.size(); ++m) {
    if (cfg.symmetry.members[m].op.rows() != dim) {
      issues.add(index_path("symmetry", m), "dimension differs from the model dimension " + std::to_string(dim));
    }
  }
  if (cfg.task == Task::Inspect && cfg.symmetry.members.empty()) {
    issues.add("symmetry", "inspect needs at least one declared symmetry");
  }

  const bool symmetric = !cfg.symmetry.members.empty();
  cfg.representation = symmetric ? RepresentationChoice::Minimal : RepresentationChoice::Original;
  if (const auto rep = string_at(doc, "representation", "", issues, false)) {
    if (*rep == "original") {
      cfg.representation = RepresentationChoice::Original;
    } else if (*rep == "projected") {
      cfg.representation = RepresentationChoice::Projected;
    } else if (*rep == "minimal") {
      cfg.representation = RepresentationChoice::Minimal;
    } else if (*rep == "builder") {
      cfg.representation = RepresentationChoice::Builder;
      if (!cfg.model.chain && !cfg.model.spin) {
        issues.add("representation", "only the chain and spin builders provide a weakly symmetric representation");
      }
    } else {
      issues.add("representation", "expected original, projected, minimal or builder");
    }
    if (!symmetric && cfg.representation != RepresentationChoice::Original) {
      issues.add("representation", "'" + *rep + "' needs at least one declared symmetry");
    }
  }

  if (const Json* sim = child(doc, "simulation")) parse_simulation(*sim, dim, cfg.simulation, issues);
  if (seed_override) cfg.simulation.seed = seed_override;

  auto& sim = cfg.simulation;
  const bool stochastic = cfg.task == Task::Trajectories || cfg.task == Task::Compare;
  if (stochastic) {
    const Json* s = child(doc, "simulation");
    if (s == nullptr) {
      issues.add("simulation", "required section is missing");
    } else {
      if (child(*s, "t_final") == nullptr) issues.add("simulation.t_final", "required number is missing");
      if (child(*s, "times") == nullptr && child(*s, "n_times") == nullptr) {
        issues.add("simulation.times", "give sample times or n_times");
      }
      if (child(*s, "n_traj") == nullptr) issues.add("simulation.n_traj", "required integer is missing");
      if (child(*s, "initial_state") == nullptr) issues.add("simulation.initial_state", "required state is missing");
    }
    if (!sim.seed && (s == nullptr || child(*s, "seed") == nullptr)) {
      issues.add("simulation.seed", "a master seed is mandatory for stochastic tasks");
    }
    if (cfg.task == Task::Compare && sim.observables.empty() && s != nullptr && child(*s, "observables") == nullptr) {
      issues.add("simulation.observables", "compare needs at least one observable");
    }
  }
  if (cfg.task == Task::SteadyState && sim.time_average) {
    if (!sim.seed && !child(doc["simulation"], "seed")) {
      issues.add("simulation.seed", "a master seed is mandatory for time averages");
    }
    if (!sim.initial_state && !child(doc["simulation"], "initial_state")) {
      issues.add("simulation.initial_state", "time averages need an initial state");
    }
  }

  if (const Json* out = child(doc, "output")) {
    if (!out->is_object()) {
      issues.add("output", "expected an object");
    } else {
      check_keys(*out, "output", {"directory", "formats"}, issues);
      if (const auto dir = string_at(*out, "directory", "output", issues, false)) cfg.output_directory = *dir;
      if (const Json* formats = child(*out, "formats")) {
        if (!formats->is_array() ||
            !std::all_of(formats->begin(), formats->end(),
                         [](const Json& f) { return f.is_string() && (f == "json" || f == "csv"); })) {
          issues.add("output.formats", "expected a list drawn from \"json\" and \"csv\"");
        } else {
          cfg.write_json = std::find(formats->begin(), formats->end(), "json") != formats->end();
          cfg.write_csv = std::find(formats->begin(), formats->end(), "csv") != formats->end();
        }
      }
    }
  }

  if (!issues.empty()) throw ConfigError(issues.items());
  return cfg;
}

RunConfig parse_config_text(const std::string& text, std::optional<Task> task,
                            std::optional<std::uint64_t> seed_override) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({{"$", std::string("malformed JSON: ") + e.what()}});
  }
  return parse_config_json(doc, task, seed_override);
}

RunConfig parse_config(const std::string& path, std::optional<Task> task, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"$", "cannot open config file '" + path + "'"}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), task, seed_override);
}

}  // namespace weaksym::cli
