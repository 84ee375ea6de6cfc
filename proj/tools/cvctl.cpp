// Copyright 2026 The cvctl Authors
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

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvctl/core.hpp"
#include "cvctl/gates.hpp"
#include "cvctl/io.hpp"
#include "cvctl/measures.hpp"
#include "cvctl/protocols.hpp"
#include "cvctl/rates.hpp"
#include "cvctl/simulate.hpp"

namespace {

using cvctl::io::json;

struct Options {
  std::string hamiltonian = "preset:h0";
  std::string target = "preset:htms";
  std::string state = "vacuum";
  std::string strategy = "greedy";
  std::string protocol_file;
  std::string gates_file;
  std::string symplectic_file;
  std::string which = "fig1";
  std::string out;
  std::string format = "json";
  double t = 1.0;
  double dt = 1e-3;
  double total = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  int steps = 1000;
  int slices = 200;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    cvctl::io::write_atomic(o.out, text);
  }
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

void emit_trajectory(const Options& o, const cvctl::Trajectory& tr) {
  if (o.format == "csv") {
    emit(o, cvctl::io::trajectory_csv(tr));
  } else {
    emit(o, cvctl::io::to_json(tr));
  }
}

std::string bound_csv(const std::vector<double>& grid, const cvctl::KMatrix& k, double r1, double r2) {
  std::string out = "t,N_bound,S_bound\n";
  char buf[96];
  for (double t : grid) {
    const cvctl::Bounds b = cvctl::squeezing_and_negativity_bounds(k, t, r1, r2);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, b.N_bound, b.S_bound);
    out += buf;
  }
  return out;
}

void reproduce_figure(const Options& o) {
  using namespace cvctl;
  const std::string dir = o.out.empty() ? "." : o.out;
  const KMatrix k = k_h0();
  const KMatrix keff = KMatrix::from(0.5 * (k.mat() + J() * k.mat() * J()));
  std::vector<double> grid;
  CovarianceMatrix g0;
  if (o.which == "fig1") {
    grid = uniform_grid(1.5, 1e-3);
    g0 = squeezed_state(0.0, 2.5);
    io::write_atomic(dir + "/fig1_vacuum_optimal_rate.csv",
                     io::trajectory_csv(greedy_rate_strategy(vacuum(), k, grid)));
  } else if (o.which == "fig3") {
    grid = uniform_grid(1e-2, 1e-4);
    for (double t = 1.1e-2; t < 1.0 + 1e-12; t += 1e-3) grid.push_back(std::min(t, 1.0));
    if (grid.back() < 1.0) grid.push_back(1.0);
    g0 = fig3_initial_state();
  } else {
    throw Error(Errc::InvalidInput, "figure must be fig1 or fig3");
  }
  const std::string p = dir + "/" + o.which;
  io::write_atomic(p + "_optimal_rate.csv", io::trajectory_csv(greedy_rate_strategy(g0, k, grid)));
  io::write_atomic(p + "_tms_simulation.csv", io::trajectory_csv(fixed_hamiltonian_run(g0, keff, grid)));
  io::write_atomic(p + "_bare.csv", io::trajectory_csv(fixed_hamiltonian_run(g0, k, grid)));
  const auto [r1, r2] = squeezing_exponents(g0);
  io::write_atomic(p + "_bound.csv", bound_csv(grid, k, r1, r2));
  std::cout << json{{"figure", o.which}, {"outdir", dir}, {"nodes", grid.size()}}.dump() << "\n";
}

void run_strategy(const Options& o) {
  using namespace cvctl;
  const CovarianceMatrix g0 = io::parse_state(o.state);
  if (o.strategy == "protocol") {
    if (o.protocol_file.empty()) throw Error(Errc::InvalidInput, "--protocol is required");
    const Protocol p = io::protocol_from_json(json::parse(io::read_file(o.protocol_file)));
    emit_trajectory(o, run_protocol(g0, p));
    return;
  }
  if (!(o.t > 0.0)) throw Error(Errc::InvalidInput, "--t must be positive");
  const KMatrix k = io::parse_hamiltonian(o.hamiltonian);
  if (o.strategy == "greedy") {
    emit_trajectory(o, greedy_rate_strategy(g0, k, o.t, o.dt));
  } else if (o.strategy == "flip") {
    emit_trajectory(o, run_protocol(g0, flip_strategy(k, o.t, o.steps)));
  } else if (o.strategy == "bare") {
    emit_trajectory(o, fixed_hamiltonian_run(g0, k, uniform_grid(o.t, o.dt)));
  } else if (o.strategy == "tms") {
    const KMatrix keff = KMatrix::from(0.5 * (k.mat() + J() * k.mat() * J()));
    emit_trajectory(o, fixed_hamiltonian_run(g0, keff, uniform_grid(o.t, o.dt)));
  } else {
    throw Error(Errc::InvalidInput, "unknown strategy '" + o.strategy + "'");
  }
}

// Keys of a JSON config object become flags unless given on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config" || i + 1 >= args.size()) continue;
    const json cfg = json::parse(cvctl::io::read_file(args[i + 1]));
    if (!cfg.is_object()) throw cvctl::Error(cvctl::Errc::InvalidInput, "config must be a JSON object");
    args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
      if (key == "command") continue;
      const std::string flag = "--" + key;
      if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
      extra.push_back(flag);
      extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    if (cfg.contains("command") && (args.empty() || args.front().rfind("-", 0) == 0)) {
      args.insert(args.begin(), cfg.at("command").get<std::string>());
    }
    args.insert(args.end(), extra.begin(), extra.end());
    break;
  }
  return args;
}

int exit_code(cvctl::Errc c) {
  switch (c) {
    case cvctl::Errc::Numeric:
    case cvctl::Errc::SingularBlock:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cvctl;
  CLI::App app{"Bilinear two-mode Hamiltonians: simulation, rates, strategies, gate compilation"};
  app.require_subcommand(1);
  Options o;
  std::string config;
  app.add_option("--config", config, "JSON file whose keys supply default flags");

  auto add_h = [&](CLI::App* c) { c->add_option("--hamiltonian", o.hamiltonian, "preset:h0|hbs|htms or JSON file"); };
  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output path (stdout if omitted)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* rsv = app.add_subcommand("rsv", "restricted singular values of K");
  add_h(rsv);
  add_out(rsv);
  auto* simcheck = app.add_subcommand("simcheck", "can K simulate the target efficiently");
  add_h(simcheck);
  simcheck->add_option("--target", o.target);
  add_out(simcheck);
  auto* tmin = app.add_subcommand("tmin", "minimal interaction time");
  add_h(tmin);
  tmin->add_option("--target", o.target);
  tmin->add_option("--t", o.t, "target duration");
  add_out(tmin);
  auto* plan = app.add_subcommand("plan", "synthesize a simulation plan");
  add_h(plan);
  plan->add_option("--target", o.target);
  plan->add_option("--t", o.t, "target duration");
  plan->add_option("--total", o.total, "total interaction time (default: minimal)");
  plan->add_option("--slices", o.slices, "Trotter slices for the emitted protocol");
  add_out(plan);
  auto* evolve_cmd = app.add_subcommand("evolve", "symplectic evolution, optionally applied to a state");
  add_h(evolve_cmd);
  evolve_cmd->add_option("--t", o.t);
  evolve_cmd->add_option("--state", o.state);
  add_out(evolve_cmd);
  auto* measure = app.add_subcommand("measure", "entanglement and squeezing reports");
  measure->add_option("--state", o.state);
  add_out(measure);
  auto* rates = app.add_subcommand("rates", "optimal entanglement and squeezing rates");
  add_h(rates);
  rates->add_option("--state", o.state);
  add_out(rates);
  auto* run = app.add_subcommand("run", "run a strategy and export its trajectory");
  add_h(run);
  run->add_option("--state", o.state);
  run->add_option("--strategy", o.strategy)->check(CLI::IsMember({"greedy", "flip", "bare", "tms", "protocol"}));
  run->add_option("--protocol", o.protocol_file);
  run->add_option("--t", o.t);
  run->add_option("--dt", o.dt);
  run->add_option("--steps", o.steps);
  add_out(run);
  auto* bounds = app.add_subcommand("bounds", "squeezing and negativity bounds");
  add_h(bounds);
  bounds->add_option("--t", o.t);
  bounds->add_option("--r1", o.r1);
  bounds->add_option("--r2", o.r2);
  bounds->add_option("--state", o.state, "take r1, r2 from this state's spectrum");
  add_out(bounds);
  auto* decompose = app.add_subcommand("decompose", "decompose a two-mode symplectic into primitives");
  decompose->add_option("--symplectic", o.symplectic_file, "16-element row-major JSON array")->required();
  add_out(decompose);
  auto* compile = app.add_subcommand("compile", "compile a gate sequence to the native Hamiltonian");
  add_h(compile);
  compile->add_option("--gates", o.gates_file)->required();
  compile->add_option("--slices", o.slices, "Trotter slices per primitive");
  add_out(compile);
  auto* figures = app.add_subcommand("figures", "reproduce figure data as CSV");
  figures->add_option("--which", o.which)->check(CLI::IsMember({"fig1", "fig3"}));
  figures->add_option("--out", o.out, "output directory");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*rsv) {
      const RestrictedSvd s = restricted_svd(io::parse_hamiltonian(o.hamiltonian));
      emit(o, json{{"s1", s.s1}, {"s2", s.s2}, {"phi_R", wrap_angle(angle_of(s.R))}, {"phi_S", wrap_angle(angle_of(s.S))}});
    } else if (*simcheck) {
      const KMatrix k = io::parse_hamiltonian(o.hamiltonian), kt = io::parse_hamiltonian(o.target);
      emit(o, json{{"efficient", can_simulate_efficiently(k, kt)}});
    } else if (*tmin) {
      const KMatrix k = io::parse_hamiltonian(o.hamiltonian), kt = io::parse_hamiltonian(o.target);
      emit(o, json{{"t_min", t_min(k, kt, o.t)}});
    } else if (*plan) {
      const KMatrix k = io::parse_hamiltonian(o.hamiltonian), kt = io::parse_hamiltonian(o.target);
      const SimulationPlan p =
          o.total > 0.0 ? synthesize_plan(k, kt, o.t, o.total) : synthesize_plan(k, kt, o.t);
      json j = io::to_json(p);
      j["effective_K"] = io::to_json(effective_K(p));
      j["protocol"] = io::to_json(plan_to_protocol(p, o.slices));
      emit(o, j);
    } else if (*evolve_cmd) {
      const Mat4 s = evolve(io::parse_hamiltonian(o.hamiltonian), o.t);
      json j{{"S", io::mat4_to_json(s)}};
      if (evolve_cmd->count("--state") > 0) j["cm"] = io::mat4_to_json(apply(s, io::parse_state(o.state)));
      emit(o, j);
    } else if (*measure) {
      const CovarianceMatrix g = io::parse_state(o.state);
      emit(o, json{{"entanglement", io::to_json(entanglement(g))}, {"squeezing", io::to_json(squeezing(g))}});
    } else if (*rates) {
      const CovarianceMatrix g = io::parse_state(o.state);
      const KMatrix k = io::parse_hamiltonian(o.hamiltonian);
      emit(o, json{{"entanglement", io::to_json(optimal_entanglement_rate(g, k))},
                   {"squeezing", io::to_json(optimal_squeezing_rate(g, k))}});
    } else if (*run) {
      run_strategy(o);
    } else if (*bounds) {
      double r1 = o.r1, r2 = o.r2;
      if (bounds->count("--state") > 0) std::tie(r1, r2) = squeezing_exponents(io::parse_state(o.state));
      const Bounds b = squeezing_and_negativity_bounds(io::parse_hamiltonian(o.hamiltonian), o.t, r1, r2);
      emit(o, json{{"S_bound", b.S_bound}, {"N_bound", b.N_bound}, {"r1", r1}, {"r2", r2}});
    } else if (*decompose) {
      const Mat4 s = io::mat4_from_json(json::parse(io::read_file(o.symplectic_file)));
      const GateSequence seq = decompose_gate(s);
      emit(o, json{{"gates", io::to_json(seq)}, {"recomposition_error", (recompose(seq) - s).norm()}});
    } else if (*compile) {
      // Accept either a bare sequence or the output of `decompose`.
      json doc = json::parse(io::read_file(o.gates_file));
      if (doc.is_object() && doc.contains("gates")) doc = doc.at("gates");
      const GateSequence seq = io::gates_from_json(doc);
      emit(o, io::to_json(compile_to_native(seq, io::parse_hamiltonian(o.hamiltonian), o.slices)));
    } else if (*figures) {
      reproduce_figure(o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
