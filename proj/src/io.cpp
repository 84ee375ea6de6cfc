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

#include "cvctl/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cvctl::io {

namespace {

double number(const json& j, const char* key, double fallback = 0.0) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(Errc::InvalidInput, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

json mat2_to_json(const Mat2& m) { return json::array({m(0, 0), m(0, 1), m(1, 0), m(1, 1)}); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json to_json(const KMatrix& k) { return {{"a", k.a}, {"b", k.b}, {"c", k.c}, {"d", k.d}}; }

KMatrix k_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "Hamiltonian must be an object with a, b, c, d");
  for (const char* key : {"a", "b", "c", "d"}) {
    if (!j.contains(key)) throw Error(Errc::InvalidInput, std::string("Hamiltonian is missing field '") + key + "'");
  }
  KMatrix k{number(j, "a"), number(j, "d"), number(j, "c"), number(j, "b")};
  generator(k);  // finiteness check
  return k;
}

json mat4_to_json(const Mat4& m) {
  json a = json::array();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a.push_back(m(i, j));
  }
  return a;
}

Mat4 mat4_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("cm") ? j.at("cm") : j;
  if (!arr.is_array() || arr.size() != 16) {
    throw Error(Errc::InvalidInput, "4x4 matrices are encoded as 16-element row-major arrays");
  }
  Mat4 m;
  for (int i = 0; i < 16; ++i) {
    if (!arr[i].is_number()) throw Error(Errc::InvalidInput, "matrix entries must be numbers");
    m(i / 4, i % 4) = arr[i].get<double>();
  }
  return m;
}

json to_json(const LocalRotationPair& r) { return {{"phi1", r.phi1}, {"phi2", r.phi2}}; }

LocalRotationPair rotation_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "rotation must be an object with phi1, phi2");
  return {number(j, "phi1"), number(j, "phi2")};
}

json to_json(const Protocol& p) {
  json steps = json::array();
  for (const auto& s : p.steps) {
    steps.push_back({{"phi1", s.rotation.phi1}, {"phi2", s.rotation.phi2}, {"t", s.t}});
  }
  return {{"native_K", to_json(p.native)},
          {"steps", steps},
          {"final", to_json(p.final)},
          {"total_time", p.total_time()}};
}

Protocol protocol_from_json(const json& j) {
  if (!j.is_object() || !j.contains("native_K") || !j.contains("steps")) {
    throw Error(Errc::InvalidInput, "protocol needs native_K and steps");
  }
  Protocol p;
  p.native = k_from_json(j.at("native_K"));
  for (const auto& s : j.at("steps")) {
    const double t = number(s, "t");
    if (!(t >= 0.0)) throw Error(Errc::InvalidInput, "step durations must be non-negative");
    p.steps.push_back({rotation_from_json(s), t});
  }
  if (j.contains("final")) p.final = rotation_from_json(j.at("final"));
  return p;
}

json to_json(const SimulationPlan& p) {
  json weights = json::array(), frames = json::array();
  for (const auto& t : p.terms) {
    weights.push_back(t.weight);
    frames.push_back(to_json(t.frame));
  }
  return {{"native_K", to_json(p.native)}, {"target_K", to_json(p.target)}, {"weights", weights},
          {"rotations", frames},         {"kappa", p.kappa},             {"t_target", p.t_target},
          {"t_total", p.t_total},        {"e", p.e},                     {"f", p.f}};
}

json to_json(const GateSequence& seq) {
  json a = json::array();
  for (const auto& g : seq) {
    if (g.kind == GateKind::Rot) {
      a.push_back({{"kind", "rot"}, {"phi1", g.rotation.phi1}, {"phi2", g.rotation.phi2}});
    } else {
      a.push_back({{"kind", g.kind == GateKind::BS ? "bs" : "tms"}, {"t", g.t}, {"barred", g.barred}});
    }
  }
  return a;
}

GateSequence gates_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, "gate sequence must be an array");
  GateSequence seq;
  for (const auto& g : j) {
    const std::string kind = g.value("kind", "");
    const bool barred = g.value("barred", false);
    if (kind == "rot") {
      seq.push_back(gate_rot(number(g, "phi1"), number(g, "phi2")));
    } else if (kind == "bs") {
      seq.push_back(gate_bs(number(g, "t"), barred));
    } else if (kind == "tms") {
      seq.push_back(gate_tms(number(g, "t"), barred));
    } else {
      throw Error(Errc::InvalidInput, "unknown gate kind '" + kind + "'");
    }
  }
  return seq;
}

json to_json(const EntanglementReport& r) {
  json j = {{"pure", r.pure},
            {"r", r.r},
            {"E0", r.E0},
            {"Ep", r.Ep},
            {"negativity", r.negativity},
            {"entropy", r.entropy},
            {"entropy_alt", r.entropy_alt}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

json to_json(const SqueezingReport& r) {
  return {{"lambda_min", r.lambda_min},
          {"S", r.S},
          {"Q", r.Q},
          {"x", {r.x(0), r.x(1), r.x(2), r.x(3)}},
          {"degenerate", r.degenerate}};
}

json to_json(const EntanglementRatePlan& p) {
  const LocalRotationPair rp = p.rotations();
  return {{"l", p.l}, {"gamma_rate", p.gamma_rate}, {"phi1", rp.phi1}, {"phi2", rp.phi2},
          {"Y", mat2_to_json(p.Y)}, {"tied", p.tied}};
}

json to_json(const SqueezingRatePlan& p) {
  return {{"C_S", p.C_S},
          {"g_S", p.g_S},
          {"gamma_rate", p.gamma_rate},
          {"phi_R", angle_of(p.R_opt)},
          {"O_tilde", mat2_to_json(p.O_tilde)}};
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream out;
  out << "t,E0,negativity,S,Q,rate\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const NodeReport& n = tr.nodes[i];
    out << fmt(tr.t[i]) << ',' << fmt(n.E0) << ',' << fmt(n.negativity) << ',' << fmt(n.S) << ','
        << fmt(n.Q) << ',' << fmt(n.rate) << '\n';
  }
  return out.str();
}

json to_json(const Trajectory& tr) {
  json rows = json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const NodeReport& n = tr.nodes[i];
    rows.push_back({{"t", tr.t[i]},
                    {"E0", n.E0},
                    {"negativity", n.negativity},
                    {"S", n.S},
                    {"Q", n.Q},
                    {"rate", n.rate}});
  }
  return {{"nodes", rows}, {"final_cm", tr.cm.empty() ? json() : mat4_to_json(tr.cm.back())}};
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::InvalidInput, "cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw Error(Errc::InvalidInput, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidInput, "cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

namespace {

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, "malformed JSON in " + origin + ": " + e.what());
  }
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::InvalidInput, "expected a number, got '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw Error(Errc::InvalidInput, "expected a number, got '" + s + "'");
  return v;
}

}  // namespace

KMatrix parse_hamiltonian(const std::string& spec) {
  std::string name = spec;
  if (name.rfind("preset:", 0) == 0) name = name.substr(7);
  if (name == "h0") return k_h0();
  if (name == "hbs") return k_bs();
  if (name == "htms") return k_tms();
  if (spec.rfind("preset:", 0) == 0) throw Error(Errc::InvalidInput, "unknown preset '" + name + "'");
  if (!spec.empty() && spec.front() == '{') return k_from_json(parse_json_text(spec, "inline Hamiltonian"));
  return k_from_json(parse_json_text(read_file(spec), spec));
}

CovarianceMatrix parse_state(const std::string& spec) {
  CovarianceMatrix g;
  if (spec == "vacuum") {
    g = vacuum();
  } else if (spec == "fig3") {
    g = fig3_initial_state();
  } else if (spec == "fig1") {
    g = squeezed_state(0.0, 2.5);
  } else if (spec.rfind("squeezed:", 0) == 0) {
    const std::string args = spec.substr(9);
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      g = squeezed_state(0.0, parse_number(args));
    } else {
      g = squeezed_state(parse_number(args.substr(0, comma)), parse_number(args.substr(comma + 1)));
    }
  } else if (spec.rfind("tms:", 0) == 0) {
    g = tms_state(parse_number(spec.substr(4)));
  } else {
    g = mat4_from_json(parse_json_text(read_file(spec), spec));
  }
  validate_cm(g);
  return g;
}

}  // namespace cvctl::io
