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

#pragma once

#include <string>

#include <json.hpp>

#include "cvctl/core.hpp"
#include "cvctl/gates.hpp"
#include "cvctl/measures.hpp"
#include "cvctl/protocols.hpp"
#include "cvctl/rates.hpp"
#include "cvctl/simulate.hpp"

namespace cvctl::io {

using json = nlohmann::json;

json to_json(const KMatrix& k);
KMatrix k_from_json(const json& j);

json mat4_to_json(const Mat4& m);
Mat4 mat4_from_json(const json& j);

json to_json(const LocalRotationPair& r);
LocalRotationPair rotation_from_json(const json& j);

json to_json(const Protocol& p);
Protocol protocol_from_json(const json& j);

json to_json(const SimulationPlan& p);

json to_json(const GateSequence& seq);
GateSequence gates_from_json(const json& j);

json to_json(const EntanglementReport& r);
json to_json(const SqueezingReport& r);
json to_json(const EntanglementRatePlan& p);
json to_json(const SqueezingRatePlan& p);

std::string trajectory_csv(const Trajectory& tr);
json to_json(const Trajectory& tr);

// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// "preset:h0|hbs|htms" (or the bare names), a JSON file, or inline JSON.
KMatrix parse_hamiltonian(const std::string& spec);
// "vacuum", "squeezed:<r>", "squeezed:<r1>,<r2>", "tms:<t'>", "fig3", or a JSON file.
CovarianceMatrix parse_state(const std::string& spec);

}  // namespace cvctl::io
