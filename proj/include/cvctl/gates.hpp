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

#include <vector>

#include "cvctl/core.hpp"
#include "cvctl/simulate.hpp"

namespace cvctl {

enum class GateKind { Rot, BS, TMS };

struct GatePrimitive {
  GateKind kind = GateKind::Rot;
  LocalRotationPair rotation;  // Rot only
  double t = 0.0;              // BS / TMS only
  bool barred = false;         // conjugated by the mode-2 quarter turn

  SymplecticTransform mat() const;
  // Hamiltonian whose evolution for time t gives this primitive.
  KMatrix hamiltonian() const;
};

// Primitives in application order: S = M_n ... M_2 M_1.
using GateSequence = std::vector<GatePrimitive>;

GatePrimitive gate_rot(double phi1, double phi2);
GatePrimitive gate_bs(double t, bool barred = false);
GatePrimitive gate_tms(double t, bool barred = false);

SymplecticTransform recompose(const GateSequence& seq);

// I (+) R(pi/2): the mode-2 rotation used for barred primitives.
Mat4 bar_frame();

struct EulerDecomposition {
  Mat4 O;
  Mat4 D;
  Mat4 O_tilde;
  double alpha = 0.0;
  double beta = 0.0;
};

EulerDecomposition euler_decompose(const SymplecticTransform& s);

// O = rot_out * BS(t_bs) * rot_in with t_bs in [0, pi/2].
struct PassiveDecomposition {
  LocalRotationPair rot_out;
  double t_bs = 0.0;
  LocalRotationPair rot_in;
};

PassiveDecomposition passive_decompose(const Mat4& o);

GateSequence synthesize_single_mode_squeezers(double alpha, double beta);

GateSequence decompose_gate(const SymplecticTransform& s);

Protocol compile_to_native(const GateSequence& seq, const KMatrix& k, int slices_per_primitive);

}  // namespace cvctl
