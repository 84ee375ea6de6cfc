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

#include <optional>
#include <vector>

#include "cvctl/core.hpp"

namespace cvctl {

struct PlanTerm {
  double weight = 0.0;
  // The window realizes R^T K S: rotate by (R (+) S), interact, rotate back.
  LocalRotationPair frame;
};

struct SimulationPlan {
  KMatrix native;
  KMatrix target;
  std::vector<PlanTerm> terms;
  double kappa = 1.0;
  double t_target = 0.0;
  double t_total = 0.0;
  double e = 0.0;
  double f = 0.0;
};

struct ProtocolStep {
  LocalRotationPair rotation;
  double t = 0.0;
};

// Steps run in order: rotation, then interaction for t. `final` closes the run.
struct Protocol {
  KMatrix native;
  std::vector<ProtocolStep> steps;
  LocalRotationPair final;

  double total_time() const;
  SymplecticTransform symplectic() const;
};

// Accumulates rotations and conjugated interaction windows into a protocol,
// merging consecutive rotations into single controls.
class ProtocolBuilder {
 public:
  explicit ProtocolBuilder(const KMatrix& native) { protocol_.native = native; }

  void rotate(const LocalRotationPair& r) { pending_ = then(pending_, r); }
  void interact(double t);
  void window(const LocalRotationPair& frame, double t);
  Protocol finish() const;

 private:
  Protocol protocol_;
  LocalRotationPair pending_;
};

bool can_simulate_efficiently(const KMatrix& k, const KMatrix& target);

double t_min(const KMatrix& k, const KMatrix& target, double t_target);

SimulationPlan synthesize_plan(const KMatrix& k, const KMatrix& target, double t_target,
                               std::optional<double> t_total = std::nullopt);

// Trotterizes a plan into `slices` symmetric slices (second-order splitting).
void append_plan_windows(ProtocolBuilder& builder, const SimulationPlan& plan, int slices);
Protocol plan_to_protocol(const SimulationPlan& plan, int slices);

KMatrix effective_K(const SimulationPlan& plan);

// Equal-weight native and (pi/2, 3pi/2)-flipped windows: realizes (K + JKJ)/2.
SimulationPlan flip_plan(const KMatrix& k, double t);

}  // namespace cvctl
