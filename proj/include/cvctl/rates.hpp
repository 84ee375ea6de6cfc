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

#include "cvctl/core.hpp"

namespace cvctl {

// Pre-rotations are applied to the state right before the interaction:
// gamma -> (O1 (+) O2) gamma (O1 (+) O2)^T, then evolve(K, dt).
struct EntanglementRatePlan {
  double l = 0.0;
  double gamma_rate = 0.0;
  Mat2 O1;
  Mat2 O2;
  Mat2 Y;
  // Factors of L = J^T K = P diag(.) Q and Y = U diag(e^l, -e^-l) V.
  Mat2 P, Q, U, V;
  // For l = 0 the optimum is a one-parameter family, see tie_rotations().
  bool tied = false;

  LocalRotationPair rotations() const;
  LocalRotationPair tie_rotations(double theta) const;
};

struct SqueezingRatePlan {
  double C_S = 0.0;
  double g_S = 0.0;
  double gamma_rate = 0.0;
  Mat2 R_opt;  // rotation of mode 1; mode 2 stays fixed
  Mat2 O_tilde;
  Vec2 x1 = Vec2::Zero();
  Vec2 x2 = Vec2::Zero();
};

// Y = S2 sigma_z S1^{-1} from the pure-state standard form.
Mat2 y_matrix(const CovarianceMatrix& g);

double local_squeezing_param(const CovarianceMatrix& g);

EntanglementRatePlan optimal_entanglement_rate(const CovarianceMatrix& g, const KMatrix& k);

// d r / dt when the pre-rotation (O1, O2) precedes the interaction.
double entanglement_rate_general(const CovarianceMatrix& g, const KMatrix& k, const Mat2& o1,
                                 const Mat2& o2);

double squeezing_capability(const KMatrix& k);

// Minimal eigenvector used for squeezing rates; within a degenerate minimal
// eigenspace the vector maximizing |x1||x2| is selected.
Vec4 squeezing_direction(const CovarianceMatrix& g);

SqueezingRatePlan optimal_squeezing_rate(const CovarianceMatrix& g, const KMatrix& k);

// dQ/dt when (R (+) S) precedes the interaction.
double squeezing_rate_general(const CovarianceMatrix& g, const KMatrix& k, const Mat2& r,
                              const Mat2& s);

}  // namespace cvctl
