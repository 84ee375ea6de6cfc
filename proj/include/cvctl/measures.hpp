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

#include "cvctl/core.hpp"

namespace cvctl {

struct EntanglementReport {
  bool pure = false;
  double r = 0.0;   // two-mode squeezing parameter (pure states only)
  double E0 = 0.0;  // log-negativity, equals r on pure states
  double Ep = 0.0;  // det A
  double negativity = 1.0;
  // Von Neumann entropy of the reduced state. `entropy_alt` evaluates the
  // same closed form with cosh r = sqrt(det A) substituted instead.
  double entropy = 0.0;
  double entropy_alt = 0.0;
  std::string warning;
};

struct SqueezingReport {
  double lambda_min = 1.0;
  double S = 1.0;
  double Q = 0.0;
  Vec4 x = Vec4::Zero();
  Vec2 x1 = Vec2::Zero();
  Vec2 x2 = Vec2::Zero();
  bool degenerate = false;
};

double negativity(const CovarianceMatrix& g);
EntanglementReport entanglement(const CovarianceMatrix& g);
SqueezingReport squeezing(const CovarianceMatrix& g);

}  // namespace cvctl
