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

#include <random>

#include <Eigen/Dense>

#include "cvctl/core.hpp"

namespace cvctl {

using Rng = std::mt19937_64;

KMatrix random_k(Rng& rng, double scale = 1.0);
LocalRotationPair random_rotation_pair(Rng& rng);

// Haar-random passive (orthogonal symplectic) map on `modes` modes.
Eigen::MatrixXd random_passive(Rng& rng, int modes);

// O D O' with Haar passive factors and squeezing exponents in [-max_sq, max_sq].
SymplecticTransform random_symplectic(Rng& rng, double max_sq = 1.0);

CovarianceMatrix random_pure_state(Rng& rng, double max_sq = 1.0);

}  // namespace cvctl
