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

#include "cvctl/random.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace cvctl {

KMatrix random_k(Rng& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return KMatrix{n(rng), n(rng), n(rng), n(rng)};
}

LocalRotationPair random_rotation_pair(Rng& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  const double a = u(rng);
  return {a, u(rng)};
}

Eigen::MatrixXd random_passive(Rng& rng, int modes) {
  using Cplx = std::complex<double>;
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd z(modes, modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) z(i, j) = Cplx(n(rng), n(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < modes; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  // a_j = X_j + i P_j transforms by the unitary; realify mode by mode.
  Eigen::MatrixXd o(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    for (int k = 0; k < modes; ++k) {
      const Cplx u = q(j, k);
      o(2 * j, 2 * k) = u.real();
      o(2 * j, 2 * k + 1) = -u.imag();
      o(2 * j + 1, 2 * k) = u.imag();
      o(2 * j + 1, 2 * k + 1) = u.real();
    }
  }
  return o;
}

SymplecticTransform random_symplectic(Rng& rng, double max_sq) {
  std::uniform_real_distribution<double> u(-max_sq, max_sq);
  const double a = u(rng), b = u(rng);
  const Vec4 d(std::exp(a), std::exp(-a), std::exp(b), std::exp(-b));
  const Mat4 o1 = random_passive(rng, 2);
  const Mat4 o2 = random_passive(rng, 2);
  return o1 * d.asDiagonal() * o2;
}

CovarianceMatrix random_pure_state(Rng& rng, double max_sq) {
  const Mat4 s = random_symplectic(rng, max_sq);
  return apply(s, vacuum());
}

}  // namespace cvctl
