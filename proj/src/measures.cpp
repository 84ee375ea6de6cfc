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

#include "cvctl/measures.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace cvctl {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double negativity(const CovarianceMatrix& g) {
  const Vec4 lam(1.0, 1.0, 1.0, -1.0);
  const Mat4 gt = lam.asDiagonal() * g * lam.asDiagonal();
  // Symplectic eigenvalues of gt: nu^2 are the eigenvalues of the symmetric
  // matrix A^T A with A = gt^{1/2} J2 gt^{1/2}.
  Eigen::SelfAdjointEigenSolver<Mat4> es(gt);
  if (es.info() != Eigen::Success || !(es.eigenvalues()(0) > 0.0)) {
    throw Error(Errc::Numeric, "partially transposed matrix is not positive definite");
  }
  const Mat4 root = es.operatorSqrt();
  const Mat4 a = root * J2() * root;
  const Mat4 ata = a.transpose() * a;
  const double nu2 = Eigen::SelfAdjointEigenSolver<Mat4>(0.5 * (ata + ata.transpose()), Eigen::EigenvaluesOnly)
                         .eigenvalues()(0);
  if (!(nu2 > 0.0)) throw Error(Errc::Numeric, "partially transposed spectrum is singular");
  return 1.0 / std::sqrt(nu2);
}

EntanglementReport entanglement(const CovarianceMatrix& g) {
  validate_cm(g);
  EntanglementReport rep;
  rep.negativity = negativity(g);
  rep.Ep = block_a(g).determinant();
  rep.pure = is_pure(g);
  if (rep.pure) {
    rep.r = pure_standard_form(g).r;
    rep.E0 = rep.r;
  } else {
    rep.r = std::numeric_limits<double>::quiet_NaN();
    rep.E0 = std::max(0.0, std::log(rep.negativity));
    rep.warning = "state is mixed: r is undefined and E0 is the log-negativity";
  }
  const double nu = std::sqrt(std::max(1.0, rep.Ep));
  rep.entropy = xlogx((nu + 1.0) / 2.0) - xlogx((nu - 1.0) / 2.0);
  const double rr = std::acosh(nu);
  const double c2 = std::cosh(rr) * std::cosh(rr), s2 = std::sinh(rr) * std::sinh(rr);
  rep.entropy_alt = xlogx(c2) - xlogx(s2);
  if (std::abs(rep.entropy - rep.entropy_alt) > 1e-12 && rep.warning.empty()) {
    rep.warning = "entropy_alt (cosh r = sqrt(det A) convention) differs from the reduced-state entropy";
  }
  return rep;
}

SqueezingReport squeezing(const CovarianceMatrix& g) {
  // Conditional outputs of ideal measurements need not satisfy det >= 1.
  validate_spd(g);
  Eigen::SelfAdjointEigenSolver<Mat4> es(g);
  if (es.info() != Eigen::Success) throw Error(Errc::Numeric, "eigen-decomposition failed");
  SqueezingReport rep;
  rep.lambda_min = es.eigenvalues()(0);
  rep.S = 1.0 / rep.lambda_min;
  rep.Q = 0.0 - std::log(rep.lambda_min);
  rep.degenerate = es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-10;
  Vec4 x = es.eigenvectors().col(0);
  for (int i = 0; i < 4; ++i) {
    if (std::abs(x(i)) > 1e-12) {
      if (x(i) < 0.0) x = -x;
      break;
    }
  }
  rep.x = x;
  rep.x1 = x.head<2>();
  rep.x2 = x.tail<2>();
  return rep;
}

}  // namespace cvctl
