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

#include "cvctl/rates.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cvctl/measures.hpp"

namespace cvctl {

namespace {

Mat2 sigma_z() { return Vec2(1.0, -1.0).asDiagonal(); }

Mat2 sigma_x() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

void require_pure(const CovarianceMatrix& g) {
  validate_cm(g);
  if (!is_pure(g)) throw Error(Errc::NotPure, "rates are defined for pure states");
}

}  // namespace

LocalRotationPair EntanglementRatePlan::rotations() const {
  return {wrap_angle(angle_of(O1)), wrap_angle(angle_of(O2))};
}

LocalRotationPair EntanglementRatePlan::tie_rotations(double theta) const {
  const Mat2 o1 = P * rot(theta) * V;
  const Mat2 o2 = Q.transpose() * rot(-theta) * U.transpose();
  return {wrap_angle(angle_of(o1)), wrap_angle(angle_of(o2))};
}

Mat2 y_matrix(const CovarianceMatrix& g) {
  require_pure(g);
  const Mat2 a = block_a(g), c = block_c(g);
  const double mdc = -c.determinant();
  if (mdc >= 1e-14) return std::sqrt(a.determinant() / mdc) * c.transpose() * a.inverse();
  // No divergence as det C -> 0: use the canonical product-state S1, S2.
  Mat4 prod = Mat4::Identity();
  prod.topLeftCorner<2, 2>() = a;
  prod.bottomRightCorner<2, 2>() = block_b(g);
  const PureStateStandardForm sf = pure_standard_form(prod);
  return sf.S2 * sigma_z() * sf.S1.inverse();
}

namespace {

// For det Y = -1 the restricted singular values are (e^l, -e^-l), and the
// rotation-symmetric part of Y has norm sinh l.
double l_from_y(const Mat2& y) {
  const double e = 0.5 * (y(0, 0) + y(1, 1));
  const double h = 0.5 * (y(1, 0) - y(0, 1));
  const double scale = std::sqrt(std::abs(y.determinant()));
  return std::asinh(std::hypot(e, h) / scale);
}

}  // namespace

double local_squeezing_param(const CovarianceMatrix& g) { return l_from_y(y_matrix(g)); }

EntanglementRatePlan optimal_entanglement_rate(const CovarianceMatrix& g, const KMatrix& k) {
  EntanglementRatePlan plan;
  plan.Y = y_matrix(g);
  plan.l = l_from_y(plan.Y);
  const GeneratorMatrix gen = generator(k);
  const RestrictedSvd ls = restricted_svd(gen.L);
  const RestrictedSvd ys = restricted_svd(plan.Y);
  plan.P = ls.R;
  plan.Q = ls.S;
  plan.U = ys.R;
  plan.V = ys.S;
  plan.O1 = plan.P * plan.V;
  plan.O2 = plan.Q.transpose() * plan.U.transpose();
  const RestrictedSvd ks = restricted_svd(k);
  plan.gamma_rate = ks.s1 * std::exp(plan.l) - ks.s2 * std::exp(-plan.l);
  plan.tied = plan.l < 1e-8;
  return plan;
}

double entanglement_rate_general(const CovarianceMatrix& g, const KMatrix& k, const Mat2& o1,
                                 const Mat2& o2) {
  const Mat2 y = y_matrix(g);
  return (generator(k).L * o2 * y * o1.transpose()).trace();
}

double squeezing_capability(const KMatrix& k) {
  const RestrictedSvd s = restricted_svd(k);
  return s.s1 - s.s2;
}

Vec4 squeezing_direction(const CovarianceMatrix& g) {
  const SqueezingReport rep = squeezing(g);
  if (!rep.degenerate) return rep.x;
  Eigen::SelfAdjointEigenSolver<Mat4> es(g);
  int k = 1;
  while (k < 4 && es.eigenvalues()(k) - es.eigenvalues()(0) < 1e-10) ++k;
  const Eigen::MatrixXd u = es.eigenvectors().leftCols(k);
  // |x1|^2 restricted to the eigenspace; aim for the balanced value 1/2.
  const Eigen::MatrixXd gram = u.topRows(2).transpose() * u.topRows(2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(gram);
  const double lo = gs.eigenvalues()(0), hi = gs.eigenvalues()(k - 1);
  Eigen::VectorXd c;
  if (hi - lo < 1e-14) {
    c = gs.eigenvectors().col(0);
  } else {
    const double w = std::clamp((0.5 - lo) / (hi - lo), 0.0, 1.0);
    c = std::sqrt(1.0 - w) * gs.eigenvectors().col(0) + std::sqrt(w) * gs.eigenvectors().col(k - 1);
  }
  Vec4 x = u * c;
  x.normalize();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(x(i)) > 1e-12) {
      if (x(i) < 0.0) x = -x;
      break;
    }
  }
  return x;
}

SqueezingRatePlan optimal_squeezing_rate(const CovarianceMatrix& g, const KMatrix& k) {
  SqueezingRatePlan plan;
  const Vec4 x = squeezing_direction(g);
  plan.x1 = x.head<2>();
  plan.x2 = x.tail<2>();
  plan.C_S = squeezing_capability(k);
  const double n1 = plan.x1.norm(), n2 = plan.x2.norm();
  plan.g_S = 2.0 * n1 * n2;
  plan.gamma_rate = plan.C_S * plan.g_S;

  const RestrictedSvd ks = restricted_svd(k);
  // The rate is 2 C_S x1^T O x2 with O = R^T Rk sigma_x Sk a reflection;
  // it peaks when O maps x2 onto the direction of x1.
  const double phi = std::atan2(plan.x1(1), plan.x1(0)) + std::atan2(plan.x2(1), plan.x2(0));
  plan.O_tilde << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  if (n1 < 1e-14 || n2 < 1e-14) {
    plan.R_opt.setIdentity();
    plan.O_tilde = ks.R.transpose() * ks.R * sigma_x() * ks.S;
  } else {
    plan.R_opt = ks.R * sigma_x() * ks.S * plan.O_tilde.transpose();
  }
  return plan;
}

double squeezing_rate_general(const CovarianceMatrix& g, const KMatrix& k, const Mat2& r,
                              const Mat2& s) {
  const Vec4 x = squeezing_direction(g);
  const Mat2 km = k.mat();
  const Mat2 n = J().transpose() * km + km * J();
  return -2.0 * (r * x.head<2>()).dot(n * (s * x.tail<2>()));
}

}  // namespace cvctl
