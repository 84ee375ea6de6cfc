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

#include "cvctl/core.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace cvctl {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NotPure: return "NotPure";
    case Errc::Degenerate: return "Degenerate";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NotPassive: return "NotPassive";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::Numeric: return "Numeric";
  }
  return "Unknown";
}

namespace {

constexpr double kAlphaTol = 1e-12;
constexpr double kPurityTol = 1e-9;

void require_finite(const KMatrix& k) {
  if (!std::isfinite(k.a) || !std::isfinite(k.b) || !std::isfinite(k.c) ||
      !std::isfinite(k.d)) {
    throw Error(Errc::InvalidInput, "Hamiltonian matrix has non-finite entries");
  }
}

// Orthogonal eigenbasis with positive determinant, eigenvalues ascending.
void eig_so2(const Mat2& a, Vec2& w, Mat2& v) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(a);
  w = es.eigenvalues();
  v = es.eigenvectors();
  if (v.determinant() < 0) v.col(0) *= -1.0;
}

}  // namespace

Mat2 KMatrix::mat() const {
  Mat2 m;
  m << a, d, c, b;
  return m;
}

KMatrix KMatrix::from(const Mat2& m) {
  return KMatrix{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

KMatrix k_h0() { return KMatrix{1.0, 0.0, 0.0, 0.0}; }
KMatrix k_bs() { return KMatrix{0.0, 1.0, -1.0, 0.0}; }
KMatrix k_tms() { return KMatrix{1.0, 0.0, 0.0, -1.0}; }

double wrap_angle(double phi) {
  constexpr double pi = std::numbers::pi;
  double w = std::remainder(phi, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w + 0.0;  // no negative zero
}

Mat2 rot(double phi) {
  Mat2 r;
  const double c = std::cos(phi), s = std::sin(phi);
  r << c, -s, s, c;
  return r;
}

double angle_of(const Mat2& r) { return std::atan2(r(1, 0) - r(0, 1), r(0, 0) + r(1, 1)); }

Mat2 J() {
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

Mat4 direct_sum(const Mat2& a, const Mat2& b) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = a;
  m.bottomRightCorner<2, 2>() = b;
  return m;
}

Mat4 J2() { return direct_sum(J(), J()); }

Mat4 LocalRotationPair::mat() const { return direct_sum(rot(phi1), rot(phi2)); }

LocalRotationPair LocalRotationPair::inverse() const {
  return {wrap_angle(-phi1), wrap_angle(-phi2)};
}

bool LocalRotationPair::is_identity(double tol) const {
  return std::abs(wrap_angle(phi1)) <= tol && std::abs(wrap_angle(phi2)) <= tol;
}

LocalRotationPair then(const LocalRotationPair& first, const LocalRotationPair& second) {
  return {wrap_angle(first.phi1 + second.phi1), wrap_angle(first.phi2 + second.phi2)};
}

RestrictedSvd restricted_svd(const Mat2& k) {
  // K = Q rot(a2) + R rot(a1) sigma_z; the two pieces diagonalize jointly.
  const double e = 0.5 * (k(0, 0) + k(1, 1));
  const double f = 0.5 * (k(0, 0) - k(1, 1));
  const double g = 0.5 * (k(1, 0) + k(0, 1));
  const double h = 0.5 * (k(1, 0) - k(0, 1));
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double tie = 1e-14 * std::max(q + r, 1e-300);

  double phi = 0.5 * (a2 + a1);
  double theta = 0.5 * (a2 - a1);
  if (r <= tie) {
    phi = 0.0;
    theta = a2;
  } else if (q <= tie) {
    phi = 0.0;
    theta = -a1;
  }
  RestrictedSvd out;
  out.R = rot(phi);
  out.S = rot(theta);
  out.s1 = q + r;
  out.s2 = q - r;
  if (q + r == 0.0) {
    out.R.setIdentity();
    out.S.setIdentity();
  }
  return out;
}

GeneratorMatrix generator(const KMatrix& k) {
  require_finite(k);
  GeneratorMatrix g;
  const Mat2 km = k.mat();
  g.L = J().transpose() * km;
  g.Ltilde = J().transpose() * km.transpose();
  g.M.setZero();
  g.M.topRightCorner<2, 2>() = g.L;
  g.M.bottomLeftCorner<2, 2>() = g.Ltilde;
  g.alpha = -g.L.determinant();
  return g;
}

SymplecticTransform evolve(const KMatrix& k, double t) {
  if (!std::isfinite(t)) throw Error(Errc::InvalidInput, "evolution time must be finite");
  const GeneratorMatrix g = generator(k);
  const double alpha = g.alpha;
  double c, s;
  if (alpha > kAlphaTol) {
    const double w = std::sqrt(alpha);
    c = std::cosh(w * t);
    s = std::sinh(w * t) / w;
  } else if (alpha < -kAlphaTol) {
    const double w = std::sqrt(-alpha);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else {
    const double t2 = t * t;
    c = 1.0 + alpha * t2 / 2.0 + alpha * alpha * t2 * t2 / 24.0;
    s = t * (1.0 + alpha * t2 / 6.0 + alpha * alpha * t2 * t2 / 120.0);
  }
  return c * Mat4::Identity() + s * g.M;
}

SymplecticTransform StandardFormS::reassemble() const {
  Mat4 core = Mat4::Identity();
  core(0, 2) = h1;
  core(1, 3) = h2;
  core(2, 0) = -h2;
  core(3, 1) = -h1;
  const Mat4 o = direct_sum(O1, O2);
  return prefactor * o * core * o.transpose();
}

StandardFormS standard_form_S(const KMatrix& k, double t) {
  if (!std::isfinite(t)) throw Error(Errc::InvalidInput, "evolution time must be finite");
  const GeneratorMatrix g = generator(k);
  const RestrictedSvd sv = restricted_svd(k);
  StandardFormS out;
  out.O1 = J() * sv.R;
  out.O2 = -sv.S.transpose();
  double scale;
  const double alpha = g.alpha;
  if (alpha > kAlphaTol) {
    const double w = std::sqrt(alpha);
    out.prefactor = std::cosh(w * t);
    scale = std::tanh(w * t) / w;
  } else if (alpha < -kAlphaTol) {
    const double w = std::sqrt(-alpha);
    out.prefactor = std::cos(w * t);
    if (std::abs(out.prefactor) < 1e-12) {
      throw Error(Errc::Numeric, "standard form prefactor vanishes at this time");
    }
    scale = std::tan(w * t) / w;
  } else {
    const double t2 = t * t;
    out.prefactor = 1.0 + alpha * t2 / 2.0;
    scale = t * (1.0 - alpha * t2 / 3.0);
  }
  out.h1 = scale * sv.s1;
  out.h2 = scale * sv.s2;
  return out;
}

CovarianceMatrix apply(const SymplecticTransform& s, const CovarianceMatrix& g) {
  const Mat4 out = s * g * s.transpose();
  return 0.5 * (out + out.transpose());
}

bool is_symplectic(const Mat4& s, double tol) {
  const Mat4 j = J2();
  return (s * j * s.transpose() - j).cwiseAbs().maxCoeff() <= tol * std::max(1.0, s.squaredNorm());
}

void validate_spd(const Mat4& g) {
  if (!g.allFinite()) throw Error(Errc::InvalidInput, "covariance matrix has non-finite entries");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    throw Error(Errc::InvalidInput, "covariance matrix is not symmetric");
  }
  Eigen::LLT<Mat4> llt(g);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::InvalidInput, "covariance matrix is not positive definite");
  }
}

void validate_cm(const CovarianceMatrix& g) {
  validate_spd(g);
  if (g.determinant() < 1.0 - kPurityTol) {
    throw Error(Errc::InvalidInput, "covariance matrix violates the uncertainty relation");
  }
}

bool is_pure(const CovarianceMatrix& g) {
  // Absolute 1e-9 is too strict once entries reach e^{+-r} with r of a few units.
  const double lmax = Eigen::SelfAdjointEigenSolver<Mat4>(g, Eigen::EigenvaluesOnly).eigenvalues()(3);
  return std::abs(g.determinant() - 1.0) <= kPurityTol * std::max(1.0, lmax * lmax);
}

CovarianceMatrix PureStateStandardForm::reassemble() const {
  CovarianceMatrix t = tms_state(0.5 * r);
  const Mat4 s = direct_sum(S1, S2);
  return apply(s, t);
}

PureStateStandardForm pure_standard_form(const CovarianceMatrix& g) {
  validate_cm(g);
  if (!is_pure(g)) throw Error(Errc::NotPure, "standard form requires a pure state");
  const Mat2 a = block_a(g), b = block_b(g), c = block_c(g);
  PureStateStandardForm out;
  Vec2 wa, wb;
  Mat2 va, vb;
  eig_so2(a, wa, va);
  eig_so2(b, wb, vb);

  if (c.norm() <= 1e-10) {
    // Product state: S_k is fixed only up to a rotation. Mode 1 gets its
    // eigenvalues ascending, mode 2 descending, which maximizes cosh(2l).
    out.product = true;
    out.r = 0.0;
    out.S1 = va * Vec2(std::sqrt(wa(0)), std::sqrt(wa(1))).asDiagonal();
    Mat2 vb_desc;
    vb_desc.col(0) = vb.col(1);
    vb_desc.col(1) = -vb.col(0);
    out.S2 = vb_desc * Vec2(std::sqrt(wb(1)), std::sqrt(wb(0))).asDiagonal();
    // Isotropic blocks have no preferred axis; keep them rotation free.
    if (wa(1) - wa(0) <= 1e-12 * wa(1)) out.S1 = std::sqrt(wa(0)) * Mat2::Identity();
    if (wb(1) - wb(0) <= 1e-12 * wb(1)) out.S2 = std::sqrt(wb(0)) * Mat2::Identity();
    return out;
  }

  const double sh = std::sqrt(std::max(0.0, -c.determinant()));
  out.r = std::asinh(sh);
  const double ch = std::cosh(out.r);
  if (sh <= 0.0) throw Error(Errc::NotPure, "cross correlations without entanglement");
  const Vec2 d1 = (wa / ch).cwiseSqrt();
  const Vec2 d2 = (wb / ch).cwiseSqrt();
  const Mat2 x = d1.cwiseInverse().asDiagonal() * va.transpose() * c * vb * d2.cwiseInverse().asDiagonal();
  Mat2 sz = Mat2::Identity();
  sz(1, 1) = -1.0;
  const Mat2 o2p = (x / sh).transpose() * sz;
  out.S1 = va * d1.asDiagonal();
  out.S2 = vb * d2.asDiagonal() * o2p;
  return out;
}

CovarianceMatrix vacuum() { return Mat4::Identity(); }

CovarianceMatrix tms_state(double tprime) {
  const double ch = std::cosh(2.0 * tprime), sh = std::sinh(2.0 * tprime);
  Mat4 g = ch * Mat4::Identity();
  g(0, 2) = g(2, 0) = sh;
  g(1, 3) = g(3, 1) = -sh;
  return g;
}

CovarianceMatrix squeezed_state(double r1, double r2) {
  Vec4 d(std::exp(-r1), std::exp(r1), std::exp(-r2), std::exp(r2));
  return d.asDiagonal();
}

}  // namespace cvctl
