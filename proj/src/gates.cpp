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

#include "cvctl/gates.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace cvctl {

namespace {

constexpr double kQuarter = std::numbers::pi / 4.0;

// Top eigenvector of a symmetric matrix. Inside a degenerate top eigenspace
// the projection of the first standard basis vector with the largest
// projection is used, so that diagonal inputs return basis vectors.
Vec4 top_eigenvector(const Mat4& p) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(p);
  const Vec4 w = es.eigenvalues();
  const double top = w(3);
  int k = 1;
  while (k < 4 && top - w(3 - k) <= 1e-10 * std::max(1.0, std::abs(top))) ++k;
  if (k == 1) return es.eigenvectors().col(3);
  const Eigen::Matrix<double, 4, Eigen::Dynamic> u = es.eigenvectors().rightCols(k);
  int best = 0;
  double best_norm = -1.0;
  for (int j = 0; j < 4; ++j) {
    const double n = u.row(j).norm();
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = j;
    }
  }
  Vec4 v = u * u.row(best).transpose();
  return v.normalized();
}

std::complex<double> block_to_complex(const Mat4& o, int row, int col) {
  const auto b = o.block<2, 2>(2 * row, 2 * col);
  return {0.5 * (b(0, 0) + b(1, 1)), 0.5 * (b(1, 0) - b(0, 1))};
}

void append_passive(GateSequence& seq, const Mat4& o) {
  const PassiveDecomposition pd = passive_decompose(o);
  seq.push_back(gate_rot(pd.rot_in.phi1, pd.rot_in.phi2));
  seq.push_back(gate_bs(pd.t_bs));
  seq.push_back(gate_rot(pd.rot_out.phi1, pd.rot_out.phi2));
}

Mat4 bs_mat(double t) { return evolve(k_bs(), t); }

}  // namespace

Mat4 bar_frame() { return direct_sum(Mat2::Identity(), J()); }

KMatrix GatePrimitive::hamiltonian() const {
  const KMatrix base = kind == GateKind::BS ? k_bs() : k_tms();
  if (kind == GateKind::Rot) return KMatrix{};
  return barred ? KMatrix::from(base.mat() * J().transpose()) : base;
}

SymplecticTransform GatePrimitive::mat() const {
  if (kind == GateKind::Rot) return rotation.mat();
  const KMatrix base = kind == GateKind::BS ? k_bs() : k_tms();
  const Mat4 m = evolve(base, t);
  return barred ? Mat4(bar_frame() * m * bar_frame().transpose()) : m;
}

GatePrimitive gate_rot(double phi1, double phi2) {
  GatePrimitive g;
  g.kind = GateKind::Rot;
  g.rotation = {wrap_angle(phi1), wrap_angle(phi2)};
  return g;
}

GatePrimitive gate_bs(double t, bool barred) {
  GatePrimitive g;
  g.kind = GateKind::BS;
  g.t = t;
  g.barred = barred;
  return g;
}

GatePrimitive gate_tms(double t, bool barred) {
  GatePrimitive g;
  g.kind = GateKind::TMS;
  g.t = t;
  g.barred = barred;
  return g;
}

SymplecticTransform recompose(const GateSequence& seq) {
  Mat4 s = Mat4::Identity();
  for (const auto& p : seq) s = p.mat() * s;
  return s;
}

EulerDecomposition euler_decompose(const SymplecticTransform& s) {
  if (!s.allFinite()) throw Error(Errc::InvalidInput, "symplectic matrix has non-finite entries");
  if (!is_symplectic(s, 1e-8)) throw Error(Errc::InvalidInput, "matrix is not symplectic");
  const Mat4 j = J2();
  const Mat4 p = s * s.transpose();
  const Vec4 v1 = top_eigenvector(p);
  const Vec4 w1 = j * v1;
  const Mat4 pi = Mat4::Identity() - v1 * v1.transpose() - w1 * w1.transpose();
  const Vec4 v2 = top_eigenvector(pi * p * pi);
  const Vec4 w2 = j * v2;

  EulerDecomposition out;
  out.O.col(0) = v1;
  out.O.col(1) = w1;
  out.O.col(2) = v2;
  out.O.col(3) = w2;
  const double l0 = std::max(1.0, v1.dot(p * v1));
  const double l1 = std::max(1.0, v2.dot(p * v2));
  const double a = 0.5 * std::log(l0), b = 0.5 * std::log(l1);
  out.alpha = 0.5 * (a + b);
  out.beta = 0.5 * (a - b);
  out.D = Vec4(std::exp(a), std::exp(-a), std::exp(b), std::exp(-b)).asDiagonal();
  const Vec4 dinv(std::exp(-a), std::exp(a), std::exp(-b), std::exp(b));
  out.O_tilde = dinv.asDiagonal() * out.O.transpose() * s;
  return out;
}

PassiveDecomposition passive_decompose(const Mat4& o) {
  if ((o.transpose() * o - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-10 || !is_symplectic(o)) {
    throw Error(Errc::NotPassive, "matrix is not orthogonal and symplectic");
  }
  const auto u11 = block_to_complex(o, 0, 0), u12 = block_to_complex(o, 0, 1);
  const auto u21 = block_to_complex(o, 1, 0), u22 = block_to_complex(o, 1, 1);
  const double c = std::sqrt(0.5 * (std::norm(u11) + std::norm(u22)));
  const double s = std::sqrt(0.5 * (std::norm(u12) + std::norm(u21)));
  PassiveDecomposition out;
  out.t_bs = std::atan2(s, c);
  const double phi1 = std::arg(u11), phi2 = std::arg(u21);
  const double phi4 = s < c ? std::arg(u22) - phi2 : std::arg(-u12) - phi1;
  out.rot_out = {wrap_angle(phi1), wrap_angle(phi2)};
  out.rot_in = {0.0, wrap_angle(phi4)};
  return out;
}

GateSequence synthesize_single_mode_squeezers(double alpha, double beta) {
  return {gate_bs(-kQuarter, true), gate_tms(alpha), gate_bs(kQuarter, true),
          gate_bs(kQuarter),        gate_tms(beta, true), gate_bs(-kQuarter)};
}

GateSequence decompose_gate(const SymplecticTransform& s) {
  const EulerDecomposition e = euler_decompose(s);
  GateSequence seq;
  if (std::abs(e.alpha) <= 1e-12 && std::abs(e.beta) <= 1e-12) {
    // Passive target: a single rotation / beam splitter / rotation block.
    append_passive(seq, e.O * e.O_tilde);
    return seq;
  }
  const Mat4 f = bar_frame();
  // S = O Dalpha Dbeta Otilde with both diagonal factors expanded through
  // the squeezer sandwiches; adjacent passive pieces are merged.
  const Mat4 p1 = e.O * f * bs_mat(kQuarter) * f.transpose();
  const Mat4 p2 = f * bs_mat(-kQuarter) * f.transpose() * bs_mat(-kQuarter) * f;
  const Mat4 p3 = f.transpose() * bs_mat(kQuarter) * e.O_tilde;
  append_passive(seq, p3);
  seq.push_back(gate_tms(e.beta));
  append_passive(seq, p2);
  seq.push_back(gate_tms(e.alpha));
  append_passive(seq, p1);
  return seq;
}

Protocol compile_to_native(const GateSequence& seq, const KMatrix& k, int slices_per_primitive) {
  if (slices_per_primitive < 1) throw Error(Errc::InvalidInput, "slices must be at least 1");
  const RestrictedSvd sv = restricted_svd(k);
  if (sv.s1 - std::abs(sv.s2) <= 1e-12 * std::max(1.0, sv.s1)) {
    throw Error(Errc::Degenerate, "native Hamiltonian with s1 = |s2| cannot simulate both primitives");
  }
  ProtocolBuilder builder(k);
  for (const auto& p : seq) {
    if (p.kind == GateKind::Rot) {
      builder.rotate(p.rotation);
      continue;
    }
    if (p.t == 0.0) continue;
    const Mat2 target = (p.t > 0.0 ? 1.0 : -1.0) * p.hamiltonian().mat();
    const SimulationPlan plan = synthesize_plan(k, KMatrix::from(target), std::abs(p.t));
    append_plan_windows(builder, plan, slices_per_primitive);
  }
  return builder.finish();
}

}  // namespace cvctl
