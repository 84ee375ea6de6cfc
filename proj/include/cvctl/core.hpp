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

#include <Eigen/Dense>

#include "cvctl/error.hpp"

namespace cvctl {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

// Phase-space ordering is (X1, P1, X2, P2) everywhere.
using CovarianceMatrix = Mat4;
using SymplecticTransform = Mat4;

// H = (X1, P1) K (X2, P2)^T with K = [a d; c b].
struct KMatrix {
  double a = 0.0;
  double d = 0.0;
  double c = 0.0;
  double b = 0.0;

  Mat2 mat() const;
  static KMatrix from(const Mat2& m);
};

KMatrix k_h0();
KMatrix k_bs();
KMatrix k_tms();

// R(phi1) (+) R(phi2); angles are kept in (-pi, pi].
struct LocalRotationPair {
  double phi1 = 0.0;
  double phi2 = 0.0;

  Mat4 mat() const;
  LocalRotationPair inverse() const;
  bool is_identity(double tol = 1e-15) const;
};

// Composition in application order: `first` acts, then `second`.
LocalRotationPair then(const LocalRotationPair& first,
                       const LocalRotationPair& second);

double wrap_angle(double phi);
Mat2 rot(double phi);
double angle_of(const Mat2& r);
Mat2 J();
Mat4 J2();
Mat4 direct_sum(const Mat2& a, const Mat2& b);

struct RestrictedSvd {
  Mat2 R;
  double s1 = 0.0;
  double s2 = 0.0;
  Mat2 S;
};

// K = R diag(s1, s2) S with R, S in SO(2) and s1 >= |s2|.
RestrictedSvd restricted_svd(const Mat2& k);
inline RestrictedSvd restricted_svd(const KMatrix& k) { return restricted_svd(k.mat()); }

struct GeneratorMatrix {
  Mat4 M;
  Mat2 L;
  Mat2 Ltilde;
  double alpha = 0.0;
};

GeneratorMatrix generator(const KMatrix& k);

SymplecticTransform evolve(const KMatrix& k, double t);

// S(t) = prefactor * O (1 + h1 (e13 - e42) + h2 (e24 - e31)) O^T, O = O1 (+) O2.
struct StandardFormS {
  Mat2 O1;
  Mat2 O2;
  double prefactor = 1.0;
  double h1 = 0.0;
  double h2 = 0.0;

  SymplecticTransform reassemble() const;
};

StandardFormS standard_form_S(const KMatrix& k, double t);

CovarianceMatrix apply(const SymplecticTransform& s, const CovarianceMatrix& g);

bool is_symplectic(const Mat4& s, double tol = 1e-10);
// Finite, symmetric and positive definite.
void validate_spd(const Mat4& g);
void validate_cm(const CovarianceMatrix& g);
bool is_pure(const CovarianceMatrix& g);

struct PureStateStandardForm {
  Mat2 S1;
  Mat2 S2;
  double r = 0.0;
  bool product = false;

  CovarianceMatrix reassemble() const;
};

PureStateStandardForm pure_standard_form(const CovarianceMatrix& g);

CovarianceMatrix vacuum();
CovarianceMatrix tms_state(double tprime);
CovarianceMatrix squeezed_state(double r1, double r2);

inline Mat2 block_a(const CovarianceMatrix& g) { return g.topLeftCorner<2, 2>(); }
inline Mat2 block_b(const CovarianceMatrix& g) { return g.bottomRightCorner<2, 2>(); }
inline Mat2 block_c(const CovarianceMatrix& g) { return g.topRightCorner<2, 2>(); }

}  // namespace cvctl
