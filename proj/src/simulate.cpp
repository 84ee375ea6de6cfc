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

#include "cvctl/simulate.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace cvctl {

namespace {

constexpr double kSlack = 1e-12;

bool degenerate(const RestrictedSvd& sv) { return sv.s1 - std::abs(sv.s2) <= 1e-12 * std::max(1.0, sv.s1); }

// With s1 = |s2| only rescaled copies of the same local class are reachable.
bool same_class(const RestrictedSvd& k, const RestrictedSvd& t) {
  if (t.s1 == 0.0) return true;
  if (k.s1 == 0.0) return false;
  const double tol = 1e-12 * std::max(1.0, t.s1);
  if (t.s1 - std::abs(t.s2) > tol) return false;
  return (k.s2 >= 0.0) == (t.s2 >= 0.0) || std::abs(t.s2) <= tol;
}

}  // namespace

double Protocol::total_time() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.t;
  return t;
}

SymplecticTransform Protocol::symplectic() const {
  Mat4 s = Mat4::Identity();
  for (const auto& step : steps) s = evolve(native, step.t) * step.rotation.mat() * s;
  return final.mat() * s;
}

void ProtocolBuilder::interact(double t) {
  if (t < 0.0) throw Error(Errc::InvalidInput, "interaction durations must be non-negative");
  if (t == 0.0) return;
  protocol_.steps.push_back({pending_, t});
  pending_ = LocalRotationPair{};
}

void ProtocolBuilder::window(const LocalRotationPair& frame, double t) {
  if (t == 0.0) return;
  rotate(frame);
  interact(t);
  rotate(frame.inverse());
}

Protocol ProtocolBuilder::finish() const {
  Protocol p = protocol_;
  p.final = pending_;
  return p;
}

bool can_simulate_efficiently(const KMatrix& k, const KMatrix& target) {
  const RestrictedSvd a = restricted_svd(k), b = restricted_svd(target);
  return a.s1 + a.s2 >= b.s1 + b.s2 - kSlack && a.s1 - a.s2 >= b.s1 - b.s2 - kSlack;
}

double t_min(const KMatrix& k, const KMatrix& target, double t_target) {
  if (!std::isfinite(t_target) || t_target < 0.0) {
    throw Error(Errc::InvalidInput, "target duration must be finite and non-negative");
  }
  const RestrictedSvd a = restricted_svd(k), b = restricted_svd(target);
  if (b.s1 == 0.0 || t_target == 0.0) return 0.0;
  if (degenerate(a)) {
    if (!same_class(a, b)) {
      throw Error(Errc::Degenerate, "native Hamiltonian with s1 = |s2| only simulates its own local class");
    }
    return t_target * b.s1 / a.s1;
  }
  return t_target * std::max((b.s1 + b.s2) / (a.s1 + a.s2), (b.s1 - b.s2) / (a.s1 - a.s2));
}

SimulationPlan synthesize_plan(const KMatrix& k, const KMatrix& target, double t_target,
                               std::optional<double> t_total) {
  if (!std::isfinite(t_target) || t_target <= 0.0) {
    throw Error(Errc::InvalidInput, "plan synthesis needs a positive target duration");
  }
  const RestrictedSvd a = restricted_svd(k), b = restricted_svd(target);
  const double tmin = t_min(k, target, t_target);
  const double t = t_total.value_or(tmin);
  if (!(t > 0.0)) {
    // Zero target Hamiltonian: a plan that consumes no interaction time.
    if (b.s1 != 0.0) throw Error(Errc::Infeasible, "total time must be positive");
  }

  SimulationPlan plan;
  plan.native = k;
  plan.target = target;
  plan.t_target = t_target;
  plan.t_total = t;
  plan.kappa = t > 0.0 ? t_target / t : 0.0;

  const double s1pp = t > 0.0 ? b.s1 * t_target / t : 0.0;
  const double s2pp = t > 0.0 ? b.s2 * t_target / t : 0.0;
  double e, f;
  if (degenerate(a)) {
    e = a.s1 > 0.0 ? s1pp / a.s1 : 0.0;
    f = 0.0;
  } else {
    const double den = a.s1 * a.s1 - a.s2 * a.s2;
    e = (a.s1 * s1pp - a.s2 * s2pp) / den;
    f = (a.s1 * s2pp - a.s2 * s1pp) / den;
  }
  const double used = std::abs(e) + std::abs(f);
  if (used > 1.0 + kSlack) {
    throw Error(Errc::Infeasible, "requested total time is below the minimal simulation time");
  }
  plan.e = e;
  plan.f = f;
  const double rest = std::max(0.0, 1.0 - used);
  const std::array<double, 4> p = {std::max(e, 0.0) + rest / 2.0, std::max(-e, 0.0) + rest / 2.0,
                                   std::max(f, 0.0), std::max(-f, 0.0)};

  // Hadamard-product pairs (R_i, S_i) acting as R_i diag(s) S_i.
  const Mat2 id = Mat2::Identity(), jt = J().transpose();
  const std::array<Mat2, 4> ri = {id, id, jt, jt};
  const std::array<Mat2, 4> si = {id, Mat2(-id), J(), jt};

  for (int i = 0; i < 4; ++i) {
    if (p[i] <= 0.0) continue;
    // Frame (Rt, St) gives Rt^T K St = b.R R_i diag(s) S_i b.S.
    const Mat2 rt = a.R * ri[i].transpose() * b.R.transpose();
    const Mat2 st = a.S.transpose() * si[i] * b.S;
    plan.terms.push_back({p[i], {wrap_angle(angle_of(rt)), wrap_angle(angle_of(st))}});
  }
  return plan;
}

void append_plan_windows(ProtocolBuilder& builder, const SimulationPlan& plan, int slices) {
  if (slices < 1) throw Error(Errc::InvalidInput, "slices must be at least 1");
  const double dt = plan.t_total / slices;
  const std::size_t m = plan.terms.size();
  if (m == 0) return;
  // Palindromic slice: half windows of terms 1..m-1, a full window of term m,
  // then the halves in reverse. Neighbouring halves merge across slices.
  for (int n = 0; n < slices; ++n) {
    for (std::size_t i = 0; i + 1 < m; ++i) builder.window(plan.terms[i].frame, 0.5 * plan.terms[i].weight * dt);
    builder.window(plan.terms[m - 1].frame, plan.terms[m - 1].weight * dt);
    for (std::size_t i = m - 1; i-- > 0;) builder.window(plan.terms[i].frame, 0.5 * plan.terms[i].weight * dt);
  }
}

Protocol plan_to_protocol(const SimulationPlan& plan, int slices) {
  ProtocolBuilder builder(plan.native);
  append_plan_windows(builder, plan, slices);
  return builder.finish();
}

KMatrix effective_K(const SimulationPlan& plan) {
  if (plan.kappa == 0.0) {
    if (plan.t_target == 0.0 || plan.t_total == 0.0) return KMatrix{};
    throw Error(Errc::InvalidInput, "plan has zero simulation factor");
  }
  const Mat2 k = plan.native.mat();
  Mat2 sum = Mat2::Zero();
  for (const auto& term : plan.terms) {
    sum += term.weight * rot(term.frame.phi1).transpose() * k * rot(term.frame.phi2);
  }
  return KMatrix::from(sum / plan.kappa);
}

SimulationPlan flip_plan(const KMatrix& k, double t) {
  SimulationPlan plan;
  plan.native = k;
  plan.target = KMatrix::from(0.5 * (k.mat() + J() * k.mat() * J()));
  plan.kappa = 1.0;
  plan.t_target = t;
  plan.t_total = t;
  constexpr double pi = std::numbers::pi;
  plan.terms.push_back({0.5, {}});
  plan.terms.push_back({0.5, {wrap_angle(pi / 2.0), wrap_angle(3.0 * pi / 2.0)}});
  return plan;
}

}  // namespace cvctl
