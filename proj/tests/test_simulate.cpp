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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvctl/core.hpp"
#include "cvctl/error.hpp"
#include "cvctl/random.hpp"
#include "cvctl/simulate.hpp"

using namespace cvctl;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

KMatrix from_svals(Rng& rng, double s1, double s2) {
  std::uniform_real_distribution<double> a(-kPi, kPi);
  return KMatrix::from(rot(a(rng)) * Vec2(s1, s2).asDiagonal() * rot(a(rng)));
}

bool non_degenerate(const KMatrix& k) {
  const RestrictedSvd sv = restricted_svd(k);
  return sv.s1 - std::abs(sv.s2) > 1e-3;
}

double weight_sum(const SimulationPlan& p) {
  double s = 0.0;
  for (const auto& t : p.terms) s += t.weight;
  return s;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Numeric;
}

}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("simulability examples") {
    Rng rng(11);
    CHECK(can_simulate_efficiently(k_h0(), from_svals(rng, 0.6, 0.3)));
    CHECK_FALSE(can_simulate_efficiently(k_h0(), k_tms()));
    CHECK_FALSE(can_simulate_efficiently(k_h0(), k_bs()));
    const KMatrix k = random_k(rng);
    CHECK(can_simulate_efficiently(k, k));
  }

  TEST_CASE("minimal simulation times") {
    CHECK(t_min(k_h0(), k_bs(), 1.0) == doctest::Approx(2.0));
    CHECK(t_min(k_h0(), k_tms(), 1.0) == doctest::Approx(2.0));
    Rng rng(12);
    const KMatrix k = random_k(rng);
    CHECK(t_min(k, k, 1.0) == doctest::Approx(1.0));
    const KMatrix diag21{2.0, 0.0, 0.0, 1.0};
    const KMatrix target{1.0, 0.0, 0.0, -0.5};
    CHECK(t_min(diag21, target, 1.0) == doctest::Approx(1.5));
    CHECK(t_min(k_h0(), KMatrix{}, 1.0) == 0.0);
  }

  TEST_CASE("degenerate native Hamiltonians only reach their own class") {
    CHECK(code_of([] { t_min(k_bs(), k_tms(), 1.0); }) == Errc::Degenerate);
    CHECK(code_of([] { t_min(k_tms(), k_h0(), 1.0); }) == Errc::Degenerate);
    CHECK(t_min(k_bs(), KMatrix::from(2.0 * k_bs().mat()), 1.0) == doctest::Approx(2.0));
    const SimulationPlan p = synthesize_plan(k_tms(), KMatrix::from(0.5 * k_tms().mat()), 1.0);
    CHECK(max_abs(effective_K(p).mat() - 0.5 * k_tms().mat()) <= 1e-12);
  }

  TEST_CASE("plan for H0 to H_tms at kappa = 1/2") {
    const SimulationPlan p = synthesize_plan(k_h0(), k_tms(), 1.0);
    CHECK(p.kappa == doctest::Approx(0.5));
    CHECK(p.e == doctest::Approx(0.5));
    CHECK(p.f == doctest::Approx(-0.5));
    REQUIRE(p.terms.size() == 2);
    CHECK(p.terms[0].weight == doctest::Approx(0.5));
    CHECK(p.terms[1].weight == doctest::Approx(0.5));
    CHECK(max_abs(effective_K(p).mat() - k_tms().mat()) <= 1e-10);
  }

  TEST_CASE("plan for H0 to H_bs at kappa = 1/2") {
    const SimulationPlan p = synthesize_plan(k_h0(), k_bs(), 1.0);
    CHECK(p.e == doctest::Approx(0.5));
    CHECK(p.f == doctest::Approx(0.5));
    REQUIRE(p.terms.size() == 2);
    CHECK(max_abs(effective_K(p).mat() - k_bs().mat()) <= 1e-10);
  }

  TEST_CASE("self simulation is a single identity term") {
    Rng rng(13);
    KMatrix k;
    do k = random_k(rng);
    while (!non_degenerate(k));
    const SimulationPlan p = synthesize_plan(k, k, 1.0);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].weight == doctest::Approx(1.0));
    CHECK(p.terms[0].frame.is_identity(1e-9));
  }

  TEST_CASE("plans faster than t_min are infeasible") {
    CHECK(code_of([] { synthesize_plan(k_h0(), k_tms(), 1.0, 1.9); }) == Errc::Infeasible);
    const SimulationPlan slow = synthesize_plan(k_h0(), k_tms(), 1.0, 3.0);
    CHECK(weight_sum(slow) == doctest::Approx(1.0));
    CHECK(max_abs(effective_K(slow).mat() - k_tms().mat()) <= 1e-10);
  }

  TEST_CASE("random plans at t_min reproduce the target") {
    Rng rng(14);
    for (int i = 0; i < 10000; ++i) {
      const KMatrix k = random_k(rng), target = random_k(rng);
      if (!non_degenerate(k)) continue;
      const SimulationPlan p = synthesize_plan(k, target, 1.0);
      REQUIRE(p.terms.size() <= 4);
      REQUIRE(std::abs(weight_sum(p) - 1.0) <= 1e-12);
      for (const auto& t : p.terms) REQUIRE(t.weight >= 0.0);
      REQUIRE(max_abs(effective_K(p).mat() - target.mat()) <= 1e-10 * std::max(1.0, max_abs(target.mat())));
      REQUIRE(std::abs(std::abs(p.e) + std::abs(p.f) - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("simulability agrees with t_min") {
    Rng rng(15);
    std::uniform_real_distribution<double> scale(0.2, 1.5);
    for (int i = 0; i < 10000; ++i) {
      const KMatrix k = random_k(rng);
      if (!non_degenerate(k)) continue;
      const KMatrix target = KMatrix::from(scale(rng) * random_k(rng).mat());
      REQUIRE(can_simulate_efficiently(k, target) == (t_min(k, target, 1.0) <= 1.0 + 1e-12));
    }
  }

  TEST_CASE("t_min is homogeneous") {
    Rng rng(16);
    for (int i = 0; i < 1000; ++i) {
      const KMatrix k = random_k(rng), target = random_k(rng);
      if (!non_degenerate(k)) continue;
      const double base = t_min(k, target, 1.0);
      REQUIRE(t_min(k, target, 3.5) == doctest::Approx(3.5 * base).epsilon(1e-12));
      REQUIRE(t_min(KMatrix::from(2.5 * k.mat()), target, 1.0) == doctest::Approx(base / 2.5).epsilon(1e-12));
    }
  }

  TEST_CASE("no plan beats the simulability bound") {
    Rng rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const KMatrix k = random_k(rng);
      SimulationPlan p;
      p.native = k;
      const int n = 1 + static_cast<int>(u(rng) * 4.0) % 4;
      double total = 0.0;
      for (int j = 0; j < n; ++j) {
        const double w = u(rng);
        total += w;
        p.terms.push_back({w, random_rotation_pair(rng)});
      }
      for (auto& t : p.terms) t.weight /= total;
      const KMatrix keff = effective_K(p);
      REQUIRE(can_simulate_efficiently(k, keff));
    }
  }

  TEST_CASE("single term plans become conjugated windows") {
    const LocalRotationPair frame{0.4, -1.1};
    SimulationPlan p;
    p.native = k_h0();
    p.t_total = 0.8;
    p.terms.push_back({1.0, frame});
    const Protocol pr = plan_to_protocol(p, 1);
    REQUIRE(pr.steps.size() == 1);
    CHECK(pr.steps[0].rotation.phi1 == doctest::Approx(frame.phi1));
    CHECK(pr.steps[0].rotation.phi2 == doctest::Approx(frame.phi2));
    CHECK(pr.steps[0].t == doctest::Approx(0.8));
    CHECK(then(pr.final, frame).is_identity(1e-12));
  }

  TEST_CASE("protocol durations are non-negative and sum to the plan time") {
    Rng rng(18);
    for (int i = 0; i < 200; ++i) {
      const KMatrix k = random_k(rng), target = random_k(rng);
      if (!non_degenerate(k)) continue;
      const SimulationPlan p = synthesize_plan(k, target, 0.7);
      const Protocol pr = plan_to_protocol(p, 7);
      for (const auto& s : pr.steps) REQUIRE(s.t >= 0.0);
      REQUIRE(pr.total_time() == doctest::Approx(p.t_total).epsilon(1e-12));
    }
  }

  TEST_CASE("Trotterized protocol converges to the target evolution") {
    const SimulationPlan p = synthesize_plan(k_h0(), k_tms(), 1.0);
    const Mat4 ref = apply(evolve(k_tms(), 1.0), vacuum());
    auto err = [&](int slices) { return (apply(plan_to_protocol(p, slices).symplectic(), vacuum()) - ref).norm(); };
    CHECK(err(200) <= 1e-3);
    double prev = err(8);
    for (int slices : {16, 32, 64, 128, 256, 512}) {
      const double e = err(slices);
      CHECK(e <= prev / 1.8);
      prev = e;
    }
  }

  TEST_CASE("plan_to_protocol rejects zero slices") {
    const SimulationPlan p = synthesize_plan(k_h0(), k_tms(), 1.0);
    CHECK(code_of([&] { plan_to_protocol(p, 0); }) == Errc::InvalidInput);
  }

  TEST_CASE("flip plan realizes the symmetrized Hamiltonian") {
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
      const KMatrix k = random_k(rng);
      const Mat2 expected = 0.5 * (k.mat() + J() * k.mat() * J());
      REQUIRE(max_abs(effective_K(flip_plan(k, 1.0)).mat() - expected) <= 1e-12);
    }
    CHECK(max_abs(effective_K(flip_plan(k_h0(), 1.0)).mat() - 0.5 * k_tms().mat()) <= 1e-12);
  }

  TEST_CASE("identity plan has the native Hamiltonian as effective K") {
    SimulationPlan p;
    p.native = k_h0();
    p.terms.push_back({1.0, {}});
    CHECK(max_abs(effective_K(p).mat() - k_h0().mat()) == 0.0);
  }
}
