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
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cvctl/core.hpp"
#include "cvctl/error.hpp"
#include "cvctl/measures.hpp"
#include "cvctl/protocols.hpp"
#include "cvctl/random.hpp"
#include "cvctl/simulate.hpp"

using namespace cvctl;

namespace {

Mat2 symmetrized(const KMatrix& k) { return 0.5 * (k.mat() + J() * k.mat() * J()); }

double sigma_min(const Mat4& m) { return Eigen::JacobiSVD<Mat4>(m).singularValues()(3); }

Protocol random_protocol(Rng& rng, const KMatrix& k, double t, int steps) {
  ProtocolBuilder b(k);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(steps);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  for (double x : w) {
    b.rotate(random_rotation_pair(rng));
    b.interact(t * x / total);
  }
  b.rotate(random_rotation_pair(rng));
  return b.finish();
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

TEST_SUITE("protocols") {
  TEST_CASE("empty protocol yields a single node") {
    const Mat4 g = squeezed_state(0.2, 0.4);
    const Trajectory tr = run_protocol(g, Protocol{k_h0(), {}, {}});
    REQUIRE(tr.t.size() == 1);
    CHECK((tr.cm.front() - g).norm() == 0.0);
  }

  TEST_CASE("run_protocol records strictly increasing times and ends at the composed transform") {
    Rng rng(41);
    const KMatrix k = random_k(rng);
    const Protocol p = random_protocol(rng, k, 1.2, 12);
    const Trajectory tr = run_protocol(vacuum(), p);
    REQUIRE(tr.t.size() == 13);
    for (std::size_t i = 1; i < tr.t.size(); ++i) CHECK(tr.t[i] > tr.t[i - 1]);
    CHECK(tr.t.back() == doctest::Approx(1.2));
    CHECK((tr.cm.back() - apply(p.symplectic(), vacuum())).norm() <= 1e-12);
  }

  TEST_CASE("flip strategy reaches the two-mode squeezed negativity") {
    const Trajectory tr = run_protocol(vacuum(), flip_strategy(k_h0(), 1.0, 10000));
    CHECK(tr.nodes.back().negativity == doctest::Approx(std::exp(1.0)).epsilon(1e-3));
    CHECK(tr.nodes.back().S == doctest::Approx(std::exp(1.0)).epsilon(1e-3));
  }

  TEST_CASE("a few flips already beat the uncontrolled run") {
    const double bare = run_protocol(vacuum(), Protocol{k_h0(), {{{}, 1.0}}, {}}).nodes.back().negativity;
    for (int steps : {2, 3}) {
      const double flip = run_protocol(vacuum(), flip_strategy(k_h0(), 1.0, steps)).nodes.back().negativity;
      CHECK(flip > bare);
    }
    const double e_flip = run_protocol(vacuum(), flip_strategy(k_h0(), 1.0, 200)).nodes.back().E0;
    const double e_bare = entanglement(apply(evolve(k_h0(), 1.0), vacuum())).E0;
    CHECK(e_bare < e_flip);
  }

  TEST_CASE("flipping a beam splitter cancels it") {
    CHECK(symmetrized(k_bs()).norm() == doctest::Approx(0.0));
    const Trajectory tr = run_protocol(vacuum(), flip_strategy(k_bs(), 1.0, 100));
    CHECK(tr.nodes.back().negativity == doctest::Approx(1.0));
    CHECK(tr.nodes.back().S == doctest::Approx(1.0));
  }

  TEST_CASE("flip strategy converges at first order") {
    Rng rng(42);
    for (int i = 0; i < 5; ++i) {
      const KMatrix k = random_k(rng);
      const Mat4 ref = apply(evolve(KMatrix::from(symmetrized(k)), 1.0), vacuum());
      auto err = [&](int steps) { return (run_protocol(vacuum(), flip_strategy(k, 1.0, steps)).cm.back() - ref).norm(); };
      const double ratio = err(400) / err(800);
      CHECK(ratio >= 1.8);
      CHECK(ratio <= 2.2);
    }
  }

  TEST_CASE("unitary strategies preserve purity") {
    Rng rng(43);
    for (int i = 0; i < 20; ++i) {
      const KMatrix k = random_k(rng);
      const Mat4 g0 = random_pure_state(rng, 1.0);
      for (const Mat4& g : run_protocol(g0, random_protocol(rng, k, 1.0, 50)).cm) {
        REQUIRE(std::abs(g.determinant() - 1.0) <= 1e-8 * std::max(1.0, g.squaredNorm()));
      }
    }
    for (const Mat4& g : greedy_rate_strategy(squeezed_state(0.0, 2.5), k_h0(), 1.0, 1e-3).cm) {
      REQUIRE(is_pure(g));
    }
  }

  TEST_CASE("greedy strategy from vacuum has unit rate") {
    const Trajectory tr = greedy_rate_strategy(vacuum(), k_h0(), 1.0, 1e-3);
    for (const auto& n : tr.nodes) REQUIRE(n.rate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tr.nodes.back().E0 == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("greedy strategy from a locally squeezed state") {
    const Mat4 g0 = squeezed_state(0.0, 2.5);
    const Trajectory tr = greedy_rate_strategy(g0, k_h0(), 1.0, 1e-3);
    CHECK(tr.nodes.front().rate == doctest::Approx(std::exp(1.25)).epsilon(1e-6));
    CHECK(tr.nodes.back().rate < tr.nodes.front().rate);
    const double bare = entanglement(apply(evolve(k_h0(), 1.0), g0)).E0;
    CHECK(tr.nodes.back().E0 > bare);
  }

  TEST_CASE("greedy strategy rejects coarse steps") {
    CHECK(code_of([] { greedy_rate_strategy(vacuum(), k_h0(), 1.0, 0.05); }) == Errc::InvalidInput);
  }

  TEST_CASE("uniform grid ends with a partial step") {
    const std::vector<double> grid = uniform_grid(1.05, 0.1);
    REQUIRE(grid.size() == 12);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(1.05));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  }

  TEST_CASE("fixed Hamiltonian runs sample the exact evolution") {
    const std::vector<double> grid = uniform_grid(1.0, 0.25);
    const Trajectory tr = fixed_hamiltonian_run(vacuum(), k_tms(), grid);
    REQUIRE(tr.cm.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(tr.nodes[i].negativity == doctest::Approx(std::exp(2.0 * grid[i])).epsilon(1e-10));
    }
  }

  TEST_CASE("bound examples") {
    const Bounds v = squeezing_and_negativity_bounds(k_h0(), 1.0, 0.0, 0.0);
    CHECK(v.S_bound == doctest::Approx(std::exp(1.0)));
    CHECK(v.N_bound == doctest::Approx(std::exp(1.0)));
    const Bounds z = squeezing_and_negativity_bounds(k_h0(), 0.0, 0.0, 0.0);
    CHECK(z.S_bound == doctest::Approx(1.0));
    CHECK(z.N_bound == doctest::Approx(1.0));
    const Bounds s = squeezing_and_negativity_bounds(k_h0(), 1.0, 2.5, 2.5);
    CHECK(s.N_bound == doctest::Approx(std::exp(3.5)));
    CHECK(s.S_bound == doctest::Approx(std::exp(3.5)));
    CHECK(code_of([] { squeezing_and_negativity_bounds(k_h0(), 1.0, 0.5, 1.0); }) == Errc::InvalidInput);
  }

  TEST_CASE("no strategy exceeds the bounds") {
    Rng rng(44);
    for (int kk = 0; kk < 10; ++kk) {
      const KMatrix k = random_k(rng);
      for (int i = 0; i < 100; ++i) {
        const Mat4 g0 = i % 2 == 0 ? vacuum() : squeezed_state(0.0, 2.5);
        const auto [r1, r2] = squeezing_exponents(g0);
        const Bounds b = squeezing_and_negativity_bounds(k, 1.0, r1, r2);
        const NodeReport end = run_protocol(g0, random_protocol(rng, k, 1.0, 8)).nodes.back();
        REQUIRE(end.S <= b.S_bound * (1.0 + 1e-9));
        REQUIRE(end.negativity <= b.N_bound * (1.0 + 1e-9));
      }
    }
  }

  TEST_CASE("smallest singular values are submultiplicative") {
    Rng rng(45);
    for (int i = 0; i < 1000; ++i) {
      const Mat4 a = random_symplectic(rng, 1.0), b = random_symplectic(rng, 1.0);
      REQUIRE(sigma_min(a * b) >= sigma_min(a) * sigma_min(b) - 1e-12);
    }
  }

  TEST_CASE("short-time singular values follow the squeezing capability") {
    Rng rng(46);
    for (int i = 0; i < 100; ++i) {
      const KMatrix k = random_k(rng);
      const RestrictedSvd sv = restricted_svd(k);
      const double cs = sv.s1 - sv.s2;
      double prev = 0.0;
      for (double t : {1e-3, 5e-4}) {
        const Eigen::Vector4d s = Eigen::JacobiSVD<Mat4>(evolve(k, t)).singularValues();
        const double dev = std::max(std::abs(s(0) - std::sqrt(1.0 + cs * t)), std::abs(s(3) - std::sqrt(1.0 - cs * t)));
        REQUIRE(dev <= 2.0 * (1.0 + sv.s1 * sv.s1) * t * t);
        if (prev > 1e-14) REQUIRE(dev <= prev / 3.0);
        prev = dev;
      }
    }
  }

  TEST_CASE("ancilla extension examples") {
    const Mat4 g = squeezed_state(0.4, 1.1);
    const ExtendedCM e0 = extend_with_ancillas(g, 0, Eigen::MatrixXd::Identity(4, 4));
    CHECK((e0.g - g).norm() == 0.0);

    const ExtendedCM e1 = extend_with_ancillas(g, 1, Eigen::MatrixXd::Identity(6, 6));
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e1.g).eigenvalues()(0);
    CHECK(lmin == doctest::Approx(std::min(1.0, squeezing(g).lambda_min)));

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(6, 6);
    bad(0, 0) = 2.0;
    CHECK(code_of([&] { extend_with_ancillas(g, 1, bad); }) == Errc::NotPassive);
  }

  TEST_CASE("passive extensions keep the squeezing") {
    Rng rng(47);
    std::uniform_int_distribution<int> mdist(1, 3);
    for (int i = 0; i < 1000; ++i) {
      const Mat4 g = random_pure_state(rng, 1.0);
      const int m = mdist(rng);
      const ExtendedCM e = extend_with_ancillas(g, m, random_passive(rng, 2 + m));
      const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e.g, Eigen::EigenvaluesOnly).eigenvalues()(0);
      REQUIRE(1.0 / lmin == doctest::Approx(squeezing(g).S).epsilon(1e-10));
    }
  }

  TEST_CASE("measurement examples") {
    const Mat4 g = squeezed_state(0.3, 0.6);
    const ExtendedCM prod = extend_with_ancillas(g, 2, Eigen::MatrixXd::Identity(8, 8));
    CHECK((gaussian_measurement(prod) - g).norm() <= 1e-14);
    const ExtendedCM vac = extend_with_ancillas(vacuum(), 1, Eigen::MatrixXd::Identity(6, 6));
    CHECK((gaussian_measurement(vac) - vacuum()).norm() <= 1e-14);

    ExtendedCM singular = vac;
    singular.g.bottomRightCorner(2, 2) = Eigen::Matrix2d::Zero();
    singular.g(4, 4) = 1e-14;
    CHECK(code_of([&] { gaussian_measurement(singular); }) == Errc::SingularBlock);
  }

  TEST_CASE("measurements never increase squeezing") {
    Rng rng(48);
    std::uniform_int_distribution<int> mdist(1, 3);
    for (int i = 0; i < 1000; ++i) {
      const Mat4 g = random_pure_state(rng, 1.0);
      const int m = mdist(rng);
      const ExtendedCM e = extend_with_ancillas(g, m, random_passive(rng, 2 + m));
      const double s_ext = 1.0 / Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e.g, Eigen::EigenvaluesOnly).eigenvalues()(0);
      const Mat4 out = gaussian_measurement(e);
      REQUIRE((out - out.transpose()).norm() <= 1e-12 * out.norm());
      REQUIRE(squeezing(out).S <= s_ext + 1e-10);
    }
  }

  TEST_CASE("Fig. 3 initial state construction") {
    const Mat4 g = fig3_initial_state(2.0, 2.0, 1e-3);
    const Mat4 s = Vec4(std::exp(1.0), std::exp(-1.0), std::exp(1.0), std::exp(-1.0)).asDiagonal();
    CHECK((g - apply(s, tms_state(5e-4))).norm() <= 1e-12);
    CHECK(is_pure(g));
  }
}
