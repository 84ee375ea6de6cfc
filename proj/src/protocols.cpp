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

#include "cvctl/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <Eigen/Eigenvalues>

#include "cvctl/measures.hpp"
#include "cvctl/rates.hpp"

namespace cvctl {

namespace {

// Below this local squeezing the optimal rotations are treated as tied.
constexpr double kTieThreshold = 1e-3;
constexpr int kTieGrid = 16;

double r_of(const CovarianceMatrix& g) {
  return std::asinh(std::sqrt(std::max(0.0, -block_c(g).determinant())));
}

// dr/dt for the interaction preceded by `pre`. Product states have no
// well-defined Y frame, so a one-sided difference is used there.
double instantaneous_rate(const CovarianceMatrix& g, const KMatrix& k, const LocalRotationPair& pre) {
  const CovarianceMatrix gr = apply(pre.mat(), g);
  if (-block_c(gr).determinant() >= 1e-14) {
    return entanglement_rate_general(gr, k, Mat2::Identity(), Mat2::Identity());
  }
  const double h = 1e-7;
  return (r_of(apply(evolve(k, h), gr)) - r_of(gr)) / h;
}

}  // namespace

NodeReport node_report(const CovarianceMatrix& g, double rate) {
  const EntanglementReport e = entanglement(g);
  const SqueezingReport s = squeezing(g);
  return NodeReport{e.E0, e.negativity, s.S, s.Q, rate};
}

Trajectory run_protocol(const CovarianceMatrix& g0, const Protocol& protocol) {
  validate_cm(g0);
  Trajectory tr;
  CovarianceMatrix g = g0;
  double now = 0.0;
  LocalRotationPair pending;
  for (const auto& step : protocol.steps) {
    if (step.t < 0.0) throw Error(Errc::InvalidInput, "negative step duration");
    pending = then(pending, step.rotation);
    if (step.t == 0.0) continue;
    tr.t.push_back(now);
    tr.cm.push_back(g);
    tr.nodes.push_back(node_report(g, instantaneous_rate(g, protocol.native, pending)));
    g = apply(evolve(protocol.native, step.t) * pending.mat(), g);
    now += step.t;
    pending = LocalRotationPair{};
  }
  g = apply(then(pending, protocol.final).mat(), g);
  tr.t.push_back(now);
  tr.cm.push_back(g);
  tr.nodes.push_back(node_report(g, instantaneous_rate(g, protocol.native, {})));
  return tr;
}

Protocol flip_strategy(const KMatrix& k, double t, int steps) {
  if (steps < 1) throw Error(Errc::InvalidInput, "flip strategy needs at least one step");
  if (!(t >= 0.0)) throw Error(Errc::InvalidInput, "duration must be non-negative");
  constexpr double pi = std::numbers::pi;
  const LocalRotationPair flip{wrap_angle(pi / 2.0), wrap_angle(3.0 * pi / 2.0)};
  ProtocolBuilder builder(k);
  const double dt = t / steps;
  for (int i = 0; i < steps; ++i) builder.window(i % 2 == 0 ? LocalRotationPair{} : flip, dt);
  return builder.finish();
}

std::vector<double> uniform_grid(double t, double dt) {
  if (!(t >= 0.0) || !(dt > 0.0)) throw Error(Errc::InvalidInput, "grid needs t >= 0 and dt > 0");
  std::vector<double> grid{0.0};
  const long n = static_cast<long>(std::floor(t / dt + 1e-9));
  for (long i = 1; i <= n; ++i) grid.push_back(std::min(t, i * dt));
  if (t - grid.back() > 1e-12 * std::max(1.0, t)) grid.push_back(t);
  return grid;
}

Trajectory greedy_rate_strategy(const CovarianceMatrix& g0, const KMatrix& k, double t, double dt) {
  if (dt > 1e-2) throw Error(Errc::InvalidInput, "greedy strategy needs dt <= 1e-2");
  return greedy_rate_strategy(g0, k, uniform_grid(t, dt));
}

Trajectory greedy_rate_strategy(const CovarianceMatrix& g0, const KMatrix& k,
                                const std::vector<double>& grid) {
  validate_cm(g0);
  if (!is_pure(g0)) throw Error(Errc::NotPure, "greedy strategy needs a pure initial state");
  if (grid.empty() || grid.front() != 0.0) throw Error(Errc::InvalidInput, "grid must start at 0");
  Trajectory tr;
  CovarianceMatrix g = g0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const EntanglementRatePlan plan = optimal_entanglement_rate(g, k);
    tr.t.push_back(grid[i]);
    tr.cm.push_back(g);
    tr.nodes.push_back(node_report(g, plan.gamma_rate));
    if (i + 1 == grid.size()) break;
    const double dt = grid[i + 1] - grid[i];
    if (!(dt > 0.0)) throw Error(Errc::InvalidInput, "grid must be strictly increasing");

    if (plan.l >= kTieThreshold) {
      g = apply(evolve(k, dt) * plan.rotations().mat(), g);
      continue;
    }
    const Mat4 quarter = evolve(k, dt / 4.0), half = evolve(k, dt / 2.0);
    auto split = [&](double theta) {
      const Mat4 a = plan.tie_rotations(theta).mat();
      const Mat4 b = plan.tie_rotations(theta + std::numbers::pi / 2.0).mat();
      return Mat4(quarter * a * b.transpose() * half * b * a.transpose() * quarter * a);
    };
    auto cost = [&](double theta) { return local_squeezing_param(apply(split(theta), g)); };
    const double width = std::numbers::pi / kTieGrid;
    double best = 0.0, best_cost = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kTieGrid; ++j) {
      const double c = cost(j * width);
      if (c < best_cost) {
        best_cost = c;
        best = j * width;
      }
    }
    const auto refined = boost::math::tools::brent_find_minima(
        cost, best - width, best + width, std::numeric_limits<double>::digits / 2);
    if (refined.second < best_cost) best = refined.first;
    g = apply(split(best), g);
  }
  return tr;
}

Trajectory fixed_hamiltonian_run(const CovarianceMatrix& g0, const KMatrix& k,
                                 const std::vector<double>& grid) {
  validate_cm(g0);
  Trajectory tr;
  for (double t : grid) {
    const CovarianceMatrix g = apply(evolve(k, t), g0);
    tr.t.push_back(t);
    tr.cm.push_back(g);
    tr.nodes.push_back(node_report(g, instantaneous_rate(g, k, {})));
  }
  return tr;
}

Bounds squeezing_and_negativity_bounds(const KMatrix& k, double t, double r1, double r2) {
  if (!(t >= 0.0)) throw Error(Errc::InvalidInput, "duration must be non-negative");
  if (!(r1 >= r2 && r2 >= 0.0)) throw Error(Errc::InvalidInput, "need r1 >= r2 >= 0");
  const double cs = squeezing_capability(k);
  return Bounds{std::exp(cs * t + r1), std::exp(cs * t + 0.5 * (r1 + r2))};
}

std::pair<double, double> squeezing_exponents(const CovarianceMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(g, Eigen::EigenvaluesOnly);
  const auto& w = es.eigenvalues();
  return {std::max(0.0, -std::log(w(0))), std::max(0.0, -std::log(w(1)))};
}

ExtendedCM extend_with_ancillas(const CovarianceMatrix& g, int m, const Eigen::MatrixXd& o) {
  if (m < 0) throw Error(Errc::InvalidInput, "ancilla count must be non-negative");
  const int n = 4 + 2 * m;
  if (o.rows() != n || o.cols() != n) throw Error(Errc::InvalidInput, "passive map has the wrong size");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; i += 2) {
    j(i, i + 1) = -1.0;
    j(i + 1, i) = 1.0;
  }
  if ((o.transpose() * o - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(Errc::NotPassive, "map is not orthogonal");
  }
  if ((o * j * o.transpose() - j).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(Errc::NotPassive, "map is not symplectic");
  }
  Eigen::MatrixXd full = id;
  full.topLeftCorner<4, 4>() = g;
  ExtendedCM ext;
  ext.ancillas = m;
  ext.g = o.transpose() * full * o;
  ext.g = 0.5 * (ext.g + ext.g.transpose()).eval();
  return ext;
}

CovarianceMatrix gaussian_measurement(const ExtendedCM& ext) {
  if (ext.ancillas == 0) return ext.A();
  const Eigen::MatrixXd b = ext.B();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo >= 1e12) throw Error(Errc::SingularBlock, "measured block is singular");
  const Eigen::MatrixXd c = ext.C();
  Mat4 out = ext.A() - c * b.ldlt().solve(c.transpose());
  return 0.5 * (out + out.transpose());
}

CovarianceMatrix fig3_initial_state(double r1, double r2, double t0) {
  const Vec4 s(std::exp(r1 / 2.0), std::exp(-r1 / 2.0), std::exp(r2 / 2.0), std::exp(-r2 / 2.0));
  return apply(s.asDiagonal().toDenseMatrix(), tms_state(t0 / 2.0));
}

}  // namespace cvctl
