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

#include <vector>

#include <Eigen/Dense>

#include "cvctl/core.hpp"
#include "cvctl/simulate.hpp"

namespace cvctl {

struct NodeReport {
  double E0 = 0.0;
  double negativity = 1.0;
  double S = 1.0;
  double Q = 0.0;
  double rate = 0.0;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<CovarianceMatrix> cm;
  std::vector<NodeReport> nodes;

  std::size_t size() const { return t.size(); }
};

NodeReport node_report(const CovarianceMatrix& g, double rate);

Trajectory run_protocol(const CovarianceMatrix& g0, const Protocol& protocol);

Protocol flip_strategy(const KMatrix& k, double t, int steps);

// Time grid helpers: uniform spacing dt with a final partial step.
std::vector<double> uniform_grid(double t, double dt);

// Follow the optimal entanglement rate. Near l = 0 the optimal rotations form
// a one-parameter family; each step then runs the symmetric split
// (theta, dt/4), (theta + pi/2, dt/2), (theta, dt/4) with theta chosen to keep
// the local squeezing parameter minimal.
Trajectory greedy_rate_strategy(const CovarianceMatrix& g0, const KMatrix& k, double t, double dt);
Trajectory greedy_rate_strategy(const CovarianceMatrix& g0, const KMatrix& k,
                                const std::vector<double>& grid);

// Exact evolution under a fixed Hamiltonian, sampled on a grid (rate column is
// the instantaneous entanglement rate without controls).
Trajectory fixed_hamiltonian_run(const CovarianceMatrix& g0, const KMatrix& k,
                                 const std::vector<double>& grid);

struct Bounds {
  double S_bound = 1.0;
  double N_bound = 1.0;
};

Bounds squeezing_and_negativity_bounds(const KMatrix& k, double t, double r1, double r2);

// Squeezing exponents (r1 >= r2 >= 0) from the two smallest CM eigenvalues.
std::pair<double, double> squeezing_exponents(const CovarianceMatrix& g);

struct ExtendedCM {
  Eigen::MatrixXd g;
  int ancillas = 0;

  Mat4 A() const { return g.topLeftCorner<4, 4>(); }
  Eigen::MatrixXd B() const { return g.bottomRightCorner(2 * ancillas, 2 * ancillas); }
  Eigen::MatrixXd C() const { return g.topRightCorner(4, 2 * ancillas); }
};

ExtendedCM extend_with_ancillas(const CovarianceMatrix& g, int m, const Eigen::MatrixXd& o);

CovarianceMatrix gaussian_measurement(const ExtendedCM& ext);

CovarianceMatrix fig3_initial_state(double r1 = 2.0, double r2 = 2.0, double t0 = 1e-3);

}  // namespace cvctl
