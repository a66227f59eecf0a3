// Copyright 2026 The eprkit developers
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
//
// Internal interior-point backend for the sdp module.  Works on the real
// symmetric standard form
//     minimize <C, X>   s.t.  <A_k, X> = b_k,  X in a product of PSD cones,
// produced by real-embedding the Hermitian problem.  One capability only:
// linear objective, PSD blocks, affine equalities.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eprkit::sdp::ipm {

struct Entry {
  int block;
  int pool;  // index into IpmProblem::pool
};

struct IpmProblem {
  std::vector<int> block_dims;
  // Distinct symmetric coefficient matrices; rows/objective reference them.
  std::vector<Eigen::MatrixXd> pool;
  std::vector<std::vector<Entry>> rows;  // one list of terms per constraint
  std::vector<double> b;
  std::vector<Entry> objective;  // minimize <C, X>
};

enum class SchurMode { Auto, Dense, Arrow };

struct IpmSettings {
  double tol = 1e-8;
  int max_iterations = 200;
  bool verbose = false;
  SchurMode schur_mode = SchurMode::Auto;
  // Auto picks Arrow above this many constraints.
  int dense_constraint_limit = 3000;
};

struct IpmResult {
  bool converged = false;
  std::string message;
  std::vector<Eigen::MatrixXd> X;
  std::vector<double> y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

IpmResult run_ipm(const IpmProblem& p, const IpmSettings& s);

}  // namespace eprkit::sdp::ipm
