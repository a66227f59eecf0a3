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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eprkit/qcore.hpp"

namespace eprkit::sdp {

// One scalar-valued affine expression over the problem's PSD blocks:
//   sum_j tr(coeff_j X_{block_j}) + constant.
// Coefficient matrices must be Hermitian, so the value is real on Hermitian
// blocks.  Coefficients are shared pointers: reusing one matrix across many
// terms keeps large structured problems small, and the backend dedups
// embedded coefficients by pointer identity.
struct Term {
  int block = 0;
  std::shared_ptr<const CMatrix> coeff;
};

struct LinearExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  void add(int block, std::shared_ptr<const CMatrix> coeff);
};

// A semidefinite program over complex Hermitian PSD blocks with scalar affine
// equality constraints (each LinearExpr == 0) and an optional linear
// objective to MAXIMIZE.
class SdpProblem {
 public:
  int add_block(std::string name, Eigen::Index dim);
  void add_constraint(LinearExpr e);
  void set_objective(LinearExpr e);

  int block_count() const { return static_cast<int>(dims_.size()); }
  Eigen::Index block_dim(int b) const { return dims_[b]; }
  const std::string& block_name(int b) const { return names_[b]; }
  const std::vector<LinearExpr>& constraints() const { return constraints_; }
  const std::optional<LinearExpr>& objective() const { return objective_; }

  // Throws if a constraint references an undeclared block, a coefficient has
  // the wrong dimensions, or a coefficient is not Hermitian.
  void check() const;

 private:
  std::vector<std::string> names_;
  std::vector<Eigen::Index> dims_;
  std::vector<LinearExpr> constraints_;
  std::optional<LinearExpr> objective_;
};

enum class Status { Feasible, Infeasible, Indeterminate };

std::string to_string(Status s);

struct SdpSolution {
  Status status = Status::Indeterminate;
  std::vector<CMatrix> blocks;   // hermitized, one per problem block
  double objective_value = 0.0;  // of the problem's objective, if any
  double slack = 0.0;            // max |constraint violation| of `blocks`
  std::string diagnostic;

  // Backend extras, for certificate audits: multipliers per constraint of the
  // problem that was actually handed to the backend, and the corresponding
  // dual objective (a bound on the optimum by weak duality whenever
  // dual_residual is small).
  std::vector<double> dual_values;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

struct SolveSettings {
  double solver_tol = 1e-8;   // relative primal/dual/gap convergence target
  int max_iterations = 200;
  double eps_feasible = 1e-6;    // decide_feasibility: feasible when t* below
  double eps_infeasible = 1e-4;  // infeasible when t* provably above
  bool verbose = false;
};

// Solves the problem as given.  Hermitian blocks are real-embedded
// (qcore::real_embed) before the interior-point backend runs; returned blocks
// are un-embedded and hermitized.  Status mapping: Feasible means the backend
// converged to an optimal point within tolerances (for problems with an
// objective this is optimality, not mere feasibility); Indeterminate means it
// did not and carries a diagnostic.  solve() never reports Infeasible on its
// own -- proving emptiness is decide_feasibility's job.
SdpSolution solve(const SdpProblem& p, const SolveSettings& s = {});

// Tri-state feasibility of an objective-free problem via slack minimization:
// minimize t subject to every constraint relaxed to |violation| <= t.
// Feasible when the replayed violation of the recovered blocks is at most
// eps_feasible; Infeasible when the dual bound proves t* >= eps_infeasible;
// Indeterminate otherwise.  The returned solution's objective_value is t*,
// and slack is the replayed violation.
SdpSolution decide_feasibility(const SdpProblem& p, const SolveSettings& s = {});

// Max |violation| over the problem's constraints at the given block values.
double replay_slack(const SdpProblem& p, const std::vector<CMatrix>& blocks);

// Hermitian coefficient matrices that read off matrix entries:
//   tr(entry_re(d,p,q) X) = Re X_pq,  tr(entry_im(d,p,q) X) = Im X_pq
// for Hermitian X.  Use them to expand matrix equalities into scalar rows.
std::shared_ptr<const CMatrix> entry_re(Eigen::Index d, Eigen::Index p, Eigen::Index q);
std::shared_ptr<const CMatrix> entry_im(Eigen::Index d, Eigen::Index p, Eigen::Index q);

// Hermitian A_re, A_im with tr(A_re W) = Re tr(A W), tr(A_im W) = Im tr(A W)
// for Hermitian W and arbitrary square A.
CMatrix hermitian_re_part(const CMatrix& a);
CMatrix hermitian_im_part(const CMatrix& a);

nlohmann::json problem_to_json(const SdpProblem& p);
nlohmann::json solution_to_json(const SdpSolution& s);

}  // namespace eprkit::sdp
