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

#include "eprkit/sdp.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ipm.hpp"

namespace eprkit::sdp {

void LinearExpr::add(int block, std::shared_ptr<const CMatrix> coeff) {
  terms.push_back(Term{block, std::move(coeff)});
}

int SdpProblem::add_block(std::string name, Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("add_block: dimension must be >= 1");
  names_.push_back(std::move(name));
  dims_.push_back(dim);
  return static_cast<int>(dims_.size()) - 1;
}

void SdpProblem::add_constraint(LinearExpr e) { constraints_.push_back(std::move(e)); }
void SdpProblem::set_objective(LinearExpr e) { objective_ = std::move(e); }

namespace {

void check_expr(const SdpProblem& p, const LinearExpr& e, const char* what) {
  for (const auto& t : e.terms) {
    if (t.block < 0 || t.block >= p.block_count())
      throw std::invalid_argument(std::string(what) + ": term references undeclared block");
    if (!t.coeff) throw std::invalid_argument(std::string(what) + ": missing coefficient");
    if (t.coeff->rows() != p.block_dim(t.block) || t.coeff->cols() != p.block_dim(t.block))
      throw std::invalid_argument(std::string(what) + ": coefficient dimension mismatch");
    if (!qcore::is_hermitian(*t.coeff, 1e-12))
      throw std::invalid_argument(std::string(what) + ": coefficient is not Hermitian");
  }
}

}  // namespace

void SdpProblem::check() const {
  for (const auto& c : constraints_) check_expr(*this, c, "constraint");
  if (objective_) check_expr(*this, *objective_, "objective");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::shared_ptr<const CMatrix> entry_re(Eigen::Index d, Eigen::Index p, Eigen::Index q) {
  CMatrix m = CMatrix::Zero(d, d);
  m(q, p) += 0.5;
  m(p, q) += 0.5;
  return std::make_shared<const CMatrix>(std::move(m));
}

std::shared_ptr<const CMatrix> entry_im(Eigen::Index d, Eigen::Index p, Eigen::Index q) {
  CMatrix m = CMatrix::Zero(d, d);
  m(q, p) += cxd(0, 0.5);
  m(p, q) += cxd(0, -0.5);
  return std::make_shared<const CMatrix>(std::move(m));
}

CMatrix hermitian_re_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix hermitian_im_part(const CMatrix& a) {
  return (cxd(0, 0.5) * (a.adjoint() - a)).eval();
}

double replay_slack(const SdpProblem& p, const std::vector<CMatrix>& blocks) {
  if (static_cast<int>(blocks.size()) != p.block_count())
    throw std::invalid_argument("replay_slack: block count mismatch");
  double worst = 0.0;
  for (const auto& c : p.constraints()) {
    cxd v = c.constant;
    for (const auto& t : c.terms) v += (*t.coeff * blocks[t.block]).trace();
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

namespace {

// Lowers the Hermitian problem to the real-embedded standard form consumed by
// the backend.  Embedded coefficients carry a factor 1/2 so that inner
// products and objective values match the complex problem one to one.
struct Lowering {
  ipm::IpmProblem ipm;
  std::unordered_map<const CMatrix*, int> pool_ids;

  int pool_of(const CMatrix& m) {
    auto it = pool_ids.find(&m);
    if (it != pool_ids.end()) return it->second;
    const int id = static_cast<int>(ipm.pool.size());
    ipm.pool.push_back(0.5 * qcore::real_embed(m, 1e-9));
    pool_ids.emplace(&m, id);
    return id;
  }

  // Merge duplicate blocks within one expression; the backend requires at
  // most one coefficient per (row, block).
  std::vector<ipm::Entry> lower_terms(const SdpProblem& p, const LinearExpr& e) {
    std::map<int, std::vector<const CMatrix*>> by_block;
    for (const auto& t : e.terms) by_block[t.block].push_back(t.coeff.get());
    std::vector<ipm::Entry> out;
    out.reserve(by_block.size());
    for (auto& [blk, coeffs] : by_block) {
      if (coeffs.size() == 1) {
        out.push_back({blk, pool_of(*coeffs.front())});
      } else {
        CMatrix sum = CMatrix::Zero(p.block_dim(blk), p.block_dim(blk));
        for (const CMatrix* c : coeffs) sum += *c;
        merged.push_back(std::make_shared<const CMatrix>(std::move(sum)));
        out.push_back({blk, pool_of(*merged.back())});
      }
    }
    return out;
  }

  std::vector<std::shared_ptr<const CMatrix>> merged;  // keep alive
};

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolveSettings& s) {
  p.check();
  SdpSolution sol;
  if (p.block_count() == 0) {
    sol.diagnostic = "problem has no blocks";
    return sol;
  }

  Lowering lw;
  for (int j = 0; j < p.block_count(); ++j)
    lw.ipm.block_dims.push_back(static_cast<int>(2 * p.block_dim(j)));
  for (const auto& c : p.constraints()) {
    lw.ipm.rows.push_back(lw.lower_terms(p, c));
    lw.ipm.b.push_back(-c.constant);
  }
  double obj_constant = 0.0;
  if (p.objective()) {
    obj_constant = p.objective()->constant;
    // backend minimizes; flip sign of the maximization objective
    for (const auto& t : p.objective()->terms) {
      lw.merged.push_back(std::make_shared<const CMatrix>(-*t.coeff));
      lw.ipm.objective.push_back({t.block, lw.pool_of(*lw.merged.back())});
    }
  }

  ipm::IpmSettings is;
  is.tol = s.solver_tol;
  is.max_iterations = s.max_iterations;
  is.verbose = s.verbose;
  const auto r = ipm::run_ipm(lw.ipm, is);

  sol.blocks.reserve(p.block_count());
  for (int j = 0; j < p.block_count(); ++j)
    sol.blocks.push_back(qcore::real_unembed(RMatrix(r.X[j])));
  sol.slack = replay_slack(p, sol.blocks);
  sol.dual_values = r.y;
  // minimize <-O, X>: flip back to the maximization view
  sol.objective_value = -r.primal_objective + obj_constant;
  sol.dual_objective = -r.dual_objective + obj_constant;
  sol.primal_residual = r.primal_infeasibility;
  sol.dual_residual = r.dual_infeasibility;
  sol.iterations = r.iterations;
  if (r.converged) {
    sol.status = Status::Feasible;
    sol.diagnostic = "converged";
  } else {
    sol.status = Status::Indeterminate;
    sol.diagnostic = "backend did not converge: " + r.message;
  }
  return sol;
}

SdpSolution decide_feasibility(const SdpProblem& p, const SolveSettings& s) {
  p.check();
  if (p.objective())
    throw std::invalid_argument("decide_feasibility: problem must have no objective");
  if (s.eps_feasible >= s.eps_infeasible)
    throw std::invalid_argument("decide_feasibility: eps_feasible must be < eps_infeasible");

  // minimize t subject to every constraint relaxed to |violation| <= t
  SdpProblem relaxed;
  for (int j = 0; j < p.block_count(); ++j)
    relaxed.add_block(p.block_name(j), p.block_dim(j));
  const int t_block = relaxed.add_block("slack.t", 1);

  auto plus_one = std::make_shared<const CMatrix>(CMatrix::Constant(1, 1, 1.0));
  auto minus_one = std::make_shared<const CMatrix>(CMatrix::Constant(1, 1, -1.0));

  int idx = 0;
  for (const auto& c : p.constraints()) {
    const int surplus = relaxed.add_block("slack.p" + std::to_string(idx), 1);
    const int deficit = relaxed.add_block("slack.n" + std::to_string(idx), 1);
    LinearExpr upper = c;  // v - t + p = 0
    upper.add(t_block, minus_one);
    upper.add(surplus, plus_one);
    relaxed.add_constraint(std::move(upper));
    LinearExpr lower = c;  // v + t - n = 0
    lower.add(t_block, plus_one);
    lower.add(deficit, minus_one);
    relaxed.add_constraint(std::move(lower));
    ++idx;
  }
  LinearExpr objective;  // maximize -t
  objective.add(t_block, minus_one);
  relaxed.set_objective(std::move(objective));

  SdpSolution inner = solve(relaxed, s);

  SdpSolution out;
  out.blocks.assign(inner.blocks.begin(), inner.blocks.begin() + p.block_count());
  out.iterations = inner.iterations;
  out.dual_values = inner.dual_values;
  const double t_star = -inner.objective_value;
  const double t_lower = -inner.dual_objective;  // weak duality bound
  out.objective_value = t_star;
  out.dual_objective = t_lower;
  out.slack = replay_slack(p, out.blocks);

  // The returned blocks certify feasibility directly; the dual multipliers
  // certify infeasibility by weak duality, trusted only when the dual
  // residual is far below the decision margin.
  const bool converged = inner.status == Status::Feasible;
  const bool dual_trusted =
      inner.dual_residual <= std::max(1e-7, 10.0 * s.solver_tol);
  out.primal_residual = inner.primal_residual;
  out.dual_residual = inner.dual_residual;
  if (out.slack <= s.eps_feasible) {
    out.status = Status::Feasible;
    out.diagnostic = "certificate with max violation " + std::to_string(out.slack);
  } else if (dual_trusted && t_lower >= s.eps_infeasible) {
    out.status = Status::Infeasible;
    out.diagnostic = "slack lower bound " + std::to_string(t_lower);
  } else {
    out.status = Status::Indeterminate;
    out.diagnostic = converged
                         ? "optimal slack " + std::to_string(t_star) +
                               " falls in the tri-state gap"
                         : "solver: " + inner.diagnostic;
  }
  return out;
}

nlohmann::json problem_to_json(const SdpProblem& p) {
  nlohmann::json j;
  nlohmann::json blocks = nlohmann::json::array();
  for (int b = 0; b < p.block_count(); ++b)
    blocks.push_back({{"name", p.block_name(b)}, {"dim", p.block_dim(b)}});
  j["blocks"] = std::move(blocks);
  auto expr_json = [](const LinearExpr& e) {
    nlohmann::json je;
    je["constant"] = e.constant;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : e.terms)
      terms.push_back({{"block", t.block}, {"coeff", qcore::matrix_to_json(*t.coeff)}});
    je["terms"] = std::move(terms);
    return je;
  };
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : p.constraints()) cons.push_back(expr_json(c));
  j["constraints"] = std::move(cons);
  if (p.objective()) j["objective"] = expr_json(*p.objective());
  return j;
}

nlohmann::json solution_to_json(const SdpSolution& s) {
  nlohmann::json j;
  j["status"] = to_string(s.status);
  j["objective_value"] = s.objective_value;
  j["slack"] = s.slack;
  j["diagnostic"] = s.diagnostic;
  j["iterations"] = s.iterations;
  j["dual_objective"] = s.dual_objective;
  j["dual_values"] = s.dual_values;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : s.blocks) blocks.push_back(qcore::matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  return j;
}

}  // namespace eprkit::sdp
