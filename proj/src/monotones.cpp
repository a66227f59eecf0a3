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

#include "eprkit/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eprkit/functionals.hpp"
#include "eprkit/strategies.hpp"

namespace eprkit::monotones {
namespace {

// Joint deterministic responses from per-Alice enumerations.
std::vector<std::vector<int>> product_responses(const Scenario& sc) {
  std::vector<std::vector<strategies::DetResponse>> per_alice;
  for (int i = 0; i < sc.n_alices; ++i)
    per_alice.push_back(
        strategies::enumerate_responses(sc.n_inputs[i], sc.n_outputs[i]));
  std::vector<std::vector<int>> joint;
  std::vector<size_t> pick(sc.n_alices, 0);
  while (true) {
    std::vector<int> table(sc.input_count());
    for (int x = 0; x < sc.input_count(); ++x) {
      const auto xs = sc.input_tuple(x);
      std::vector<int> as(sc.n_alices);
      for (int i = 0; i < sc.n_alices; ++i) as[i] = per_alice[i][pick[i]](xs[i]);
      table[x] = sc.output_index(as);
    }
    joint.push_back(std::move(table));
    int pos = sc.n_alices - 1;
    while (pos >= 0 && ++pick[pos] == per_alice[pos].size()) pick[pos--] = 0;
    if (pos < 0) break;
  }
  return joint;
}

// Shared structure of the weight/robustness programs:
//   sign * (sigma_{a|x} - sum_lambda D sigma~_lambda) = slack block >= 0.
MonotoneResult dominance_program(const Assemblage& a, bool weight,
                                 const sdp::SolveSettings& s) {
  const Scenario& sc = a.scenario();
  const Eigen::Index d = sc.bob_dim;
  const auto responses = product_responses(sc);

  sdp::SdpProblem prob;
  std::vector<int> hidden;
  for (size_t l = 0; l < responses.size(); ++l)
    hidden.push_back(prob.add_block("h" + std::to_string(l), d));
  std::vector<int> slacks;
  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o)
      slacks.push_back(prob.add_block(
          "s" + std::to_string(o) + "_" + std::to_string(x), d));

  std::vector<std::shared_ptr<const CMatrix>> basis_pos, basis_neg;
  struct Row { Eigen::Index p, q; bool im; };
  std::vector<Row> rows;
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = p; q < d; ++q) {
      rows.push_back({p, q, false});
      basis_pos.push_back(sdp::entry_re(d, p, q));
      basis_neg.push_back(std::make_shared<const CMatrix>(-*basis_pos.back()));
      if (q > p) {
        rows.push_back({p, q, true});
        basis_pos.push_back(sdp::entry_im(d, p, q));
        basis_neg.push_back(std::make_shared<const CMatrix>(-*basis_pos.back()));
      }
    }

  // weight:     slack + sum Dh = sigma   (slack = sigma - sum Dh >= 0)
  // robustness: slack - sum Dh = -sigma  (slack = sum Dh - sigma >= 0)
  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o) {
      const CMatrix& target = a.at(o, x);
      const int slack_block = slacks[o + sc.output_count() * x];
      for (size_t r = 0; r < rows.size(); ++r) {
        sdp::LinearExpr e;
        e.add(slack_block, basis_pos[r]);
        for (size_t l = 0; l < responses.size(); ++l)
          if (responses[l][x] == o)
            e.add(hidden[l], weight ? basis_pos[r] : basis_neg[r]);
        const cxd v = target(rows[r].p, rows[r].q);
        const double comp = rows[r].im ? v.imag() : v.real();
        e.constant = weight ? -comp : comp;
        prob.add_constraint(std::move(e));
      }
    }

  auto id = std::make_shared<const CMatrix>(CMatrix::Identity(d, d));
  sdp::LinearExpr obj;  // maximize +-(total hidden weight)
  auto minus_id = std::make_shared<const CMatrix>(CMatrix(-CMatrix::Identity(d, d)));
  for (int h : hidden) obj.add(h, weight ? id : minus_id);
  prob.set_objective(std::move(obj));

  const auto sol = sdp::solve(prob, s);
  MonotoneResult out;
  out.status = sol.status;
  out.diagnostic = sol.diagnostic;
  if (sol.status == sdp::Status::Feasible) {
    if (weight) {
      out.value = std::clamp(1.0 - sol.objective_value, 0.0, 1.0);
    } else {
      out.value = std::max(0.0, -sol.objective_value - 1.0);
    }
    for (size_t l = 0; l < responses.size(); ++l)
      out.hidden_states.push_back(sol.blocks[hidden[l]]);
  }
  return out;
}

MonotoneResult yield_program(const Assemblage& a,
                             const functionals::EprFunctional& f,
                             const sdp::SolveSettings& s) {
  const Scenario& ss = a.scenario();
  const Scenario& ts = f.scenario;
  if (ss.n_alices != ts.n_alices)
    throw std::invalid_argument("yield: functional arity does not match input");

  const Eigen::Index d = ss.bob_dim, dp = ts.bob_dim, wd = dp * d;

  // per-Alice comb enumerations toward the functional's type
  std::vector<std::vector<strategies::DetComb>> per_alice;
  size_t count = 1;
  for (int i = 0; i < ss.n_alices; ++i) {
    per_alice.push_back(strategies::enumerate_combs(
        {ss.n_inputs[i], ss.n_outputs[i]}, {ts.n_inputs[i], ts.n_outputs[i]}));
    count *= per_alice.back().size();
  }

  sdp::SdpProblem prob;
  std::vector<int> blocks;
  for (size_t l = 0; l < count; ++l)
    blocks.push_back(prob.add_block("W" + std::to_string(l), wd));

  // side constraints: traceless part of tr_{B'} W vanishes; weights sum to 1
  {
    std::vector<std::shared_ptr<const CMatrix>> coeffs;
    auto partial = [&](Eigen::Index k, Eigen::Index l) {
      return qcore::tensor(qcore::identity(dp), qcore::basis_unit(d, l, k));
    };
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index l = k + 1; l < d; ++l) {
        coeffs.push_back(std::make_shared<const CMatrix>(
            sdp::hermitian_re_part(partial(k, l))));
        coeffs.push_back(std::make_shared<const CMatrix>(
            sdp::hermitian_im_part(partial(k, l))));
      }
    for (Eigen::Index k = 0; k + 1 < d; ++k)
      coeffs.push_back(std::make_shared<const CMatrix>(
          CMatrix(partial(k, k) - partial(k + 1, k + 1))));
    for (int b : blocks)
      for (const auto& c : coeffs) {
        sdp::LinearExpr e;
        e.add(b, c);
        prob.add_constraint(std::move(e));
      }
    auto id = std::make_shared<const CMatrix>(CMatrix::Identity(wd, wd));
    sdp::LinearExpr norm;
    for (int b : blocks) norm.add(b, id);
    norm.constant = -1.0;
    prob.add_constraint(std::move(norm));
  }

  // objective: S[target(W)] with target_{a'|x'} = sum_lambda sum_{a in
  // preimage} d tr_B[W (I (x) sigma_{a|x_g}^T)], contracted against F; the
  // adjoint of each term is d * F_{a',x'} (x) sigma^T.
  sdp::LinearExpr obj;
  std::vector<size_t> tuple_sizes;
  for (const auto& combs : per_alice) tuple_sizes.push_back(combs.size());
  for (size_t l = 0; l < count; ++l) {
    std::vector<int> tup(ss.n_alices);
    size_t rem = l;
    for (size_t i = tuple_sizes.size(); i-- > 0;) {
      tup[i] = static_cast<int>(rem % tuple_sizes[i]);
      rem /= tuple_sizes[i];
    }
    CMatrix coeff = CMatrix::Zero(wd, wd);
    for (int xp = 0; xp < ts.input_count(); ++xp) {
      const auto xps = ts.input_tuple(xp);
      std::vector<int> xs(ss.n_alices);
      for (int i = 0; i < ss.n_alices; ++i)
        xs[i] = per_alice[i][tup[i]].map_input(xps[i]);
      const int x = ss.input_index(xs);
      for (int ain = 0; ain < ss.output_count(); ++ain) {
        const auto as = ss.output_tuple(ain);
        std::vector<int> aps(ss.n_alices);
        for (int i = 0; i < ss.n_alices; ++i)
          aps[i] = per_alice[i][tup[i]].map_output(as[i], xps[i]);
        const CMatrix& fa = f.at(ts.output_index(aps), xp);
        coeff += double(d) * qcore::tensor(fa, qcore::transpose_entrywise(a.at(ain, x)));
      }
    }
    obj.add(blocks[l], std::make_shared<const CMatrix>(sdp::hermitian_re_part(coeff)));
  }
  prob.set_objective(std::move(obj));

  const auto sol = sdp::solve(prob, s);
  MonotoneResult out;
  out.status = sol.status;
  out.diagnostic = sol.diagnostic;
  out.value = sol.objective_value;
  return out;
}

}  // namespace

MonotoneResult epr_weight(const Assemblage& a, const sdp::SolveSettings& s) {
  return dominance_program(a, true, s);
}

MonotoneResult epr_robustness(const Assemblage& a, const sdp::SolveSettings& s) {
  return dominance_program(a, false, s);
}

MonotoneResult yield_monotone(const Assemblage& a, double eta,
                              const sdp::SolveSettings& s) {
  if (a.scenario().n_alices != 1)
    throw std::invalid_argument("yield_monotone: single-Alice assemblage expected");
  return yield_program(a, functionals::epr_functional_bipartite(eta), s);
}

MonotoneResult yield_monotone_multi(const Assemblage& a, double eta,
                                    const sdp::SolveSettings& s) {
  if (a.scenario().n_alices == 1) return yield_monotone(a, eta, s);
  return yield_program(
      a, functionals::epr_functional_multi(a.scenario().n_alices + 1, eta), s);
}

}  // namespace eprkit::monotones
