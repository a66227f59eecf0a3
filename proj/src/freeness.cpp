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

#include "eprkit/freeness.hpp"

#include <cmath>
#include <stdexcept>

#include "eprkit/strategies.hpp"

namespace eprkit::freeness {
namespace {

// Every classicality model below reduces to a list of deterministic joint
// responses x_index -> a_index; membership is then the SDP feasibility of
//   sigma_{a|x} = sum_{lambda: r_lambda(x) = a} sigma~_lambda,
//   sigma~_lambda >= 0,  sum_lambda tr sigma~_lambda = 1.

// Per-Alice responses combined into joint response tables.
std::vector<std::vector<int>> product_responses(const Scenario& sc) {
  using strategies::enumerate_responses;
  std::vector<std::vector<strategies::DetResponse>> per_alice;
  for (int i = 0; i < sc.n_alices; ++i)
    per_alice.push_back(enumerate_responses(sc.n_inputs[i], sc.n_outputs[i]));

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

// All joint functions (x-tuple) -> (a-tuple); two Alices only in practice,
// the construction itself is arity-agnostic but exponential.
std::vector<std::vector<int>> joint_responses(const Scenario& sc) {
  const int nx = sc.input_count(), na = sc.output_count();
  std::vector<std::vector<int>> out;
  std::vector<int> table(nx, 0);
  while (true) {
    out.push_back(table);
    int pos = nx - 1;
    while (pos >= 0 && table[pos] == na - 1) table[pos--] = 0;
    if (pos < 0) break;
    ++table[pos];
  }
  return out;
}

std::vector<std::vector<int>> signalling_responses(
    const Scenario& sc, strategies::SignalDirection dir) {
  if (sc.n_alices != 2)
    throw std::invalid_argument("time-ordered model needs exactly two Alices");
  const strategies::PartyType p1{sc.n_inputs[0], sc.n_outputs[0]};
  const strategies::PartyType p2{sc.n_inputs[1], sc.n_outputs[1]};
  std::vector<std::vector<int>> out;
  for (const auto& s : strategies::enumerate_signalling(p1, p2, dir)) {
    std::vector<int> table(sc.input_count());
    for (int x = 0; x < sc.input_count(); ++x) {
      const auto xs = sc.input_tuple(x);
      auto [a1, a2] = s.outcomes(xs[0], xs[1]);
      table[x] = sc.output_index({a1, a2});
    }
    out.push_back(std::move(table));
  }
  return out;
}

// Appends one hidden-state block per response together with the matching
// equality rows for `a`; returns the new block ids.
std::vector<int> add_decomposition(sdp::SdpProblem& prob, const Assemblage& a,
                                   const std::vector<std::vector<int>>& responses,
                                   const std::string& prefix) {
  const Scenario& sc = a.scenario();
  const Eigen::Index d = sc.bob_dim;
  std::vector<int> blocks;
  blocks.reserve(responses.size());
  for (size_t l = 0; l < responses.size(); ++l)
    blocks.push_back(prob.add_block(prefix + std::to_string(l), d));

  // cached Hermitian entry readers
  std::vector<std::shared_ptr<const CMatrix>> basis;
  struct Row { Eigen::Index p, q; bool im; };
  std::vector<Row> rows;
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = p; q < d; ++q) {
      rows.push_back({p, q, false});
      basis.push_back(sdp::entry_re(d, p, q));
      if (q > p) {
        rows.push_back({p, q, true});
        basis.push_back(sdp::entry_im(d, p, q));
      }
    }

  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o) {
      const CMatrix& target = a.at(o, x);
      for (size_t r = 0; r < rows.size(); ++r) {
        sdp::LinearExpr e;
        for (size_t l = 0; l < responses.size(); ++l)
          if (responses[l][x] == o) e.add(blocks[l], basis[r]);
        const cxd v = target(rows[r].p, rows[r].q);
        e.constant = -(rows[r].im ? v.imag() : v.real());
        prob.add_constraint(std::move(e));
      }
    }

  // total hidden-state weight is one
  auto id = std::make_shared<const CMatrix>(CMatrix::Identity(d, d));
  sdp::LinearExpr norm;
  for (int b : blocks) norm.add(b, id);
  norm.constant = -1.0;
  prob.add_constraint(std::move(norm));
  return blocks;
}

FreenessDecision decide(const Assemblage& a,
                        const std::vector<std::vector<std::vector<int>>>& models,
                        const sdp::SolveSettings& s) {
  sdp::SdpProblem prob;
  std::vector<std::vector<int>> block_sets;
  for (size_t m = 0; m < models.size(); ++m)
    block_sets.push_back(
        add_decomposition(prob, a, models[m], "lhs" + std::to_string(m) + "."));

  const auto sol = sdp::decide_feasibility(prob, s);

  FreenessDecision out;
  out.status = sol.status;
  out.slack = sol.slack;
  out.slack_bound = sol.dual_objective;
  out.diagnostic = sol.diagnostic;
  if (sol.status == sdp::Status::Feasible) {
    for (size_t m = 0; m < models.size(); ++m) {
      FreenessCertificate cert;
      cert.responses = models[m];
      for (int b : block_sets[m]) cert.hidden_states.push_back(sol.blocks[b]);
      out.certificates.push_back(std::move(cert));
    }
  }
  return out;
}

}  // namespace

FreenessDecision is_free_bipartite(const Assemblage& a, const sdp::SolveSettings& s) {
  if (a.scenario().n_alices != 1)
    throw std::invalid_argument(
        "is_free_bipartite: input has several Alices; use the multipartite variants");
  return decide(a, {product_responses(a.scenario())}, s);
}

FreenessDecision is_losr_free_multi(const Assemblage& a, const sdp::SolveSettings& s) {
  return decide(a, {product_responses(a.scenario())}, s);
}

FreenessDecision is_general_lhs_multi(const Assemblage& a, const sdp::SolveSettings& s) {
  if (a.scenario().n_alices != 2)
    throw std::invalid_argument("is_general_lhs_multi: exactly two Alices supported");
  return decide(a, {joint_responses(a.scenario())}, s);
}

FreenessDecision is_tolhs_multi(const Assemblage& a, const sdp::SolveSettings& s) {
  using strategies::SignalDirection;
  return decide(a,
                {signalling_responses(a.scenario(), SignalDirection::AliceOneToTwo),
                 signalling_responses(a.scenario(), SignalDirection::AliceTwoToOne)},
                s);
}

double replay_certificate(const Assemblage& a, const FreenessCertificate& c) {
  const Scenario& sc = a.scenario();
  if (c.responses.size() != c.hidden_states.size())
    throw std::invalid_argument("replay_certificate: size mismatch");
  double worst = 0.0;
  double total = 0.0;
  for (const auto& h : c.hidden_states) {
    worst = std::max(worst, std::max(0.0, -qcore::min_eigenvalue(h)));
    total += h.trace().real();
  }
  worst = std::max(worst, std::abs(total - 1.0));
  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o) {
      CMatrix rec = CMatrix::Zero(sc.bob_dim, sc.bob_dim);
      for (size_t l = 0; l < c.responses.size(); ++l)
        if (c.responses[l][x] == o) rec += c.hidden_states[l];
      worst = std::max(worst, qcore::max_abs(rec - a.at(o, x)));
    }
  return worst;
}

}  // namespace eprkit::freeness
