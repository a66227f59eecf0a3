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

#include "eprkit/conversion.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "eprkit/freeness.hpp"
#include "eprkit/strategies.hpp"

namespace eprkit::conversion {
namespace {

using strategies::DetComb;

// Per-Alice comb enumerations plus the joint index over their product,
// Alice 1 most significant.
struct CombProduct {
  std::vector<std::vector<DetComb>> per_alice;
  size_t count = 1;

  std::vector<int> tuple(size_t lambda) const {
    std::vector<int> t(per_alice.size());
    for (size_t i = per_alice.size(); i-- > 0;) {
      t[i] = static_cast<int>(lambda % per_alice[i].size());
      lambda /= per_alice[i].size();
    }
    return t;
  }
};

CombProduct comb_product(const Scenario& src, const Scenario& dst) {
  CombProduct cp;
  for (int i = 0; i < src.n_alices; ++i) {
    cp.per_alice.push_back(strategies::enumerate_combs(
        {src.n_inputs[i], src.n_outputs[i]}, {dst.n_inputs[i], dst.n_outputs[i]}));
    cp.count *= cp.per_alice.back().size();
  }
  return cp;
}

// For one comb tuple and destination input tuple: the source input index and
// the source-outcome preimage of every destination outcome.
struct CombAction {
  int src_input = 0;
  std::vector<uint64_t> preimage;  // [a'_index] -> bitmask over a_index
};

CombAction comb_action(const Scenario& src, const Scenario& dst,
                       const CombProduct& cp, const std::vector<int>& tuple,
                       int dst_input_index) {
  const auto xps = dst.input_tuple(dst_input_index);
  CombAction act;
  std::vector<int> xs(src.n_alices);
  for (int i = 0; i < src.n_alices; ++i)
    xs[i] = cp.per_alice[i][tuple[i]].map_input(xps[i]);
  act.src_input = src.input_index(xs);
  act.preimage.assign(dst.output_count(), 0);
  for (int a = 0; a < src.output_count(); ++a) {
    const auto as = src.output_tuple(a);
    std::vector<int> aps(src.n_alices);
    for (int i = 0; i < src.n_alices; ++i)
      aps[i] = cp.per_alice[i][tuple[i]].map_output(as[i], xps[i]);
    act.preimage[dst.output_index(aps)] |= uint64_t(1) << a;
  }
  return act;
}

sdp::SdpProblem build(const Assemblage& src, const Assemblage& dst) {
  const Scenario& ss = src.scenario();
  const Scenario& ds = dst.scenario();
  if (ss.n_alices != ds.n_alices)
    throw std::invalid_argument("conversion: source and destination arities differ");
  if (ss.output_count() > 64)
    throw std::invalid_argument("conversion: more than 64 joint outcomes unsupported");
  if (!validate(src).ok()) throw std::invalid_argument("conversion: invalid source");
  if (!validate(dst).ok()) throw std::invalid_argument("conversion: invalid destination");

  const Eigen::Index d = ss.bob_dim, dp = ds.bob_dim, wd = dp * d;
  const CombProduct cp = comb_product(ss, ds);

  sdp::SdpProblem prob;
  std::vector<int> blocks;
  blocks.reserve(cp.count);
  for (size_t l = 0; l < cp.count; ++l)
    blocks.push_back(prob.add_block("W" + std::to_string(l), wd));

  // tr_{B'} W proportional to I_B/d, linearized as the vanishing of the
  // traceless part of tr_{B'} W; the factor is then tr(W)/d automatically.
  // Coefficients are shared across every block.
  {
    std::vector<std::shared_ptr<const CMatrix>> coeffs;
    auto partial = [&](Eigen::Index k, Eigen::Index l) {
      // tr(T W) = [tr_{B'} W]_{k,l}
      CMatrix t = qcore::tensor(qcore::identity(dp), qcore::basis_unit(d, l, k));
      return t;
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
  }

  // sum of proportionality factors is one: sum_lambda tr(W_lambda) = 1
  {
    auto id = std::make_shared<const CMatrix>(CMatrix::Identity(wd, wd));
    sdp::LinearExpr e;
    for (int b : blocks) e.add(b, id);
    e.constant = -1.0;
    prob.add_constraint(std::move(e));
  }

  // target equality rows; coefficient matrices cached by the summed source
  // preimage so that identical matrices are shared across comb tuples
  std::map<std::tuple<int, uint64_t, Eigen::Index, Eigen::Index, int>,
           std::shared_ptr<const CMatrix>>
      cache;
  auto summed_coeff = [&](int x, uint64_t mask, Eigen::Index p, Eigen::Index q,
                          int part) {
    const auto key = std::make_tuple(x, mask, p, q, part);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // adjoint of entry (p,q) of d tr_B[W (I (x) sigma^T)] summed over the
    // preimage: d * sum_a |q><p| (x) sigma_{a|x}^T
    CMatrix raw = CMatrix::Zero(wd, wd);
    for (int a = 0; a < src.scenario().output_count(); ++a)
      if (mask & (uint64_t(1) << a))
        raw += qcore::tensor(qcore::basis_unit(dp, q, p),
                             qcore::transpose_entrywise(src.at(a, x)));
    raw *= double(d);
    auto m = std::make_shared<const CMatrix>(
        part == 0 ? sdp::hermitian_re_part(raw) : sdp::hermitian_im_part(raw));
    cache.emplace(key, m);
    return m;
  };

  for (int xp = 0; xp < ds.input_count(); ++xp) {
    std::vector<CombAction> actions(cp.count);
    for (size_t l = 0; l < cp.count; ++l)
      actions[l] = comb_action(ss, ds, cp, cp.tuple(l), xp);
    for (int ap = 0; ap < ds.output_count(); ++ap) {
      const CMatrix& target = dst.at(ap, xp);
      for (Eigen::Index p = 0; p < dp; ++p)
        for (Eigen::Index q = p; q < dp; ++q)
          for (int part = 0; part < (q > p ? 2 : 1); ++part) {
            sdp::LinearExpr e;
            for (size_t l = 0; l < cp.count; ++l) {
              const uint64_t mask = actions[l].preimage[ap];
              if (!mask) continue;
              e.add(blocks[l], summed_coeff(actions[l].src_input, mask, p, q, part));
            }
            const cxd v = target(p, q);
            e.constant = -(part == 0 ? v.real() : v.imag());
            prob.add_constraint(std::move(e));
          }
    }
  }
  return prob;
}

ConversionDecision decide(const Assemblage& src, const Assemblage& dst,
                          const sdp::SolveSettings& s) {
  const auto prob = build(src, dst);
  const auto sol = sdp::decide_feasibility(prob, s);

  ConversionDecision out;
  out.status = sol.status;
  out.slack_bound = sol.dual_objective;
  out.diagnostic = sol.diagnostic;
  out.slack = sol.slack;
  if (sol.status == sdp::Status::Feasible) {
    const CombProduct cp = comb_product(src.scenario(), dst.scenario());
    ConversionCertificate cert;
    cert.choi_blocks = sol.blocks;  // one block per comb tuple, same order
    cert.comb_indices.reserve(cp.count);
    for (size_t l = 0; l < cp.count; ++l) {
      const auto t = cp.tuple(l);
      std::ostringstream label;
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) label << '|';
        label << cp.per_alice[i][t[i]].encode();
      }
      cert.comb_indices.push_back(t);
      cert.comb_labels.push_back(label.str());
    }
    cert.slack = replay_conversion(src, dst, cert);
    out.slack = cert.slack;
    out.certificate = std::move(cert);
  }
  return out;
}

}  // namespace

sdp::SdpProblem build_conversion_sdp(const Assemblage& src, const Assemblage& dst) {
  if (src.scenario().n_alices != 1 || dst.scenario().n_alices != 1)
    throw std::invalid_argument(
        "build_conversion_sdp: single-Alice assemblages expected; use the multi variant");
  return build(src, dst);
}

sdp::SdpProblem build_conversion_sdp_multi(const Assemblage& src, const Assemblage& dst) {
  return build(src, dst);
}

ConversionDecision decide_conversion(const Assemblage& src, const Assemblage& dst,
                                     const sdp::SolveSettings& s) {
  if (src.scenario().n_alices != 1 || dst.scenario().n_alices != 1)
    throw std::invalid_argument(
        "decide_conversion: single-Alice assemblages expected; use the multi variant");
  return decide(src, dst, s);
}

ConversionDecision decide_conversion_multi(const Assemblage& src,
                                           const Assemblage& dst,
                                           const sdp::SolveSettings& s) {
  if (src.scenario().n_alices != dst.scenario().n_alices)
    throw std::invalid_argument("decide_conversion_multi: arity mismatch");
  return decide(src, dst, s);
}

double replay_conversion(const Assemblage& src, const Assemblage& dst,
                         const ConversionCertificate& cert) {
  const Scenario& ss = src.scenario();
  const Scenario& ds = dst.scenario();
  const Eigen::Index d = ss.bob_dim, dp = ds.bob_dim;
  const CombProduct cp = comb_product(ss, ds);
  if (cert.choi_blocks.size() != cp.count)
    throw std::invalid_argument("replay_conversion: certificate size mismatch");

  double worst = 0.0;
  double total_weight = 0.0;
  for (const auto& w : cert.choi_blocks) {
    worst = std::max(worst, std::max(0.0, -qcore::min_eigenvalue(w)));
    const CMatrix marginal = qcore::partial_trace(w, {dp, d}, {1});
    const double weight = w.trace().real();
    worst = std::max(worst,
                     qcore::max_abs(marginal - (weight / double(d)) *
                                                   CMatrix::Identity(d, d)));
    total_weight += weight;
  }
  worst = std::max(worst, std::abs(total_weight - 1.0));

  for (int xp = 0; xp < ds.input_count(); ++xp) {
    std::vector<CMatrix> rec(ds.output_count(), CMatrix::Zero(dp, dp));
    for (size_t l = 0; l < cp.count; ++l) {
      const CombAction act = comb_action(ss, ds, cp, cert.comb_indices[l], xp);
      for (int ap = 0; ap < ds.output_count(); ++ap) {
        const uint64_t mask = act.preimage[ap];
        if (!mask) continue;
        CMatrix sig = CMatrix::Zero(d, d);
        for (int a = 0; a < ss.output_count(); ++a)
          if (mask & (uint64_t(1) << a))
            sig += src.at(a, act.src_input);
        const CMatrix contracted = cert.choi_blocks[l] *
            qcore::tensor(qcore::identity(dp), qcore::transpose_entrywise(sig));
        rec[ap] += double(d) * qcore::partial_trace(contracted, {dp, d}, {0});
      }
    }
    for (int ap = 0; ap < ds.output_count(); ++ap)
      worst = std::max(worst, qcore::max_abs(rec[ap] - dst.at(ap, xp)));
  }
  return worst;
}

bool PreorderGraph::has_edge(int src, int dst) const {
  for (const auto& e : edges)
    if (e.src == src && e.dst == dst) return true;
  return false;
}

std::string PreorderGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph preorder {\n";
  for (size_t i = 0; i < names.size(); ++i) {
    os << "  \"" << names[i] << "\"";
    if (i < free_node.size() && free_node[i])
      os << " [style=filled, fillcolor=gray80]";
    os << ";\n";
  }
  for (const auto& e : edges)
    os << "  \"" << names[e.src] << "\" -> \"" << names[e.dst] << "\";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json PreorderGraph::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < names.size(); ++i)
    j["nodes"].push_back({{"name", names[i]},
                          {"free", i < free_node.size() && free_node[i]}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges)
    j["edges"].push_back(
        {{"src", names[e.src]}, {"dst", names[e.dst]}, {"slack", e.slack}});
  j["indeterminate"] = nlohmann::json::array();
  for (const auto& [s, t] : indeterminate)
    j["indeterminate"].push_back({{"src", names[s]}, {"dst", names[t]}});
  return j;
}

PreorderGraph preorder_graph(
    const std::vector<std::pair<std::string, Assemblage>>& family,
    const PreorderSettings& settings) {
  PreorderGraph g;
  if (family.empty()) return g;
  const int n = static_cast<int>(family.size());
  const int arity = family.front().second.scenario().n_alices;
  for (const auto& [name, a] : family) {
    if (a.scenario().n_alices != arity)
      throw std::invalid_argument("preorder_graph: mixed arities in family");
    g.names.push_back(name);
  }

  g.free_node.assign(n, false);
  if (settings.mark_free) {
    for (int i = 0; i < n; ++i) {
      const auto f = arity == 1 ? freeness::is_free_bipartite(family[i].second, settings.sdp)
                                : freeness::is_losr_free_multi(family[i].second, settings.sdp);
      g.free_node[i] = f.is_free();
    }
  }

  struct PairResult {
    sdp::Status status = sdp::Status::Indeterminate;
    double slack = 0.0;
    bool implied = false;
  };
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<PairResult> results(pairs.size());

  auto solve_pair = [&](size_t idx) {
    const auto& [i, j] = pairs[idx];
    const auto dec = decide(family[i].second, family[j].second, settings.sdp);
    results[idx].status = dec.status;
    results[idx].slack = dec.slack;
  };

  if (settings.fast) {
    // sequential, reusing the transitive closure found so far
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
      const auto& [i, j] = pairs[idx];
      bool implied = false;
      for (int mid = 0; mid < n && !implied; ++mid)
        implied = reach[i][mid] && reach[mid][j];
      if (implied) {
        results[idx] = {sdp::Status::Feasible, -1.0, true};
        reach[i][j] = true;
        continue;
      }
      solve_pair(idx);
      if (results[idx].status == sdp::Status::Feasible) {
        reach[i][j] = true;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if ((a == i || reach[a][i]) && (b == j || reach[j][b]))
              reach[a][b] = true;
      }
    }
  } else {
    int workers = settings.workers > 0
                      ? settings.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(pairs.size())));
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t idx = next.fetch_add(1); idx < pairs.size(); idx = next.fetch_add(1))
        solve_pair(idx);
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
  }

  for (size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& [i, j] = pairs[idx];
    switch (results[idx].status) {
      case sdp::Status::Feasible:
        g.edges.push_back({i, j, results[idx].implied ? -1.0 : results[idx].slack});
        break;
      case sdp::Status::Infeasible:
        break;
      case sdp::Status::Indeterminate:
        g.indeterminate.emplace_back(i, j);
        break;
    }
  }
  return g;
}

}  // namespace eprkit::conversion
