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
// End-to-end acceptance run.  Each numbered criterion prints one PASS/FAIL
// line; the process exits nonzero if any of them fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eprkit/conversion.hpp"
#include "eprkit/freeness.hpp"
#include "eprkit/functionals.hpp"
#include "eprkit/locc.hpp"
#include "eprkit/monotones.hpp"
#include "eprkit/strategies.hpp"
#include "test_support.hpp"

using namespace eprkit;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void report(int criterion, const std::string& what, bool ok) {
  std::printf("criterion %d %s: %s\n", criterion, ok ? "PASS" : "FAIL", what.c_str());
  for (const auto& n : g_notes) std::printf("    %s\n", n.c_str());
  g_notes.clear();
  if (!ok) ++g_failures;
  std::fflush(stdout);
}

struct GridPoint {
  int ti, pi;  // indices into thetas / ps
  std::string name;
};

constexpr double kThetas[3] = {M_PI / 12, M_PI / 6, M_PI / 4};
constexpr double kPs[3] = {1.0, 0.9, 0.8};
const char* kThetaNames[3] = {"pi/12", "pi/6", "pi/4"};

int node_id(int ti, int pi) { return ti * 3 + pi; }

std::string node_name(int ti, int pi) {
  std::ostringstream os;
  os << "S(" << kThetaNames[ti] << "," << kPs[pi] << ")";
  return os.str();
}

}  // namespace

int main() {
  sdp::SolveSettings settings;  // defaults: eps 1e-6 / 1e-4, tol 1e-8

  // ---- shared sweep over the nine-member grid -----------------------------
  std::vector<Assemblage> nodes;
  for (int ti = 0; ti < 3; ++ti)
    for (int pi = 0; pi < 3; ++pi) nodes.push_back(family_S(kThetas[ti], kPs[pi]));

  std::vector<std::vector<sdp::Status>> status(9, std::vector<sdp::Status>(9));
  std::vector<std::vector<double>> slack(9, std::vector<double>(9, 0.0));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      if (i == j) continue;
      const auto dec = conversion::decide_conversion(nodes[i], nodes[j], settings);
      status[i][j] = dec.status;
      slack[i][j] = dec.feasible() ? dec.slack : dec.slack_bound;
    }

  // ---- criterion 1: grid digraph -------------------------------------------
  {
    bool ok = true;
    // drawn arrows: (theta_index, p_index) pairs, p in {1.0, 0.9, 0.8}
    const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> arrows{
        {{2, 0}, {0, 1}},  // (pi/4,1)   -> (pi/12,0.9)
        {{2, 0}, {1, 2}},  // (pi/4,1)   -> (pi/6,0.8)
        {{1, 0}, {2, 1}},  // (pi/6,1)   -> (pi/4,0.9)
        {{0, 0}, {1, 2}},  // (pi/12,1)  -> (pi/6,0.8)
        {{2, 1}, {1, 2}},  // (pi/4,0.9) -> (pi/6,0.8)
        {{1, 1}, {0, 1}},  // (pi/6,0.9) -> (pi/12,0.9)
        {{1, 1}, {2, 2}},  // (pi/6,0.9) -> (pi/4,0.8)
        {{1, 2}, {0, 2}},  // (pi/6,0.8) -> (pi/12,0.8)
        {{2, 2}, {0, 2}},  // (pi/4,0.8) -> (pi/12,0.8)
    };
    std::vector<std::pair<int, int>> edge_list;
    for (const auto& [s, t] : arrows)
      edge_list.emplace_back(node_id(s.first, s.second), node_id(t.first, t.second));
    for (int ti = 0; ti < 3; ++ti) {  // same-theta noise-increasing arrows
      edge_list.emplace_back(node_id(ti, 0), node_id(ti, 1));
      edge_list.emplace_back(node_id(ti, 1), node_id(ti, 2));
    }
    for (const auto& [i, j] : edge_list) {
      const bool fine = status[i][j] == sdp::Status::Feasible && slack[i][j] <= 1e-6;
      if (!fine) {
        std::ostringstream os;
        os << "drawn arrow " << i << "->" << j << " not reproduced (slack "
           << slack[i][j] << ")";
        note(os.str());
        ok = false;
      }
    }
    // no conversions among the p = 1 members
    for (int ti = 0; ti < 3; ++ti)
      for (int tj = 0; tj < 3; ++tj) {
        if (ti == tj) continue;
        if (status[node_id(ti, 0)][node_id(tj, 0)] != sdp::Status::Infeasible) {
          note("unexpected edge among p=1 nodes");
          ok = false;
        }
      }
    // the named blocked pair
    if (status[node_id(0, 0)][node_id(2, 1)] != sdp::Status::Infeasible) {
      note("S(pi/12,1) -> S(pi/4,0.9) should be blocked");
      ok = false;
    }
    // all arrows one-way; no indeterminates anywhere
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j) {
        if (status[i][j] == sdp::Status::Feasible &&
            status[j][i] == sdp::Status::Feasible) {
          note("two-way conversion found");
          ok = false;
        }
      }
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (i != j && status[i][j] == sdp::Status::Indeterminate) {
          note("indeterminate pair in the sweep");
          ok = false;
        }
    report(1, "nine-member conversion digraph has the expected arrow set", ok);
  }

  // ---- criterion 2: freeness corpus ----------------------------------------
  {
    bool ok = true;
    const auto grey = freeness::is_free_bipartite(family_S(M_PI / 12, 0.8), settings);
    if (!grey.is_free()) {
      note("S(pi/12,0.8) should be classically explainable");
      ok = false;
    }
    for (double th : kThetas) {
      const auto dec = freeness::is_free_bipartite(family_S(th, 1.0), settings);
      if (dec.status != sdp::Status::Infeasible) {
        note("S(theta,1) should be nonfree");
        ok = false;
      }
      const auto noise = freeness::is_free_bipartite(family_S(th, 0.0), settings);
      if (!noise.is_free()) {
        note("S(theta,0) should be free");
        ok = false;
      }
      if (dec.status == sdp::Status::Indeterminate ||
          noise.status == sdp::Status::Indeterminate)
        ok = false;
    }
    report(2, "freeness corpus decided with zero indeterminates", ok);
  }

  // ---- criterion 3: functional maxima ---------------------------------------
  {
    bool ok = true;
    double worst = 0.0, worst_multi = 0.0, min_gap = 1e9;
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(i * (M_PI / 4) / 20.0);
    for (double eta : grid) {
      const auto f = functionals::epr_functional_bipartite(eta);
      worst = std::max(worst,
                       std::abs(functionals::evaluate(f, family_S(eta, 1.0)) -
                                functionals::quantum_max_bipartite(eta)));
      for (double th : grid) {
        if (std::abs(th - eta) < 1e-12) continue;
        min_gap = std::min(min_gap,
                           functionals::quantum_max_bipartite(eta) -
                               functionals::evaluate(f, family_S(th, 1.0)));
      }
      const auto fm = functionals::epr_functional_multi(3, eta);
      worst_multi = std::max(
          worst_multi, std::abs(functionals::evaluate(fm, family_GHZ(3, eta)) -
                                4.0 * std::sqrt(2.0)));
    }
    {
      std::ostringstream os;
      os << "max |S_eta - formula| = " << worst << ", multi " << worst_multi
         << ", min off-member gap = " << min_gap;
      note(os.str());
    }
    ok = worst <= 1e-9 && worst_multi <= 1e-9 && min_gap >= 1e-6;
    report(3, "functional maxima on the 20-point grid", ok);
  }

  // ---- criterion 4: pairwise unordered families -----------------------------
  {
    bool ok = true;
    const std::vector<double> grid{M_PI / 16, M_PI / 8, 3 * M_PI / 16, M_PI / 4};
    for (size_t i = 0; i < grid.size(); ++i)
      for (size_t j = 0; j < grid.size(); ++j) {
        if (i == j) continue;
        const auto dec = conversion::decide_conversion(
            family_S(grid[i], 1.0), family_S(grid[j], 1.0), settings);
        if (dec.status != sdp::Status::Infeasible) {
          std::ostringstream os;
          os << "S(theta=" << grid[i] << ",1) -> S(theta=" << grid[j]
             << ",1) not refuted (" << sdp::to_string(dec.status) << ")";
          note(os.str());
          ok = false;
        }
      }
    const std::vector<double> mgrid{M_PI / 8, 3 * M_PI / 16, M_PI / 4};
    for (size_t i = 0; i < mgrid.size(); ++i)
      for (size_t j = 0; j < mgrid.size(); ++j) {
        if (i == j) continue;
        const auto dec = conversion::decide_conversion_multi(
            family_GHZ(3, mgrid[i]), family_GHZ(3, mgrid[j]), settings);
        if (dec.status != sdp::Status::Infeasible) {
          std::ostringstream os;
          os << "GHZ(3," << mgrid[i] << ") -> GHZ(3," << mgrid[j]
             << ") not refuted (" << sdp::to_string(dec.status) << ")";
          note(os.str());
          ok = false;
        }
      }
    report(4, "tilted families are pairwise unordered", ok);
  }

  // ---- criterion 5: monotone consistency ------------------------------------
  {
    bool ok = true;
    std::vector<double> weight(9), robustness(9), yield(9);
    for (int i = 0; i < 9; ++i) {
      const auto w = monotones::epr_weight(nodes[i], settings);
      const auto r = monotones::epr_robustness(nodes[i], settings);
      const auto y = monotones::yield_monotone(nodes[i], M_PI / 4, settings);
      if (!w.ok() || !r.ok() || !y.ok()) {
        note("monotone evaluation failed");
        ok = false;
        continue;
      }
      weight[i] = w.value;
      robustness[i] = r.value;
      yield[i] = y.value;
    }
    for (int i = 0; i < 9 && ok; ++i)
      for (int j = 0; j < 9; ++j) {
        if (i == j || status[i][j] != sdp::Status::Feasible) continue;
        const bool fine = weight[i] >= weight[j] - 1e-5 &&
                          robustness[i] >= robustness[j] - 1e-5 &&
                          yield[i] >= yield[j] - 1e-5;
        if (!fine) {
          std::ostringstream os;
          os << "monotone increases along edge " << i << "->" << j;
          note(os.str());
          ok = false;
        }
      }
    // crossing inequalities on a three-point grid
    const std::vector<double> grid{M_PI / 8, 3 * M_PI / 16, M_PI / 4};
    std::vector<std::vector<double>> m(grid.size(), std::vector<double>(grid.size()));
    for (size_t i = 0; i < grid.size(); ++i)
      for (size_t j = 0; j < grid.size(); ++j) {
        const auto y = monotones::yield_monotone(family_S(grid[j], 1.0), grid[i], settings);
        if (!y.ok()) ok = false;
        m[i][j] = y.value;
      }
    for (size_t i = 0; i < grid.size(); ++i)
      for (size_t j = 0; j < grid.size(); ++j) {
        if (i == j) continue;
        if (!(m[i][i] > m[i][j] && m[j][j] > m[j][i])) {
          note("crossing inequality violated");
          ok = false;
        }
      }
    report(5, "weight, robustness, and yield are monotone along every edge", ok);
  }

  // ---- criterion 6: one-way communication beats shared randomness -----------
  {
    bool ok = true;
    const auto src = family_S(M_PI / 4, 1.0);
    const auto dst = family_S(M_PI / 6, 1.0);
    const auto [det_out, det_prob] =
        locc::apply_1wlocc(locc::filter_map_deterministic(M_PI / 6), src);
    double dev = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        dev = std::max(dev, qcore::max_abs(det_out.at(a, x) - dst.at(a, x)));
    if (dev > 1e-10 || std::abs(det_prob - 1.0) > 1e-12) {
      note("completed filter did not reach the target with certainty");
      ok = false;
    }
    const auto [stoch_out, stoch_prob] =
        locc::apply_1wlocc(locc::filter_map_stochastic(M_PI / 6), src);
    dev = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        dev = std::max(dev, qcore::max_abs(stoch_out.at(a, x) - dst.at(a, x)));
    if (dev > 1e-10 || std::abs(stoch_prob - 0.5) > 1e-12) {
      note("single filter should succeed exactly half the time");
      ok = false;
    }
    const auto blocked = conversion::decide_conversion(src, dst, settings);
    if (blocked.status != sdp::Status::Infeasible) {
      note("the same conversion should be impossible under shared randomness");
      ok = false;
    }
    report(6, "explicit one-way maps realize a conversion that shared randomness cannot", ok);
  }

  // ---- criterion 7: property suites -----------------------------------------
  {
    bool ok = true;
    // reflexivity over the corpus
    for (int i = 0; i < 9; ++i)
      if (status[i][i] != sdp::Status::Feasible &&
          !conversion::decide_conversion(nodes[i], nodes[i], settings).feasible()) {
        note("reflexive conversion failed");
        ok = false;
      }
    if (!conversion::decide_conversion_multi(family_GHZ(3, M_PI / 4),
                                             family_GHZ(3, M_PI / 4), settings)
             .feasible()) {
      note("multi-Alice reflexive conversion failed");
      ok = false;
    }
    // transitivity witness over the solved matrix
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int c = 0; c < 9; ++c) {
          if (a == b || b == c || a == c) continue;
          if (status[a][b] == sdp::Status::Feasible &&
              status[b][c] == sdp::Status::Feasible &&
              status[a][c] != sdp::Status::Feasible) {
            std::ostringstream os;
            os << "transitivity broken: " << a << "->" << b << "->" << c;
            note(os.str());
            ok = false;
          }
        }
    // certificate replay
    {
      const auto dec = conversion::decide_conversion(
          family_S(M_PI / 4, 1.0), family_S(M_PI / 6, 0.8), settings);
      if (!dec.feasible() ||
          conversion::replay_conversion(family_S(M_PI / 4, 1.0),
                                        family_S(M_PI / 6, 0.8),
                                        *dec.certificate) > 1e-6) {
        note("conversion certificate replay exceeded 1e-6");
        ok = false;
      }
      const auto free_dec = freeness::is_free_bipartite(family_S(M_PI / 12, 0.8), settings);
      if (!free_dec.is_free() ||
          freeness::replay_certificate(family_S(M_PI / 12, 0.8),
                                       free_dec.certificates[0]) > 1e-6) {
        note("freeness certificate replay exceeded 1e-6");
        ok = false;
      }
    }
    // classicality-set inclusions on a ten-assemblage corpus
    {
      std::mt19937 rng(2026);
      std::vector<Assemblage> corpus;
      corpus.push_back(family_GHZ(3, M_PI / 4));
      corpus.push_back(family_GHZ(3, M_PI / 6));
      corpus.push_back(testing::with_noise(family_GHZ(3, M_PI / 4), 0.6));
      corpus.push_back(testing::with_noise(family_GHZ(3, M_PI / 4), 0.0));
      corpus.push_back(testing::pr_box_assemblage());
      while (corpus.size() < 10) corpus.push_back(testing::random_realized(rng, 2));
      for (const auto& a : corpus) {
        const auto losr = freeness::is_losr_free_multi(a, settings);
        const auto tolhs = freeness::is_tolhs_multi(a, settings);
        const auto general = freeness::is_general_lhs_multi(a, settings);
        if (losr.status == sdp::Status::Indeterminate ||
            tolhs.status == sdp::Status::Indeterminate ||
            general.status == sdp::Status::Indeterminate) {
          note("indeterminate classicality decision in the inclusion corpus");
          ok = false;
        }
        if ((losr.is_free() && !tolhs.is_free()) ||
            (tolhs.is_free() && !general.is_free())) {
          note("classicality-set inclusion violated");
          ok = false;
        }
      }
    }
    // real-embedding eigenvalue preservation
    {
      std::mt19937 rng(7);
      std::normal_distribution<double> g;
      for (int rep = 0; rep < 25; ++rep) {
        CMatrix raw(4, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) raw(i, j) = cxd(g(rng), g(rng));
        const CMatrix h = qcore::hermitize(raw);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qcore::real_embed(h));
        if (std::abs(es.eigenvalues().minCoeff() - qcore::min_eigenvalue(h)) > 1e-10) {
          note("embedding shifted an eigenvalue by more than 1e-10");
          ok = false;
        }
      }
    }
    report(7, "reflexivity, transitivity, certificate replay, inclusions, embedding", ok);
  }

  if (g_failures == 0) {
    std::printf("acceptance: all criteria PASS\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
