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

#include "eprkit/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "eprkit/strategies.hpp"

namespace eprkit::functionals {
namespace {

constexpr double kQuarterPi = M_PI / 4;

void check_eta(double eta, const char* who) {
  if (!(eta > 0.0) || eta > kQuarterPi + 1e-12)
    throw std::invalid_argument(std::string(who) + ": eta must lie in (0, pi/4]");
}

}  // namespace

TiltedParams tilted_bell_params(double theta) {
  check_eta(theta, "tilted_bell_params");
  const double mu = std::atan(std::sin(2.0 * theta));
  if (std::abs(theta - kQuarterPi) < 1e-12) return {0.0, mu};  // analytic limit
  const double t = std::tan(2.0 * theta);
  return {2.0 / std::sqrt(1.0 + 2.0 * t * t), mu};
}

EprFunctional epr_functional_bipartite(double eta) {
  check_eta(eta, "epr_functional_bipartite");
  const auto [alpha, mu] = tilted_bell_params(eta);
  const CMatrix b0 = std::cos(mu) * qcore::pauli_z() + std::sin(mu) * qcore::pauli_x();
  const CMatrix b1 = std::cos(mu) * qcore::pauli_z() - std::sin(mu) * qcore::pauli_x();

  EprFunctional f;
  f.scenario = Scenario::uniform(1, 2, 2, 2);
  f.eta = eta;
  f.alpha = alpha;
  f.mu = mu;
  f.operators.resize(4);
  const CMatrix f00 = alpha * qcore::identity(2) + b0 + b1;
  const CMatrix f01 = b0 - b1;
  f.operators[0 + 2 * 0] = f00;
  f.operators[1 + 2 * 0] = -f00;
  f.operators[0 + 2 * 1] = f01;
  f.operators[1 + 2 * 1] = -f01;
  return f;
}

EprFunctional epr_functional_multi(int n_parties, double eta) {
  if (n_parties < 2)
    throw std::invalid_argument("epr_functional_multi: need at least two parties");
  check_eta(eta, "epr_functional_multi");
  const int k = n_parties - 1;
  const double alpha = eta;
  const double s2 = std::sin(2.0 * eta);
  const double mu = std::asin(s2 / std::sqrt(2.0));  // first quadrant
  const CMatrix b0 = std::cos(mu) * qcore::pauli_z() + std::sin(mu) * qcore::pauli_x();
  const CMatrix b1 = -std::cos(mu) * qcore::pauli_z() + std::sin(mu) * qcore::pauli_x();
  const double c2a = std::cos(2.0 * alpha);
  const double den = std::sqrt(1.0 + c2a * c2a);

  EprFunctional f;
  f.scenario = Scenario::uniform(k, 2, 2, 2);
  f.eta = eta;
  f.alpha = alpha;
  f.mu = mu;
  const int na = f.scenario.output_count();
  const int nx = f.scenario.input_count();
  f.operators.assign(static_cast<size_t>(na) * nx, CMatrix::Zero(2, 2));

  // Correlator + marginal terms sit at the all-sigma_x input tuple, which is
  // all-ones in the family labeling.
  const int all_ones = nx - 1;
  for (int o = 0; o < na; ++o) {
    const auto as = f.scenario.output_tuple(o);
    int parity = 0;
    for (int ai : as) parity ^= ai;
    f.operators[o + na * all_ones] =
        (k * (parity ? -1.0 : 1.0)) * (b0 + b1) + (k * c2a / den) * (b0 - b1);
  }
  // One sigma_z input for Alice i, sigma_x for the rest.
  for (int i = 0; i < k; ++i) {
    std::vector<int> xs(k, 1);
    xs[i] = 0;
    const int x = f.scenario.input_index(xs);
    for (int o = 0; o < na; ++o) {
      const auto as = f.scenario.output_tuple(o);
      f.operators[o + na * x] += ((as[i] ? -1.0 : 1.0) / den) * (b0 - b1);
    }
  }
  return f;
}

double evaluate(const EprFunctional& f, const Assemblage& a) {
  if (!(f.scenario == a.scenario()))
    throw std::invalid_argument("evaluate: functional/assemblage scenario mismatch");
  cxd total = 0.0;
  for (int x = 0; x < f.scenario.input_count(); ++x)
    for (int o = 0; o < f.scenario.output_count(); ++o)
      total += (f.at(o, x) * a.at(o, x)).trace();
  return total.real();
}

double quantum_max_bipartite(double eta) {
  check_eta(eta, "quantum_max_bipartite");
  if (std::abs(eta - kQuarterPi) < 1e-12) return 2.0 * std::sqrt(2.0);
  const double t = std::tan(2.0 * eta);
  return 2.0 * std::sqrt(2.0) * std::sqrt(1.0 + 1.0 / (1.0 + 2.0 * t * t));
}

double quantum_max_multi(int n_parties, double eta) {
  if (n_parties < 2)
    throw std::invalid_argument("quantum_max_multi: need at least two parties");
  check_eta(eta, "quantum_max_multi");
  return 2.0 * std::sqrt(2.0) * (n_parties - 1);
}

double lhs_bound(const EprFunctional& f) {
  const Scenario& sc = f.scenario;
  std::vector<std::vector<strategies::DetResponse>> per_alice;
  for (int i = 0; i < sc.n_alices; ++i)
    per_alice.push_back(
        strategies::enumerate_responses(sc.n_inputs[i], sc.n_outputs[i]));

  double best = -std::numeric_limits<double>::infinity();
  std::vector<size_t> pick(sc.n_alices, 0);
  while (true) {
    CMatrix g = CMatrix::Zero(sc.bob_dim, sc.bob_dim);
    for (int x = 0; x < sc.input_count(); ++x) {
      const auto xs = sc.input_tuple(x);
      std::vector<int> as(sc.n_alices);
      for (int i = 0; i < sc.n_alices; ++i) as[i] = per_alice[i][pick[i]](xs[i]);
      g += f.at(sc.output_index(as), x);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
    int pos = sc.n_alices - 1;
    while (pos >= 0 && ++pick[pos] == per_alice[pos].size()) pick[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

double tilted_bell_value(double alpha, const BellCorrelations& c) {
  return alpha * c.a0 + c.ab[0][0] + c.ab[0][1] + c.ab[1][0] - c.ab[1][1];
}

double tilted_bell_classical_bound(double alpha) { return 2.0 + alpha; }

double tilted_bell_quantum_max(double alpha) {
  return std::sqrt(8.0 + 2.0 * alpha * alpha);
}

double multi_bell_quantum_max(int n_parties) {
  return 2.0 * std::sqrt(2.0) * (n_parties - 1);
}

std::pair<double, double> multi_bell_classical_bound_candidates(int n_parties,
                                                                double alpha) {
  const double c = std::cos(2.0 * alpha);
  const double numer = (n_parties - 1) * (1.0 - c);
  return {numer / std::sqrt(1.0 - c), numer / std::sqrt(1.0 - c * c)};
}

}  // namespace eprkit::functionals
