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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eprkit/freeness.hpp"
#include "eprkit/functionals.hpp"
#include "test_support.hpp"

using namespace eprkit;
using namespace eprkit::functionals;

namespace {

// Independent evaluation: plain loops over trace sums, no shared code with
// evaluate() beyond the matrix type.
double trace_oracle(const EprFunctional& f, const Assemblage& a) {
  double total = 0.0;
  for (int x = 0; x < f.scenario.input_count(); ++x)
    for (int o = 0; o < f.scenario.output_count(); ++o) {
      const CMatrix& fa = f.at(o, x);
      const CMatrix& sig = a.at(o, x);
      for (Eigen::Index i = 0; i < fa.rows(); ++i)
        for (Eigen::Index j = 0; j < fa.cols(); ++j)
          total += (fa(i, j) * sig(j, i)).real();
    }
  return total;
}

}  // namespace

TEST_CASE("tilt parameters") {
  const auto qp = tilted_bell_params(M_PI / 4);
  CHECK(qp.alpha == 0.0);
  CHECK(qp.mu == doctest::Approx(M_PI / 4).epsilon(1e-12));

  const auto p6 = tilted_bell_params(M_PI / 6);
  CHECK(p6.alpha == doctest::Approx(2.0 / std::sqrt(7.0)).epsilon(1e-12));
  CHECK(std::tan(p6.mu) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  CHECK(tilted_bell_params(1e-9).alpha == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(tilted_bell_params(0.0), std::invalid_argument);
  CHECK_THROWS_AS(tilted_bell_params(1.0), std::invalid_argument);
}

TEST_CASE("operators of the two-party functional") {
  const auto f = epr_functional_bipartite(M_PI / 4);
  CHECK(qcore::max_abs(f.at(0, 0) - std::sqrt(2.0) * qcore::pauli_z()) < 1e-12);
  CHECK(qcore::max_abs(f.at(0, 1) + f.at(1, 1)) == 0.0);
  CHECK(qcore::max_abs(f.at(0, 0) + f.at(1, 0)) == 0.0);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) CHECK(qcore::is_hermitian(f.at(a, x), 1e-12));
}

TEST_CASE("evaluation against known maxima and the trace oracle") {
  CHECK(evaluate(epr_functional_bipartite(M_PI / 4), family_S(M_PI / 4, 1.0)) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(evaluate(epr_functional_bipartite(M_PI / 6), family_S(M_PI / 6, 1.0)) ==
        doctest::Approx(2.0 * std::sqrt(2.0) * std::sqrt(8.0 / 7.0)).epsilon(1e-12));
  // noisy members against the independent trace oracle
  for (double eta : {0.2, 0.5, M_PI / 4})
    for (double p : {0.0, 0.4, 1.0}) {
      const auto f = epr_functional_bipartite(eta);
      const auto a = family_S(0.6, p);
      CHECK(evaluate(f, a) == doctest::Approx(trace_oracle(f, a)).epsilon(1e-12));
    }
  CHECK_THROWS_AS(evaluate(epr_functional_bipartite(0.5), family_GHZ(3, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("evaluation is real on valid assemblages") {
  std::mt19937 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const auto a = testing::random_realized(rng, 1);
    const auto f = epr_functional_bipartite(0.3 + 0.04 * rep);
    cxd total = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int o = 0; o < 2; ++o) total += (f.at(o, x) * a.at(o, x)).trace();
    CHECK(std::abs(total.imag()) <= 1e-10);
  }
}

TEST_CASE("maximum is attained exactly on the matching member") {
  for (int i = 1; i <= 20; ++i) {
    const double eta = i * (M_PI / 4) / 20.0;
    const double got = evaluate(epr_functional_bipartite(eta), family_S(eta, 1.0));
    CHECK(std::abs(got - quantum_max_bipartite(eta)) <= 1e-9);
  }
  // strictness off the diagonal
  for (double eta : {0.15, 0.5, M_PI / 4})
    for (double th : {0.1, 0.35, 0.7}) {
      if (std::abs(eta - th) < 1e-9) continue;
      const double got = evaluate(epr_functional_bipartite(eta), family_S(th, 1.0));
      CHECK(got < quantum_max_bipartite(eta) - 1e-6);
    }
}

TEST_CASE("quantum maximum formula") {
  CHECK(quantum_max_bipartite(M_PI / 4) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(quantum_max_bipartite(M_PI / 6) == doctest::Approx(3.023716).epsilon(1e-6));
  double prev = quantum_max_bipartite(0.01);
  for (int i = 2; i <= 20; ++i) {
    const double cur = quantum_max_bipartite(i * (M_PI / 4) / 20.0);
    CHECK(cur < prev + 1e-12);  // monotone decreasing toward 2 sqrt(2)
    prev = cur;
  }
}

TEST_CASE("classical bound over deterministic responses") {
  CHECK(lhs_bound(epr_functional_bipartite(M_PI / 4)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // constant operators: every response reaches |X| exactly
  EprFunctional constant;
  constant.scenario = Scenario::uniform(1, 3, 1, 2);
  constant.operators.assign(3, qcore::identity(2));
  CHECK(lhs_bound(constant) == doctest::Approx(3.0).epsilon(1e-15));

  for (int i = 1; i <= 20; ++i) {
    const double eta = i * (M_PI / 4) / 20.0;
    CHECK(lhs_bound(epr_functional_bipartite(eta)) <= quantum_max_bipartite(eta));
  }
}

TEST_CASE("free assemblages never beat the classical bound") {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 6; ++rep) {
    // random free assemblage: mixture of deterministic responses with
    // random Bob states
    std::normal_distribution<double> g;
    std::vector<CMatrix> elements(4, CMatrix::Zero(2, 2));
    double weight_left = 1.0;
    for (int l = 0; l < 4; ++l) {
      Eigen::MatrixXcd raw(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) raw(i, j) = cxd(g(rng), g(rng));
      CMatrix state = CMatrix(raw * raw.adjoint());
      state /= state.trace();
      const double w = l == 3 ? weight_left : weight_left * 0.37;
      weight_left -= l == 3 ? 0.0 : w;
      const int r0 = l & 1, r1 = (l >> 1) & 1;
      elements[r0 + 2 * 0] += w * state;
      elements[r1 + 2 * 1] += w * state;
    }
    Assemblage a(Scenario::uniform(1, 2, 2, 2), elements);
    REQUIRE(validate(a, 1e-8).ok());
    for (double eta : {0.3, M_PI / 4}) {
      const auto f = epr_functional_bipartite(eta);
      CHECK(evaluate(f, a) <= lhs_bound(f) + 1e-8);
    }
  }
}

TEST_CASE("multi-party functional hits 2 sqrt(2) (N-1) exactly on its member") {
  CHECK(quantum_max_multi(3, 0.3) == doctest::Approx(4.0 * std::sqrt(2.0)));
  for (int i = 1; i <= 20; ++i) {
    const double eta = i * (M_PI / 4) / 20.0;
    const double got = evaluate(epr_functional_multi(3, eta), family_GHZ(3, eta));
    CHECK(std::abs(got - 4.0 * std::sqrt(2.0)) <= 1e-9);
  }
  // two-party degeneration agrees with the dedicated maximum
  for (double eta : {0.3, 0.6}) {
    const double got = evaluate(epr_functional_multi(2, eta), family_GHZ(2, eta));
    CHECK(got == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  }
  // strictness
  const double off =
      evaluate(epr_functional_multi(3, M_PI / 4), family_GHZ(3, M_PI / 6));
  CHECK(off < 4.0 * std::sqrt(2.0) - 1e-6);
  CHECK(off == doctest::Approx(5.2779168675).epsilon(1e-9));

  // multipartite classical bound stays below the quantum maximum and free
  // (fully noisy) members stay below the classical bound
  for (double eta : {0.3, M_PI / 4}) {
    const auto f = epr_functional_multi(3, eta);
    CHECK(lhs_bound(f) <= quantum_max_multi(3, eta) + 1e-12);
    CHECK(evaluate(f, testing::with_noise(family_GHZ(3, M_PI / 4), 0.0)) <=
          lhs_bound(f) + 1e-8);
  }
}

TEST_CASE("tilted Bell values and bounds") {
  BellCorrelations chsh{};  // PR-box correlations reach 4 at alpha = 0
  chsh.ab[0][0] = chsh.ab[0][1] = chsh.ab[1][0] = 1.0;
  chsh.ab[1][1] = -1.0;
  CHECK(tilted_bell_value(0.0, chsh) == doctest::Approx(4.0));
  CHECK(tilted_bell_classical_bound(0.0) == doctest::Approx(2.0));
  CHECK(tilted_bell_quantum_max(0.0) == doctest::Approx(2.0 * std::sqrt(2.0)));

  CHECK(tilted_bell_classical_bound(2.0) == doctest::Approx(4.0));
  CHECK(tilted_bell_quantum_max(2.0) == doctest::Approx(4.0));  // coincide

  const double a7 = 2.0 / std::sqrt(7.0);
  CHECK(tilted_bell_quantum_max(a7) ==
        doctest::Approx(std::sqrt(8.0 + 8.0 / 7.0)).epsilon(1e-12));

  CHECK(multi_bell_quantum_max(3) == doctest::Approx(4.0 * std::sqrt(2.0)));
  // both recorded candidate forms agree at alpha = pi/4 and differ elsewhere
  const auto [c1, c2] = multi_bell_classical_bound_candidates(3, M_PI / 4);
  CHECK(c1 == doctest::Approx(c2).epsilon(1e-12));
  const auto [d1, d2] = multi_bell_classical_bound_candidates(3, 0.3);
  CHECK(d1 != doctest::Approx(d2).epsilon(1e-6));
}
