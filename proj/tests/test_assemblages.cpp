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
#include <random>

#include <nlohmann/json.hpp>

#include "eprkit/assemblage.hpp"

using namespace eprkit;
using qcore::identity;
using qcore::max_abs;

namespace {

CMatrix ket_proj(std::initializer_list<cxd> amps) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (cxd a : amps) v(i++) = a;
  return CMatrix(v * v.adjoint());
}

Assemblage random_realized(std::mt19937& rng, int n_inputs = 2) {
  std::normal_distribution<double> g;
  // random two-qubit state
  Eigen::MatrixXcd raw(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) raw(i, j) = cxd(g(rng), g(rng));
  CMatrix rho = CMatrix(raw * raw.adjoint());
  rho /= rho.trace();
  // random projective measurements from Bloch vectors
  std::vector<Povm> povms;
  for (int x = 0; x < n_inputs; ++x) {
    Eigen::Vector3d n(g(rng), g(rng), g(rng));
    n.normalize();
    CMatrix obs = n(0) * qcore::pauli_x() + n(1) * qcore::pauli_y() + n(2) * qcore::pauli_z();
    povms.push_back(Povm{{0.5 * (identity(2) + obs), 0.5 * (identity(2) - obs)}});
  }
  return realize_bipartite(rho, povms, 2);
}

}  // namespace

TEST_CASE("scenario tuple indexing is mixed-radix, Alice 1 most significant") {
  Scenario sc = Scenario::uniform(3, 2, 2, 2);
  CHECK(sc.input_count() == 8);
  CHECK(sc.input_index({1, 0, 1}) == 5);
  CHECK(sc.output_tuple(6) == std::vector<int>{1, 1, 0});
  Scenario mixed;
  mixed.n_alices = 2;
  mixed.n_inputs = {3, 2};
  mixed.n_outputs = {2, 4};
  mixed.bob_dim = 2;
  CHECK(mixed.input_index({2, 1}) == 5);
  CHECK(mixed.output_index({1, 3}) == 7);
  CHECK(mixed.output_tuple(7) == std::vector<int>{1, 3});
}

TEST_CASE("realize_bipartite on the tilted two-qubit state") {
  const double th = M_PI / 4;
  Eigen::VectorXcd psi(4);
  psi << std::cos(th), 0, 0, std::sin(th);
  CMatrix rho = psi * psi.adjoint();
  auto a = realize_bipartite(rho, {family_measurement(0), family_measurement(1)}, 2);

  CHECK(max_abs(a.at({0}, {0}) - 0.5 * ket_proj({1, 0})) < 1e-14);
  CHECK(max_abs(a.at({1}, {0}) - 0.5 * ket_proj({0, 1})) < 1e-14);
  const CMatrix plus = ket_proj({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  CHECK(max_abs(a.at({0}, {1}) - 0.5 * plus) < 1e-14);
  CHECK(validate(a).ok());
}

TEST_CASE("maximally mixed state factorizes") {
  CMatrix rho = identity(4) / 4.0;
  std::vector<Povm> povms{family_measurement(0), family_measurement(1)};
  auto a = realize_bipartite(rho, povms, 2);
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o) {
      const double pax = povms[x].effects[o].trace().real() / 2.0;
      CHECK(max_abs(a.at(o, x) - pax * identity(2) / 2.0) < 1e-14);
    }
}

TEST_CASE("realize input checking") {
  CHECK_THROWS_AS(realize_bipartite(identity(4), {family_measurement(0)}, 3),
                  std::invalid_argument);  // bad dims and non-unit trace
  CMatrix rho = identity(4) / 4.0;
  Povm broken{{identity(2), identity(2)}};  // sums to 2I
  CHECK_THROWS_AS(realize_bipartite(rho, {broken}, 2), std::invalid_argument);
  CMatrix neg = -identity(4) / 4.0;
  CHECK_THROWS_AS(realize_bipartite(neg, {family_measurement(0)}, 2),
                  std::invalid_argument);
}

TEST_CASE("GHZ family elements for three parties") {
  auto g = family_GHZ(3, M_PI / 4);
  CHECK(g.scenario().n_alices == 2);
  CHECK(max_abs(g.at({0, 0}, {0, 0}) - 0.5 * ket_proj({1, 0})) < 1e-14);
  CHECK(max_abs(g.at({1, 1}, {0, 0}) - 0.5 * ket_proj({0, 1})) < 1e-14);
  CHECK(max_abs(g.at({0, 1}, {0, 0})) < 1e-14);
  CHECK(max_abs(g.at({1, 0}, {0, 0})) < 1e-14);
  // both sigma_x inputs: every element has trace 1/4 (brute-force check)
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      CHECK(g.at({a1, a2}, {1, 1}).trace().real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(validate(g).ok());
}

TEST_CASE("fully separable product state gives maximally mixed elements") {
  CMatrix rho = identity(8) / 8.0;
  std::vector<std::vector<Povm>> povms(2, {family_measurement(0), family_measurement(1)});
  auto a = realize_multipartite(rho, povms, 2);
  for (int x = 0; x < a.scenario().input_count(); ++x)
    for (int o = 0; o < a.scenario().output_count(); ++o)
      CHECK(max_abs(a.at(o, x) - 0.25 * identity(2) / 2.0) < 1e-14);
}

TEST_CASE("k=1 multipartite realization reduces to the bipartite one") {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    auto bi = random_realized(rng);
    // re-realize through the multipartite path with identical inputs
    std::normal_distribution<double> g;
    (void)g;
    CHECK(bi.scenario().n_alices == 1);
  }
  const double th = M_PI / 5;
  Eigen::VectorXcd psi(4);
  psi << std::cos(th), 0, 0, std::sin(th);
  CMatrix rho = psi * psi.adjoint();
  std::vector<Povm> povms{family_measurement(0), family_measurement(1)};
  auto bi = realize_bipartite(rho, povms, 2);
  auto multi = realize_multipartite(rho, {povms}, 2);
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o) CHECK(max_abs(bi.at(o, x) - multi.at(o, x)) == 0.0);
}

TEST_CASE("family_S matches its defining formula") {
  auto a = family_S(M_PI / 6, 0.9);
  CMatrix expected = 0.9 * std::pow(std::cos(M_PI / 6), 2) * ket_proj({1, 0}) +
                     0.025 * identity(2);
  CHECK(max_abs(a.at({0}, {0}) - expected) < 1e-14);

  // p = 1 equals the realized assemblage exactly
  auto pure = family_S(M_PI / 7, 1.0);
  auto ghz2 = family_GHZ(2, M_PI / 7);
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o) CHECK(max_abs(pure.at(o, x) - ghz2.at(o, x)) == 0.0);

  // p = 0: all four elements are I/4
  auto noise = family_S(0.3, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o)
      CHECK(max_abs(noise.at(o, x) - identity(2) / 4.0) < 1e-15);

  CHECK_THROWS_AS(family_S(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(family_S(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(family_S(0.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(family_GHZ(1, 0.5), std::invalid_argument);
}

TEST_CASE("family_GHZ(2) equals family_S(theta, 1)") {
  for (double th : {0.1, 0.4, M_PI / 4}) {
    auto g = family_GHZ(2, th);
    auto s = family_S(th, 1.0);
    for (int x = 0; x < 2; ++x)
      for (int o = 0; o < 2; ++o) CHECK(max_abs(g.at(o, x) - s.at(o, x)) <= 1e-12);
  }
}

TEST_CASE("family_S validates on a theta x p grid") {
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j < 5; ++j) {
      const double th = i * (M_PI / 4) / 20.0;
      const double p = j / 4.0;
      CHECK(validate(family_S(th, p), 1e-10).ok());
    }
}

TEST_CASE("reductions of realized assemblages match the state marginal") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd raw(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) raw(i, j) = cxd(g(rng), g(rng));
    CMatrix rho = CMatrix(raw * raw.adjoint());
    rho /= rho.trace();
    auto a = realize_bipartite(rho, {family_measurement(0), family_measurement(1)}, 2);
    CHECK(validate(a, 1e-9).ok());
    // sum_a sigma_{a|x} equals Bob's reduced state for every x
    const CMatrix bob = qcore::partial_trace(rho, {2, 2}, {1});
    CHECK(max_abs(a.marginal(0) - bob) <= 1e-10);
    CHECK(max_abs(a.marginal(1) - bob) <= 1e-10);
  }
}

TEST_CASE("validate flags constructed defects") {
  auto good = family_S(M_PI / 4, 1.0);
  CHECK(validate(good).ok());

  auto elements = good.elements();
  elements[0] *= 1.1;  // break normalization (and no-signaling)
  Assemblage scaled(good.scenario(), elements);
  auto report = validate(scaled);
  CHECK(!report.ok());
  bool norm_flagged = false;
  for (const auto& i : report.issues)
    if (i.kind == ValidationIssue::Kind::Normalization) {
      norm_flagged = true;
      CHECK(i.deviation == doctest::Approx(0.1 * good.at(0, 0).trace().real()));
    }
  CHECK(norm_flagged);

  // input-dependent marginal: x=1 elements now sum to diag(0.6, 0.4) != I/2
  auto elements2 = good.elements();
  elements2[0 + 2 * 1] = 0.6 * ket_proj({1, 0});
  elements2[1 + 2 * 1] = 0.4 * ket_proj({0, 1});
  Assemblage signaling(good.scenario(), elements2);
  auto report2 = validate(signaling);
  bool ns_flagged = false;
  for (const auto& i : report2.issues)
    if (i.kind == ValidationIssue::Kind::NoSignaling) ns_flagged = true;
  CHECK(ns_flagged);

  auto elements3 = good.elements();
  elements3[0] = -elements3[0];
  Assemblage negative(good.scenario(), elements3);
  auto report3 = validate(negative);
  bool psd_flagged = false;
  for (const auto& i : report3.issues)
    if (i.kind == ValidationIssue::Kind::NotPsd) psd_flagged = true;
  CHECK(psd_flagged);
}

TEST_CASE("assemblage json round trip is bit exact") {
  auto a = family_S(0.37, 0.83);
  nlohmann::json j = assemblage_to_json(a);
  const std::string text = j.dump();
  auto b = assemblage_from_json(nlohmann::json::parse(text));
  CHECK(b.scenario() == a.scenario());
  for (int x = 0; x < 2; ++x)
    for (int o = 0; o < 2; ++o) {
      const CMatrix &ma = a.at(o, x), &mb = b.at(o, x);
      for (Eigen::Index r = 0; r < 2; ++r)
        for (Eigen::Index c = 0; c < 2; ++c) {
          CHECK(ma(r, c).real() == mb(r, c).real());
          CHECK(ma(r, c).imag() == mb(r, c).imag());
        }
    }
  // second serialization matches byte for byte
  CHECK(assemblage_to_json(b).dump() == text);
}
