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

#include <random>
#include <set>

#include "eprkit/strategies.hpp"

using namespace eprkit::strategies;

TEST_CASE("comb enumeration counts") {
  // |X|^|X'| * |A'|^(|A| |X'|)
  CHECK(enumerate_combs({2, 2}, {2, 2}).size() == 64);   // 4 * 16
  CHECK(enumerate_combs({1, 1}, {1, 1}).size() == 1);    // identity only
  CHECK(enumerate_combs({2, 2}, {1, 2}).size() == 8);    // 2 * 4
  CHECK(enumerate_combs({3, 2}, {2, 2}).size() == 9 * 16);
}

TEST_CASE("comb enumeration has no duplicates and a stable order") {
  auto combs = enumerate_combs({2, 2}, {2, 2});
  std::set<std::string> seen;
  for (const auto& c : combs) CHECK(seen.insert(c.encode()).second);
  // lexicographic over concatenated tables: the first comb is all zeros
  CHECK(combs.front().encode() == "g:[0,0];f:[0,0,0,0]");
  CHECK(combs.back().encode() == "g:[1,1];f:[1,1,1,1]");
}

TEST_CASE("response enumeration") {
  CHECK(enumerate_responses(2, 2).size() == 4);
  CHECK(enumerate_responses(1, 5).size() == 5);
  CHECK(enumerate_responses(3, 2).size() == 8);
  auto rs = enumerate_responses(2, 3);
  std::set<std::vector<int>> seen;
  for (const auto& r : rs) CHECK(seen.insert(r.table).second);
  CHECK(rs.size() == 9);
}

TEST_CASE("signalling enumeration counts") {
  CHECK(enumerate_signalling({2, 2}, {2, 2}, SignalDirection::AliceOneToTwo).size() == 64);
  CHECK(enumerate_signalling({2, 2}, {2, 2}, SignalDirection::AliceTwoToOne).size() == 64);
  // |X1| = 1: no signal to carry, |A1| * |A2|^|X2|
  CHECK(enumerate_signalling({1, 2}, {2, 3}, SignalDirection::AliceOneToTwo).size() == 2 * 9);
  // mirrored direction count equals forward count for symmetric cardinalities
  CHECK(enumerate_signalling({2, 3}, {2, 3}, SignalDirection::AliceOneToTwo).size() ==
        enumerate_signalling({2, 3}, {2, 3}, SignalDirection::AliceTwoToOne).size());
}

TEST_CASE("signalling respects its declared direction") {
  for (auto dir : {SignalDirection::AliceOneToTwo, SignalDirection::AliceTwoToOne}) {
    for (const auto& s : enumerate_signalling({2, 2}, {2, 2}, dir)) {
      for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
          auto [a1, a2] = s.outcomes(x1, x2);
          CHECK(a1 >= 0);
          CHECK(a1 < 2);
          CHECK(a2 >= 0);
          CHECK(a2 < 2);
          if (dir == SignalDirection::AliceOneToTwo) {
            // a1 never depends on x2
            CHECK(a1 == s.outcomes(x1, 1 - x2).first);
          } else {
            CHECK(a2 == s.outcomes(1 - x1, x2).second);
          }
        }
      }
    }
  }
}

TEST_CASE("combs map conditional distributions to conditional distributions") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto combs = enumerate_combs({2, 2}, {2, 2});
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> p(4);
    for (int x = 0; x < 2; ++x) {
      double w0 = u(rng);
      p[0 + 2 * x] = w0;
      p[1 + 2 * x] = 1.0 - w0;
    }
    const auto& comb = combs[rep % combs.size()];
    auto q = apply_comb(comb, p);
    for (int xp = 0; xp < 2; ++xp) {
      double sum = 0.0;
      for (int ap = 0; ap < 2; ++ap) {
        CHECK(q[ap + 2 * xp] >= 0.0);
        sum += q[ap + 2 * xp];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
