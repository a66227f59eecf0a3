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

#include "eprkit/strategies.hpp"

#include <sstream>
#include <stdexcept>

namespace eprkit::strategies {
namespace {

void check_type(PartyType t, const char* who) {
  if (t.n_inputs < 1 || t.n_outputs < 1)
    throw std::invalid_argument(std::string(who) + ": cardinalities must be >= 1");
}

// All total lookup tables of the given length with values in [0, radix), in
// lexicographic order (first entry most significant).
std::vector<std::vector<int>> all_tables(int length, int radix) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(length, 0);
  while (true) {
    out.push_back(t);
    int pos = length - 1;
    while (pos >= 0 && t[pos] == radix - 1) t[pos--] = 0;
    if (pos < 0) break;
    ++t[pos];
  }
  return out;
}

std::string table_to_string(const std::vector<int>& t) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ',';
    os << t[i];
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string DetComb::encode() const {
  return "g:" + table_to_string(input_map) + ";f:" + table_to_string(output_map);
}

std::pair<int, int> DetSignalling::outcomes(int x1, int x2) const {
  if (direction == SignalDirection::AliceOneToTwo) {
    const int a1 = leader[x1];
    const int a2 = follower[x1 + party1.n_inputs * x2];
    return {a1, a2};
  }
  const int a2 = leader[x2];
  const int a1 = follower[x2 + party2.n_inputs * x1];
  return {a1, a2};
}

std::vector<DetComb> enumerate_combs(PartyType in, PartyType out) {
  check_type(in, "enumerate_combs");
  check_type(out, "enumerate_combs");
  const auto gs = all_tables(out.n_inputs, in.n_inputs);
  const auto fs = all_tables(in.n_outputs * out.n_inputs, out.n_outputs);
  std::vector<DetComb> combs;
  combs.reserve(gs.size() * fs.size());
  for (const auto& g : gs)
    for (const auto& f : fs) combs.push_back(DetComb{in, out, g, f});
  return combs;
}

std::vector<DetResponse> enumerate_responses(int n_inputs, int n_outputs) {
  check_type({n_inputs, n_outputs}, "enumerate_responses");
  std::vector<DetResponse> out;
  for (auto& t : all_tables(n_inputs, n_outputs)) out.push_back(DetResponse{std::move(t)});
  return out;
}

std::vector<DetSignalling> enumerate_signalling(PartyType party1,
                                                PartyType party2,
                                                SignalDirection direction) {
  check_type(party1, "enumerate_signalling");
  check_type(party2, "enumerate_signalling");
  const PartyType L = direction == SignalDirection::AliceOneToTwo ? party1 : party2;
  const PartyType F = direction == SignalDirection::AliceOneToTwo ? party2 : party1;
  const auto leaders = all_tables(L.n_inputs, L.n_outputs);
  const auto followers = all_tables(L.n_inputs * F.n_inputs, F.n_outputs);
  std::vector<DetSignalling> out;
  out.reserve(leaders.size() * followers.size());
  for (const auto& l : leaders)
    for (const auto& f : followers)
      out.push_back(DetSignalling{direction, party1, party2, l, f});
  return out;
}

std::vector<double> apply_comb(const DetComb& comb,
                               const std::vector<double>& p) {
  if (p.size() != static_cast<size_t>(comb.in.n_inputs * comb.in.n_outputs))
    throw std::invalid_argument("apply_comb: distribution size mismatch");
  std::vector<double> q(comb.out.n_inputs * comb.out.n_outputs, 0.0);
  for (int xp = 0; xp < comb.out.n_inputs; ++xp) {
    const int x = comb.map_input(xp);
    for (int a = 0; a < comb.in.n_outputs; ++a)
      q[comb.map_output(a, xp) + comb.out.n_outputs * xp] +=
          p[a + comb.in.n_outputs * x];
  }
  return q;
}

}  // namespace eprkit::strategies
