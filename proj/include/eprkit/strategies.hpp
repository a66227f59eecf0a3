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

#pragma once

#include <string>
#include <vector>

namespace eprkit::strategies {

// Input/output cardinalities of one black-box party.
struct PartyType {
  int n_inputs = 1;
  int n_outputs = 1;
};

// One party's deterministic pre/post-processing pair: an input relabeling
// g : X' -> X and an outcome post-processing f : A x X' -> A'.
struct DetComb {
  PartyType in;    // (|X|, |A|) of the processed box
  PartyType out;   // (|X'|, |A'|) of the resulting box
  std::vector<int> input_map;   // g, indexed by x'
  std::vector<int> output_map;  // f, indexed by a + |A| * x'

  int map_input(int xp) const { return input_map[xp]; }
  int map_output(int a, int xp) const {
    return output_map[a + in.n_outputs * xp];
  }

  // Canonical text form "g:[..];f:[..]", used in certificate JSON.
  std::string encode() const;
};

// Deterministic response function r : X -> A.
struct DetResponse {
  std::vector<int> table;
  int operator()(int x) const { return table[x]; }
};

enum class SignalDirection { AliceOneToTwo, AliceTwoToOne };

// Deterministic vertex of the set of correlations with one-way signalling
// between two parties.  For AliceOneToTwo the leader is Alice 1:
// a1 = leader(x1), a2 = follower(x1, x2); mirrored otherwise.
struct DetSignalling {
  SignalDirection direction;
  PartyType party1, party2;
  std::vector<int> leader;    // indexed by leader input
  std::vector<int> follower;  // indexed by x_leader + |X_leader| * x_follower

  // Outcome pair (a1, a2) for inputs (x1, x2).
  std::pair<int, int> outcomes(int x1, int x2) const;
};

// All deterministic combs from a box of type `in` to a box of type `out`, in
// lexicographic order of the concatenated (g, f) tables.  There are exactly
// |X|^|X'| * |A'|^(|A|*|X'|) of them; combs that act identically on every
// conditional distribution are kept as distinct entries.
std::vector<DetComb> enumerate_combs(PartyType in, PartyType out);

// All |A|^|X| deterministic responses, lexicographic order.
std::vector<DetResponse> enumerate_responses(int n_inputs, int n_outputs);

// All deterministic one-way-signalling strategies for the given direction;
// |A_L|^|X_L| * |A_F|^(|X_L|*|X_F|) entries, lexicographic order.
std::vector<DetSignalling> enumerate_signalling(PartyType party1,
                                                PartyType party2,
                                                SignalDirection direction);

// Action of a comb on a conditional distribution p(a|x), stored row-major as
// p[a + |A|*x]; returns p'(a'|x') in the same layout.
std::vector<double> apply_comb(const DetComb& comb,
                               const std::vector<double>& p_a_given_x);

}  // namespace eprkit::strategies
