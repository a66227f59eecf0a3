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

#include <utility>
#include <vector>

#include "eprkit/assemblage.hpp"

namespace eprkit::locc {

// A (possibly stochastic) one-way-LOCC map on single-Alice assemblages: Bob
// applies an instrument indexed by omega and communicates the outcome; Alice
// relabels her input as a function of (x', omega) and her output as a
// function of (a, x', omega).
struct OneWayLoccMap {
  int n_inputs_src = 2, n_outputs_src = 2;
  int n_inputs_dst = 2, n_outputs_dst = 2;

  // kraus[omega] holds the Kraus operators of Bob's map for that outcome.
  std::vector<std::vector<CMatrix>> kraus;
  // p(x | x', omega), stored [x + n_inputs_src * (xp + n_inputs_dst * omega)]
  std::vector<double> input_policy;
  // p(a' | a, x', omega),
  // stored [ap + n_outputs_dst * (a + n_outputs_src * (xp + n_inputs_dst * omega))]
  std::vector<double> output_policy;
  // declared completeness: sum_omega sum_k K^dag K equals I (deterministic)
  // or is merely dominated by I (stochastic)
  bool deterministic = false;

  double input_prob(int x, int xp, int omega) const {
    return input_policy[x + n_inputs_src * (xp + n_inputs_dst * omega)];
  }
  double output_prob(int ap, int a, int xp, int omega) const {
    return output_policy[ap + n_outputs_dst *
                                  (a + n_outputs_src * (xp + n_inputs_dst * omega))];
  }

  // Checks the Kraus domination/completeness condition and that both
  // policies are valid conditionals; throws on violation.
  void check(double tol = qcore::kDefaultTol) const;
};

// Applies the map; the output assemblage is renormalized by the success
// probability, which is returned alongside.  Throws on dimension mismatch or
// vanishing success probability.
std::pair<Assemblage, double> apply_1wlocc(const OneWayLoccMap& m, const Assemblage& a,
                                           double tol = qcore::kDefaultTol);

// Single-outcome filter K = cos(theta)|0><0| + sin(theta)|1><1| with identity
// classical policies; succeeds with probability 1/2 on the maximally tilted
// family member and lands on the theta member.
OneWayLoccMap filter_map_stochastic(double theta);

// Completed two-outcome version: the second Kraus operator is
// sin(theta)|1><0| + cos(theta)|0><1| and Alice flips her output exactly when
// x' = 0 and the communicated outcome is 1 (a' = a xor x'w xor w).
OneWayLoccMap filter_map_deterministic(double theta);

}  // namespace eprkit::locc
