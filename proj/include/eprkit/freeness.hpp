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

#include <optional>
#include <string>
#include <vector>

#include "eprkit/assemblage.hpp"
#include "eprkit/sdp.hpp"

namespace eprkit::freeness {

// A classicality certificate: deterministic responses and hidden states with
// sigma_{a|x} = sum_lambda [response_lambda(x) == a] * hidden_state_lambda.
// responses[lambda][x_index] holds the produced outcome index.
struct FreenessCertificate {
  std::vector<std::vector<int>> responses;
  std::vector<CMatrix> hidden_states;
};

struct FreenessDecision {
  sdp::Status status = sdp::Status::Indeterminate;
  double slack = 0.0;        // replayed max violation of the best decomposition
  double slack_bound = 0.0;  // dual lower bound on the optimal slack
  // One certificate for the single-decomposition models; for the time-ordered
  // model, one per signalling direction (Alice1->Alice2 first).
  std::vector<FreenessCertificate> certificates;
  std::string diagnostic;

  bool is_free() const { return status == sdp::Status::Feasible; }
};

// Membership of a single-Alice assemblage in the local-hidden-state set;
// lambda ranges over all deterministic responses.  Rejects k > 1 inputs.
FreenessDecision is_free_bipartite(const Assemblage& a,
                                   const sdp::SolveSettings& s = {});

// Membership in the classical-common-cause set for any number of Alices:
// lambda ranges over the product of per-Alice deterministic responses.
FreenessDecision is_losr_free_multi(const Assemblage& a,
                                    const sdp::SolveSettings& s = {});

// Two-Alice membership with an unconstrained joint conditional per lambda;
// lambda ranges over all joint functions (x1, x2) -> (a1, a2).
FreenessDecision is_general_lhs_multi(const Assemblage& a,
                                      const sdp::SolveSettings& s = {});

// Two-Alice time-ordered model: simultaneous decompositions with one-way
// signalling hidden strategies in both orderings.
FreenessDecision is_tolhs_multi(const Assemblage& a,
                                const sdp::SolveSettings& s = {});

// Max-abs deviation between the assemblage and the certificate's
// reconstruction (also checks hidden-state positivity and normalization).
double replay_certificate(const Assemblage& a, const FreenessCertificate& c);

}  // namespace eprkit::freeness
