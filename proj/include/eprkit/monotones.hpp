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

#include "eprkit/assemblage.hpp"
#include "eprkit/sdp.hpp"

namespace eprkit::monotones {

struct MonotoneResult {
  sdp::Status status = sdp::Status::Indeterminate;
  double value = 0.0;
  // For the weight and robustness programs: the optimal hidden states, so the
  // decomposition can be replayed against the input.
  std::vector<CMatrix> hidden_states;
  std::string diagnostic;

  bool ok() const { return status == sdp::Status::Feasible; }
};

// Smallest weight mu admitting sigma = mu Sigma' + (1-mu) Sigma_free:
// maximize sum_lambda tr(sigma~_lambda) subject to
//   sigma_{a|x} - sum_lambda D(a|x,lambda) sigma~_lambda >= 0,
//   sigma~_lambda >= 0,
// over per-Alice deterministic responses; the weight is 1 - optimum.
MonotoneResult epr_weight(const Assemblage& a, const sdp::SolveSettings& s = {});

// Smallest nu such that (sigma + nu sigma') / (1 + nu) is classically
// explainable: minimize sum_lambda tr(sigma~_lambda) - 1 subject to
//   sum_lambda D(a|x,lambda) sigma~_lambda - sigma_{a|x} >= 0,
//   sigma~_lambda >= 0.
MonotoneResult epr_robustness(const Assemblage& a, const sdp::SolveSettings& s = {});

// Best value of the tilted functional reachable from `a` by free processing:
// maximize S_eta of the reconstructed target over Choi blocks satisfying the
// conversion side constraints, with the target type fixed to two binary
// inputs/outputs on a qubit.  Single-Alice inputs only.
MonotoneResult yield_monotone(const Assemblage& a, double eta,
                              const sdp::SolveSettings& s = {});

// Multi-Alice analogue driven by the (N-1)-Alice functional; the target type
// equals the source type.  Single-Alice inputs delegate to yield_monotone.
MonotoneResult yield_monotone_multi(const Assemblage& a, double eta,
                                    const sdp::SolveSettings& s = {});

}  // namespace eprkit::monotones
