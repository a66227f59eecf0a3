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

#include <nlohmann/json_fwd.hpp>

#include "eprkit/assemblage.hpp"
#include "eprkit/sdp.hpp"

namespace eprkit::conversion {

// Witness of a feasible conversion: one Choi block per deterministic comb
// tuple, satisfying W >= 0, tr_{B'} W_lambda proportional to I/d, and the
// proportionality factors summing to one.
struct ConversionCertificate {
  // comb_indices[lambda][i] indexes Alice i's comb enumeration.
  std::vector<std::vector<int>> comb_indices;
  std::vector<std::string> comb_labels;  // canonical comb encodings, joined
  std::vector<CMatrix> choi_blocks;      // W_lambda, (d' d) x (d' d)
  double slack = 0.0;
};

struct ConversionDecision {
  sdp::Status status = sdp::Status::Indeterminate;
  double slack = 0.0;        // replayed violation of the certificate
  double slack_bound = 0.0;  // dual lower bound on the optimal slack
  std::optional<ConversionCertificate> certificate;
  std::string diagnostic;

  bool feasible() const { return status == sdp::Status::Feasible; }
};

// Feasibility program for "src converts to dst" under local pre/post
// processing coordinated by shared randomness: one PSD Choi block per
// deterministic comb tuple, the trace-proportionality side constraints, and
// the target equality rows.  Bob dimensions may differ between src and dst.
// Source and destination must have the same number of Alices.
sdp::SdpProblem build_conversion_sdp(const Assemblage& src, const Assemblage& dst);
sdp::SdpProblem build_conversion_sdp_multi(const Assemblage& src, const Assemblage& dst);

// Tri-state decision; on Feasible the certificate is returned and audited.
// decide_conversion insists on single-Alice inputs, decide_conversion_multi
// on matching multi-Alice arities; both share one implementation.
ConversionDecision decide_conversion(const Assemblage& src, const Assemblage& dst,
                                     const sdp::SolveSettings& s = {});
ConversionDecision decide_conversion_multi(const Assemblage& src,
                                           const Assemblage& dst,
                                           const sdp::SolveSettings& s = {});

// Reconstructs dst from the certificate and returns the worst deviation:
// target mismatch, block negativity, or side-constraint violation.
double replay_conversion(const Assemblage& src, const Assemblage& dst,
                         const ConversionCertificate& cert);

struct PreorderSettings {
  sdp::SolveSettings sdp;
  int workers = 0;            // 0: hardware concurrency
  bool fast = false;          // skip pairs implied by recorded transitivity
  bool mark_free = true;      // classify nodes as free / nonfree
};

struct PreorderGraph {
  struct Edge {
    int src = 0, dst = 0;
    double slack = 0.0;  // negative when implied transitively under `fast`
  };
  std::vector<std::string> names;
  std::vector<bool> free_node;
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> indeterminate;

  bool has_edge(int src, int dst) const;
  std::string to_dot() const;  // free nodes drawn grey
  nlohmann::json to_json() const;
};

// Ordered-pairwise conversion sweep over a homogeneous family; node order is
// the input order, pairwise decisions run concurrently and merge by index.
PreorderGraph preorder_graph(const std::vector<std::pair<std::string, Assemblage>>& family,
                             const PreorderSettings& settings = {});

}  // namespace eprkit::conversion
