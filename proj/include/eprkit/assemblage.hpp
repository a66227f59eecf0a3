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

#include <nlohmann/json_fwd.hpp>

#include "eprkit/qcore.hpp"

namespace eprkit {

// Type of an assemblage: number of measuring parties (Alices), their
// input/output cardinalities, and the dimension of Bob's system.
//
// Outcome and input tuples are addressed by mixed-radix integers with
// Alice 1 (index 0) most significant: for per-Alice cardinalities
// (c_0, ..., c_{k-1}) the tuple (t_0, ..., t_{k-1}) has index
// ((t_0 * c_1 + t_1) * c_2 + t_2) ...
struct Scenario {
  int n_alices = 1;
  std::vector<int> n_inputs;   // per Alice
  std::vector<int> n_outputs;  // per Alice
  Eigen::Index bob_dim = 2;

  int input_count() const;   // product of n_inputs
  int output_count() const;  // product of n_outputs

  int input_index(const std::vector<int>& xs) const;
  int output_index(const std::vector<int>& as) const;
  std::vector<int> input_tuple(int index) const;
  std::vector<int> output_tuple(int index) const;

  void check() const;  // throws on invalid cardinalities
  bool operator==(const Scenario&) const = default;

  // Convenience constructor for k Alices with equal cardinalities.
  static Scenario uniform(int n_alices, int n_inputs, int n_outputs,
                          Eigen::Index bob_dim);
};

// A POVM: effects indexed by outcome, PSD and summing to the identity.
struct Povm {
  std::vector<CMatrix> effects;

  void check(double tol = qcore::kDefaultTol) const;
};

// An assemblage: a total map from (outcome tuple, input tuple) to an
// unnormalized positive d x d matrix.  Immutable after construction.
class Assemblage {
 public:
  Assemblage(Scenario scenario, std::vector<CMatrix> elements);

  const Scenario& scenario() const { return scenario_; }

  const CMatrix& at(int a_index, int x_index) const;
  const CMatrix& at(const std::vector<int>& as,
                    const std::vector<int>& xs) const;

  // Sum over all outcome tuples for the given input tuple.
  CMatrix marginal(int x_index) const;

  const std::vector<CMatrix>& elements() const { return elements_; }

 private:
  Scenario scenario_;
  std::vector<CMatrix> elements_;  // [a_index + output_count * x_index]
};

// sigma_{a|x} = tr_A[(M_{a|x} (x) I) rho].  `povms` is indexed by Alice's
// input x.
Assemblage realize_bipartite(const CMatrix& rho, const std::vector<Povm>& povms,
                             Eigen::Index bob_dim,
                             double tol = qcore::kDefaultTol);

// k-Alice version; povms_per_alice[i][x_i] is Alice i's POVM for input x_i.
Assemblage realize_multipartite(
    const CMatrix& rho, const std::vector<std::vector<Povm>>& povms_per_alice,
    Eigen::Index bob_dim, double tol = qcore::kDefaultTol);

// The two-qubit family: elements p * sigma^theta_{a|x} + (1-p) * I/4, where
// sigma^theta comes from |theta> = cos(theta)|00> + sin(theta)|11> measured
// with sigma_z (x = 0) and sigma_x (x = 1).  theta in (0, pi/4], p in [0, 1].
// The noise mixes the assemblage elements themselves, not the state.
Assemblage family_S(double theta, double p);

// (N-1)-Alice family from cos(theta)|0...0> + sin(theta)|1...1> with the same
// per-Alice measurements; N >= 2, theta in (0, pi/4].
Assemblage family_GHZ(int n_parties, double theta);

// Measurements used by both families: sigma_z for input 0, sigma_x for 1.
Povm family_measurement(int x);

struct ValidationIssue {
  enum class Kind { NotPsd, Normalization, NoSignaling };
  Kind kind;
  std::string detail;
  double deviation = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  double max_deviation() const;
  std::string to_string() const;
};

// Reports every violated assemblage invariant with its worst deviation; an
// empty report means the assemblage is valid within tol.
ValidationReport validate(const Assemblage& a, double tol = qcore::kDefaultTol);

nlohmann::json assemblage_to_json(const Assemblage& a);
Assemblage assemblage_from_json(const nlohmann::json& j);

}  // namespace eprkit
