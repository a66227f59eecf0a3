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

namespace eprkit::functionals {

// A linear functional of assemblages, S[Sigma] = sum_{a,x} tr(F_{a,x}
// sigma_{a|x}), with Hermitian operators F fixed on Bob's side.
struct EprFunctional {
  Scenario scenario;
  std::vector<CMatrix> operators;  // [a_index + output_count * x_index]
  double eta = 0.0;                // defining tilt parameter
  double alpha = 0.0;              // tilt coefficient
  double mu = 0.0;                 // Bob observable angle

  const CMatrix& at(int a_index, int x_index) const {
    return operators[a_index + scenario.output_count() * x_index];
  }
};

// Tilt parameters for a given state angle:
//   alpha = 2 / sqrt(1 + 2 tan^2(2 theta)),  mu = atan(sin(2 theta)).
// theta = pi/4 uses the analytic limit alpha = 0.
struct TiltedParams {
  double alpha;
  double mu;
};
TiltedParams tilted_bell_params(double theta);

// Two-input/two-output functional with operators
//   F_{0,0} = alpha I + B0 + B1 = -F_{1,0},  F_{0,1} = B0 - B1 = -F_{1,1},
//   B0 = cos(mu) sz + sin(mu) sx,  B1 = cos(mu) sz - sin(mu) sx.
EprFunctional epr_functional_bipartite(double eta);

// (N-1)-Alice functional built from the tilted N-party Bell expression with
// Bob's observables fixed (B1 = -cos(mu) sz + sin(mu) sx, 2 sin^2(mu) =
// sin^2(2 eta)).  Operator input labels follow the GHZ-family convention
// (input 0 measures sz, input 1 measures sx), so the correlator term sits at
// the all-ones input tuple.
EprFunctional epr_functional_multi(int n_parties, double eta);

double evaluate(const EprFunctional& f, const Assemblage& a);

// 2 sqrt(2) sqrt(1 + 1/(1 + 2 tan^2(2 eta))); the functional attains this on
// the matching family member and nowhere else.
double quantum_max_bipartite(double eta);

// 2 sqrt(2) (N - 1).
double quantum_max_multi(int n_parties, double eta);

// Largest value over classically explainable assemblages: the maximum over
// per-Alice deterministic responses of the top eigenvalue of
// sum_x F_{r(x), x}.
double lhs_bound(const EprFunctional& f);

// Full-correlator data of a two-party Bell experiment with binary settings
// and +-1 outcomes.
struct BellCorrelations {
  double a0 = 0.0;       // <A0>
  double ab[2][2] = {};  // <A_x B_y>
};

// alpha <A0> + <A0B0> + <A0B1> + <A1B0> - <A1B1>
double tilted_bell_value(double alpha, const BellCorrelations& c);
double tilted_bell_classical_bound(double alpha);  // 2 + alpha
double tilted_bell_quantum_max(double alpha);      // sqrt(8 + 2 alpha^2)

// Quantum maximum of the N-party tilted Bell expression: 2 sqrt(2) (N-1).
double multi_bell_quantum_max(int n_parties);

// Two inconsistent closed forms for the N-party classical bound circulate,
// differing in whether the square root carries cos or cos^2; both are
// reported and neither is used as a test oracle.
std::pair<double, double> multi_bell_classical_bound_candidates(int n_parties,
                                                                double alpha);

}  // namespace eprkit::functionals
