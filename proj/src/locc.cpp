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

#include "eprkit/locc.hpp"

#include <cmath>
#include <stdexcept>

namespace eprkit::locc {

void OneWayLoccMap::check(double tol) const {
  if (kraus.empty()) throw std::invalid_argument("OneWayLoccMap: no instrument outcomes");
  const Eigen::Index d = kraus.front().front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& ops : kraus) {
    if (ops.empty()) throw std::invalid_argument("OneWayLoccMap: empty Kraus list");
    for (const auto& k : ops) {
      if (k.rows() != d || k.cols() != d)
        throw std::invalid_argument("OneWayLoccMap: Kraus dimension mismatch");
      total += k.adjoint() * k;
    }
  }
  const CMatrix gap = CMatrix::Identity(d, d) - total;
  if (deterministic) {
    if (qcore::max_abs(gap) > tol)
      throw std::invalid_argument("OneWayLoccMap: instrument is not complete");
  } else if (!qcore::is_psd(gap, tol)) {
    throw std::invalid_argument("OneWayLoccMap: instrument exceeds unit trace");
  }

  const int n_omega = static_cast<int>(kraus.size());
  if (input_policy.size() !=
      static_cast<size_t>(n_inputs_src) * n_inputs_dst * n_omega)
    throw std::invalid_argument("OneWayLoccMap: input policy size mismatch");
  if (output_policy.size() != static_cast<size_t>(n_outputs_dst) * n_outputs_src *
                                  n_inputs_dst * n_omega)
    throw std::invalid_argument("OneWayLoccMap: output policy size mismatch");
  for (int omega = 0; omega < n_omega; ++omega) {
    for (int xp = 0; xp < n_inputs_dst; ++xp) {
      double sum = 0.0;
      for (int x = 0; x < n_inputs_src; ++x) {
        const double v = input_prob(x, xp, omega);
        if (v < -tol) throw std::invalid_argument("OneWayLoccMap: negative input policy");
        sum += v;
      }
      if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("OneWayLoccMap: input policy not normalized");
      for (int a = 0; a < n_outputs_src; ++a) {
        double osum = 0.0;
        for (int ap = 0; ap < n_outputs_dst; ++ap) {
          const double v = output_prob(ap, a, xp, omega);
          if (v < -tol)
            throw std::invalid_argument("OneWayLoccMap: negative output policy");
          osum += v;
        }
        if (std::abs(osum - 1.0) > tol)
          throw std::invalid_argument("OneWayLoccMap: output policy not normalized");
      }
    }
  }
}

std::pair<Assemblage, double> apply_1wlocc(const OneWayLoccMap& m, const Assemblage& a,
                                           double tol) {
  m.check(tol);
  const Scenario& sc = a.scenario();
  if (sc.n_alices != 1)
    throw std::invalid_argument("apply_1wlocc: single-Alice assemblage expected");
  if (sc.n_inputs[0] != m.n_inputs_src || sc.n_outputs[0] != m.n_outputs_src)
    throw std::invalid_argument("apply_1wlocc: classical cardinality mismatch");
  const Eigen::Index d = sc.bob_dim;
  if (m.kraus.front().front().rows() != d)
    throw std::invalid_argument("apply_1wlocc: Bob dimension mismatch");

  Scenario out = sc;
  out.n_inputs = {m.n_inputs_dst};
  out.n_outputs = {m.n_outputs_dst};

  std::vector<CMatrix> elements(
      static_cast<size_t>(m.n_outputs_dst) * m.n_inputs_dst,
      CMatrix::Zero(d, d));
  for (int omega = 0; omega < static_cast<int>(m.kraus.size()); ++omega)
    for (int xp = 0; xp < m.n_inputs_dst; ++xp)
      for (int x = 0; x < m.n_inputs_src; ++x) {
        const double px = m.input_prob(x, xp, omega);
        if (px == 0.0) continue;
        for (int ain = 0; ain < m.n_outputs_src; ++ain) {
          CMatrix mapped = CMatrix::Zero(d, d);
          for (const auto& k : m.kraus[omega])
            mapped += k * a.at(ain, x) * k.adjoint();
          for (int ap = 0; ap < m.n_outputs_dst; ++ap) {
            const double pa = m.output_prob(ap, ain, xp, omega);
            if (pa == 0.0) continue;
            elements[ap + m.n_outputs_dst * xp] += px * pa * mapped;
          }
        }
      }

  // success probability: trace of any output ensemble (input-independent for
  // valid assemblages)
  double q = 0.0;
  for (int ap = 0; ap < m.n_outputs_dst; ++ap)
    q += elements[ap + 0].trace().real();
  for (int xp = 1; xp < m.n_inputs_dst; ++xp) {
    double qx = 0.0;
    for (int ap = 0; ap < m.n_outputs_dst; ++ap)
      qx += elements[ap + m.n_outputs_dst * xp].trace().real();
    if (std::abs(qx - q) > 10 * tol)
      throw std::invalid_argument("apply_1wlocc: input-dependent success probability");
  }
  if (q <= tol) throw std::invalid_argument("apply_1wlocc: zero success probability");
  for (auto& e : elements) e /= q;
  return {Assemblage(out, std::move(elements)), q};
}

namespace {

void check_filter_theta(double theta) {
  if (!(theta > 0.0) || !(theta < M_PI / 4))
    throw std::invalid_argument("filter map: theta must lie in (0, pi/4)");
}

std::vector<double> identity_input_policy(int n, int n_omega) {
  std::vector<double> p(static_cast<size_t>(n) * n * n_omega, 0.0);
  for (int omega = 0; omega < n_omega; ++omega)
    for (int x = 0; x < n; ++x) p[x + n * (x + n * omega)] = 1.0;
  return p;
}

}  // namespace

OneWayLoccMap filter_map_stochastic(double theta) {
  check_filter_theta(theta);
  OneWayLoccMap m;
  CMatrix k0(2, 2);
  k0 << std::cos(theta), 0, 0, std::sin(theta);
  m.kraus = {{k0}};
  m.deterministic = false;
  m.input_policy = identity_input_policy(2, 1);
  m.output_policy.assign(2 * 2 * 2 * 1, 0.0);
  for (int xp = 0; xp < 2; ++xp)
    for (int a = 0; a < 2; ++a) m.output_policy[a + 2 * (a + 2 * xp)] = 1.0;
  return m;
}

OneWayLoccMap filter_map_deterministic(double theta) {
  check_filter_theta(theta);
  OneWayLoccMap m;
  CMatrix k0(2, 2), k1(2, 2);
  k0 << std::cos(theta), 0, 0, std::sin(theta);
  k1 << 0, std::cos(theta), std::sin(theta), 0;  // sin|1><0| + cos|0><1|
  m.kraus = {{k0}, {k1}};
  m.deterministic = true;
  m.input_policy = identity_input_policy(2, 2);
  m.output_policy.assign(2 * 2 * 2 * 2, 0.0);
  for (int omega = 0; omega < 2; ++omega)
    for (int xp = 0; xp < 2; ++xp)
      for (int a = 0; a < 2; ++a) {
        const int ap = a ^ (xp * omega) ^ omega;  // flip iff x'=0 and omega=1
        m.output_policy[ap + 2 * (a + 2 * (xp + 2 * omega))] = 1.0;
      }
  return m;
}

}  // namespace eprkit::locc
