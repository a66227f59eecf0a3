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

#include "eprkit/assemblage.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace eprkit {
namespace {

int tuple_index(const std::vector<int>& tuple, const std::vector<int>& radices) {
  if (tuple.size() != radices.size())
    throw std::invalid_argument("tuple arity mismatch");
  int idx = 0;
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= radices[i])
      throw std::invalid_argument("tuple entry out of range");
    idx = idx * radices[i] + tuple[i];
  }
  return idx;
}

std::vector<int> index_tuple(int index, const std::vector<int>& radices) {
  std::vector<int> t(radices.size(), 0);
  for (size_t i = radices.size(); i-- > 0;) {
    t[i] = index % radices[i];
    index /= radices[i];
  }
  if (index != 0) throw std::invalid_argument("tuple index out of range");
  return t;
}

int product(const std::vector<int>& v) {
  int p = 1;
  for (int x : v) p *= x;
  return p;
}

}  // namespace

int Scenario::input_count() const { return product(n_inputs); }
int Scenario::output_count() const { return product(n_outputs); }

int Scenario::input_index(const std::vector<int>& xs) const {
  return tuple_index(xs, n_inputs);
}
int Scenario::output_index(const std::vector<int>& as) const {
  return tuple_index(as, n_outputs);
}
std::vector<int> Scenario::input_tuple(int index) const {
  return index_tuple(index, n_inputs);
}
std::vector<int> Scenario::output_tuple(int index) const {
  return index_tuple(index, n_outputs);
}

void Scenario::check() const {
  if (n_alices < 1) throw std::invalid_argument("Scenario: need at least one Alice");
  if (static_cast<int>(n_inputs.size()) != n_alices ||
      static_cast<int>(n_outputs.size()) != n_alices)
    throw std::invalid_argument("Scenario: cardinality lists must have one entry per Alice");
  for (int c : n_inputs)
    if (c < 1) throw std::invalid_argument("Scenario: input cardinality < 1");
  for (int c : n_outputs)
    if (c < 1) throw std::invalid_argument("Scenario: output cardinality < 1");
  if (bob_dim < 1) throw std::invalid_argument("Scenario: bob_dim < 1");
}

Scenario Scenario::uniform(int n_alices, int n_inputs, int n_outputs,
                           Eigen::Index bob_dim) {
  Scenario s;
  s.n_alices = n_alices;
  s.n_inputs.assign(n_alices, n_inputs);
  s.n_outputs.assign(n_alices, n_outputs);
  s.bob_dim = bob_dim;
  s.check();
  return s;
}

void Povm::check(double tol) const {
  if (effects.empty()) throw std::invalid_argument("Povm: no effects");
  const Eigen::Index d = effects.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& e : effects) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("Povm: effect dimension mismatch");
    if (!qcore::is_psd(e, tol))
      throw std::invalid_argument("Povm: effect is not PSD");
    sum += e;
  }
  if (qcore::max_abs(sum - CMatrix::Identity(d, d)) > tol)
    throw std::invalid_argument("Povm: effects do not sum to the identity");
}

Assemblage::Assemblage(Scenario scenario, std::vector<CMatrix> elements)
    : scenario_(std::move(scenario)), elements_(std::move(elements)) {
  scenario_.check();
  const size_t expected = static_cast<size_t>(scenario_.output_count()) *
                          static_cast<size_t>(scenario_.input_count());
  if (elements_.size() != expected)
    throw std::invalid_argument("Assemblage: element count mismatch");
  for (const auto& e : elements_)
    if (e.rows() != scenario_.bob_dim || e.cols() != scenario_.bob_dim)
      throw std::invalid_argument("Assemblage: element dimension mismatch");
}

const CMatrix& Assemblage::at(int a_index, int x_index) const {
  if (a_index < 0 || a_index >= scenario_.output_count() || x_index < 0 ||
      x_index >= scenario_.input_count())
    throw std::out_of_range("Assemblage::at: index out of range");
  return elements_[a_index + scenario_.output_count() * x_index];
}

const CMatrix& Assemblage::at(const std::vector<int>& as,
                              const std::vector<int>& xs) const {
  return at(scenario_.output_index(as), scenario_.input_index(xs));
}

CMatrix Assemblage::marginal(int x_index) const {
  CMatrix sum = CMatrix::Zero(scenario_.bob_dim, scenario_.bob_dim);
  for (int a = 0; a < scenario_.output_count(); ++a) sum += at(a, x_index);
  return sum;
}

Assemblage realize_multipartite(
    const CMatrix& rho, const std::vector<std::vector<Povm>>& povms_per_alice,
    Eigen::Index bob_dim, double tol) {
  const int k = static_cast<int>(povms_per_alice.size());
  if (k < 1) throw std::invalid_argument("realize_multipartite: need at least one Alice");

  Scenario sc;
  sc.n_alices = k;
  sc.bob_dim = bob_dim;
  std::vector<Eigen::Index> alice_dims;
  for (const auto& povms : povms_per_alice) {
    if (povms.empty())
      throw std::invalid_argument("realize_multipartite: Alice with no measurements");
    const int n_out = static_cast<int>(povms.front().effects.size());
    const Eigen::Index da = povms.front().effects.front().rows();
    for (const auto& p : povms) {
      p.check(tol);
      if (static_cast<int>(p.effects.size()) != n_out)
        throw std::invalid_argument("realize_multipartite: uneven outcome counts");
      if (p.effects.front().rows() != da)
        throw std::invalid_argument("realize_multipartite: uneven Alice dimensions");
    }
    sc.n_inputs.push_back(static_cast<int>(povms.size()));
    sc.n_outputs.push_back(n_out);
    alice_dims.push_back(da);
  }
  sc.check();

  Eigen::Index total = bob_dim;
  for (auto d : alice_dims) total *= d;
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("realize_multipartite: state dimension mismatch");
  if (!qcore::is_psd(rho, tol))
    throw std::invalid_argument("realize_multipartite: state is not PSD");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw std::invalid_argument("realize_multipartite: state trace is not 1");

  std::vector<Eigen::Index> dims = alice_dims;
  dims.push_back(bob_dim);
  const std::vector<int> keep{k};  // Bob is the last subsystem

  std::vector<CMatrix> elements(
      static_cast<size_t>(sc.output_count()) * sc.input_count());
  for (int xi = 0; xi < sc.input_count(); ++xi) {
    const auto xs = sc.input_tuple(xi);
    for (int ai = 0; ai < sc.output_count(); ++ai) {
      const auto as = sc.output_tuple(ai);
      std::vector<CMatrix> factors;
      factors.reserve(k + 1);
      for (int i = 0; i < k; ++i)
        factors.push_back(povms_per_alice[i][xs[i]].effects[as[i]]);
      factors.push_back(CMatrix::Identity(bob_dim, bob_dim));
      const CMatrix op = qcore::tensor(factors) * rho;
      elements[ai + sc.output_count() * xi] = qcore::partial_trace(op, dims, keep);
    }
  }
  return Assemblage(sc, std::move(elements));
}

Assemblage realize_bipartite(const CMatrix& rho, const std::vector<Povm>& povms,
                             Eigen::Index bob_dim, double tol) {
  return realize_multipartite(rho, {povms}, bob_dim, tol);
}

Povm family_measurement(int x) {
  if (x != 0 && x != 1)
    throw std::invalid_argument("family_measurement: input must be 0 or 1");
  const CMatrix basis = x == 0 ? qcore::pauli_z() : qcore::pauli_x();
  const CMatrix id = CMatrix::Identity(2, 2);
  return Povm{{0.5 * (id + basis), 0.5 * (id - basis)}};
}

Assemblage family_GHZ(int n_parties, double theta) {
  if (n_parties < 2)
    throw std::invalid_argument("family_GHZ: need at least two parties");
  // accept short decimal spellings of pi/4 from the command line
  if (theta > M_PI / 4 && theta < M_PI / 4 + 1e-4) theta = M_PI / 4;
  if (!(theta > 0.0) || theta > M_PI / 4)
    throw std::invalid_argument("family_GHZ: theta must lie in (0, pi/4]");
  const int k = n_parties - 1;
  const Eigen::Index dim = Eigen::Index(1) << n_parties;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = std::cos(theta);
  psi(dim - 1) = std::sin(theta);
  CMatrix rho = psi * psi.adjoint();
  std::vector<std::vector<Povm>> povms(
      k, {family_measurement(0), family_measurement(1)});
  return realize_multipartite(rho, povms, 2);
}

Assemblage family_S(double theta, double p) {
  if (theta > M_PI / 4 && theta < M_PI / 4 + 1e-4) theta = M_PI / 4;
  if (!(theta > 0.0) || theta > M_PI / 4)
    throw std::invalid_argument("family_S: theta must lie in (0, pi/4]");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("family_S: p must lie in [0, 1]");
  const Assemblage pure = family_GHZ(2, theta);
  std::vector<CMatrix> elements = pure.elements();
  const CMatrix noise = CMatrix::Identity(2, 2) / 4.0;
  for (auto& e : elements) e = p * e + (1.0 - p) * noise;
  return Assemblage(pure.scenario(), std::move(elements));
}

double ValidationReport::max_deviation() const {
  double m = 0.0;
  for (const auto& i : issues) m = std::max(m, i.deviation);
  return m;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (const auto& i : issues) {
    switch (i.kind) {
      case ValidationIssue::Kind::NotPsd: os << "not-psd"; break;
      case ValidationIssue::Kind::Normalization: os << "normalization"; break;
      case ValidationIssue::Kind::NoSignaling: os << "no-signaling"; break;
    }
    os << ": " << i.detail << " (deviation " << i.deviation << ")\n";
  }
  return os.str();
}

ValidationReport validate(const Assemblage& a, double tol) {
  ValidationReport report;
  const Scenario& sc = a.scenario();

  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o) {
      const CMatrix& e = a.at(o, x);
      const double herm_dev = qcore::max_abs(e - e.adjoint());
      const double min_eig = qcore::min_eigenvalue(e);
      if (herm_dev > tol || min_eig < -tol) {
        std::ostringstream os;
        os << "element a=" << o << " x=" << x;
        report.issues.push_back({ValidationIssue::Kind::NotPsd, os.str(),
                                 std::max(herm_dev, std::max(0.0, -min_eig))});
      }
    }

  for (int x = 0; x < sc.input_count(); ++x) {
    double total = 0.0;
    for (int o = 0; o < sc.output_count(); ++o) total += a.at(o, x).trace().real();
    if (std::abs(total - 1.0) > tol) {
      std::ostringstream os;
      os << "sum of traces for x=" << x << " is " << total;
      report.issues.push_back({ValidationIssue::Kind::Normalization, os.str(),
                               std::abs(total - 1.0)});
    }
  }

  // No-signaling to Bob: the marginal over any one Alice's outcome must not
  // depend on that Alice's input, for every joint outcome of the others.
  // This implies that the total marginal is input-independent.
  for (int i = 0; i < sc.n_alices; ++i) {
    Scenario rest = sc;
    rest.n_inputs.erase(rest.n_inputs.begin() + i);
    rest.n_outputs.erase(rest.n_outputs.begin() + i);
    rest.n_alices -= 1;
    if (rest.n_alices == 0) {
      rest.n_alices = 1;
      rest.n_inputs = {1};
      rest.n_outputs = {1};
    }
    const bool others = sc.n_alices > 1;
    const int rest_in = others ? rest.input_count() : 1;
    const int rest_out = others ? rest.output_count() : 1;
    for (int xr = 0; xr < rest_in; ++xr)
      for (int ar = 0; ar < rest_out; ++ar) {
        CMatrix reference;
        for (int xi = 0; xi < sc.n_inputs[i]; ++xi) {
          CMatrix sum = CMatrix::Zero(sc.bob_dim, sc.bob_dim);
          for (int ai = 0; ai < sc.n_outputs[i]; ++ai) {
            std::vector<int> xs = others ? rest.input_tuple(xr) : std::vector<int>{};
            std::vector<int> as = others ? rest.output_tuple(ar) : std::vector<int>{};
            xs.insert(xs.begin() + i, xi);
            as.insert(as.begin() + i, ai);
            sum += a.at(as, xs);
          }
          if (xi == 0) {
            reference = sum;
          } else {
            const double dev = qcore::max_abs(sum - reference);
            if (dev > tol) {
              std::ostringstream os;
              os << "marginal over Alice " << (i + 1)
                 << " depends on her input (rest outcome " << ar
                 << ", rest input " << xr << ")";
              report.issues.push_back(
                  {ValidationIssue::Kind::NoSignaling, os.str(), dev});
            }
          }
        }
      }
  }
  return report;
}

nlohmann::json assemblage_to_json(const Assemblage& a) {
  const Scenario& sc = a.scenario();
  nlohmann::json j;
  j["scenario"] = {{"n_alices", sc.n_alices},
                   {"n_inputs", sc.n_inputs},
                   {"n_outputs", sc.n_outputs},
                   {"bob_dim", sc.bob_dim}};
  nlohmann::json elems = nlohmann::json::array();
  for (int x = 0; x < sc.input_count(); ++x)
    for (int o = 0; o < sc.output_count(); ++o)
      elems.push_back({{"a", sc.output_tuple(o)},
                       {"x", sc.input_tuple(x)},
                       {"matrix", qcore::matrix_to_json(a.at(o, x))}});
  j["elements"] = std::move(elems);
  return j;
}

Assemblage assemblage_from_json(const nlohmann::json& j) {
  Scenario sc;
  const auto& js = j.at("scenario");
  sc.n_alices = js.at("n_alices").get<int>();
  sc.n_inputs = js.at("n_inputs").get<std::vector<int>>();
  sc.n_outputs = js.at("n_outputs").get<std::vector<int>>();
  sc.bob_dim = js.at("bob_dim").get<Eigen::Index>();
  sc.check();

  const size_t expected = static_cast<size_t>(sc.output_count()) *
                          static_cast<size_t>(sc.input_count());
  std::vector<CMatrix> elements(expected);
  std::vector<char> seen(expected, 0);
  for (const auto& e : j.at("elements")) {
    const auto as = e.at("a").get<std::vector<int>>();
    const auto xs = e.at("x").get<std::vector<int>>();
    const int idx = sc.output_index(as) + sc.output_count() * sc.input_index(xs);
    if (seen[idx]) throw std::invalid_argument("assemblage_from_json: duplicate element");
    seen[idx] = 1;
    elements[idx] = qcore::matrix_from_json(e.at("matrix"));
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("assemblage_from_json: missing element");
  return Assemblage(sc, std::move(elements));
}

}  // namespace eprkit
