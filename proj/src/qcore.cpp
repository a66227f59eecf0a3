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

#include "eprkit/qcore.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace eprkit::qcore {

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix basis_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  if (i < 0 || j < 0 || i >= d || j >= d)
    throw std::invalid_argument("basis_unit: index out of range");
  CMatrix m = CMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

double min_eigenvalue(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("min_eigenvalue: matrix must be square");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(m),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const CMatrix& m, double tol) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

CMatrix hermitize(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitize: matrix must be square");
  return 0.5 * (m + m.adjoint());
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix tensor(const std::vector<CMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
  CMatrix out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<Eigen::Index>& dims,
                      const std::vector<int>& keep) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("partial_trace: matrix must be square");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: bad subsystem dim");
    total *= d;
  }
  if (total != m.rows())
    throw std::invalid_argument(
        "partial_trace: subsystem dims inconsistent with matrix size");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep empty");

  const int n = static_cast<int>(dims.size());
  std::vector<char> kept(n, 0);
  for (int k : keep) {
    if (k < 0 || k >= n)
      throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = 1;
  }

  Eigen::Index keep_dim = 1, trace_dim = 1;
  for (int s = 0; s < n; ++s) (kept[s] ? keep_dim : trace_dim) *= dims[s];

  // Strides of each subsystem in the row-major composite index.
  std::vector<Eigen::Index> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  // Map every (kept multi-index, traced multi-index) pair to a flat index.
  std::vector<Eigen::Index> keep_offsets(keep_dim, 0), trace_offsets(trace_dim, 0);
  {
    std::vector<Eigen::Index> idx(n, 0);
    for (Eigen::Index c = 0; c < keep_dim; ++c) {
      Eigen::Index rem = c, off = 0;
      for (int s = n - 1; s >= 0; --s)
        if (kept[s]) {
          off += (rem % dims[s]) * stride[s];
          rem /= dims[s];
        }
      keep_offsets[c] = off;
    }
    for (Eigen::Index c = 0; c < trace_dim; ++c) {
      Eigen::Index rem = c, off = 0;
      for (int s = n - 1; s >= 0; --s)
        if (!kept[s]) {
          off += (rem % dims[s]) * stride[s];
          rem /= dims[s];
        }
      trace_offsets[c] = off;
    }
  }

  CMatrix out = CMatrix::Zero(keep_dim, keep_dim);
  for (Eigen::Index i = 0; i < keep_dim; ++i)
    for (Eigen::Index j = 0; j < keep_dim; ++j) {
      cxd acc = 0.0;
      for (Eigen::Index t = 0; t < trace_dim; ++t)
        acc += m(keep_offsets[i] + trace_offsets[t],
                 keep_offsets[j] + trace_offsets[t]);
      out(i, j) = acc;
    }
  return out;
}

CMatrix transpose_entrywise(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("transpose_entrywise: matrix must be square");
  return m.transpose();
}

RMatrix real_embed(const CMatrix& h, double tol) {
  if (!is_hermitian(h, tol))
    throw std::invalid_argument("real_embed: input is not Hermitian");
  const Eigen::Index n = h.rows();
  RMatrix s(2 * n, 2 * n);
  const auto re = h.real();
  const auto im = h.imag();
  s.topLeftCorner(n, n) = re;
  s.topRightCorner(n, n) = -im;
  s.bottomLeftCorner(n, n) = im;
  s.bottomRightCorner(n, n) = re;
  return s;
}

CMatrix real_unembed(const RMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0)
    throw std::invalid_argument("real_unembed: need an even square matrix");
  const Eigen::Index n = s.rows() / 2;
  CMatrix h(n, n);
  h.real() = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
  h.imag() = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
  return hermitize(h);
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return nlohmann::json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("matrix_from_json: expected {re, im}");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size())
    throw std::invalid_argument("matrix_from_json: re/im shape mismatch");
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(re.at(0).size()) : 0;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& rrow = re.at(i);
    const auto& irow = im.at(i);
    if (static_cast<Eigen::Index>(rrow.size()) != cols ||
        static_cast<Eigen::Index>(irow.size()) != cols)
      throw std::invalid_argument("matrix_from_json: ragged rows");
    for (Eigen::Index jx = 0; jx < cols; ++jx)
      m(i, jx) = cxd(rrow.at(jx).get<double>(), irow.at(jx).get<double>());
  }
  return m;
}

}  // namespace eprkit::qcore
