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

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace eprkit {

using cxd = std::complex<double>;

// Dense complex matrix, row-major so that JSON round trips are bit-exact
// with respect to the stored entry order.
using CMatrix =
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace qcore {

// Default tolerance for the Hermiticity / PSD predicates below.  Every
// predicate also takes an explicit tolerance for callers that need a
// different one.
inline constexpr double kDefaultTol = 1e-9;

CMatrix identity(Eigen::Index n);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// |i><j| in dimension d.
CMatrix basis_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j);

// Largest absolute value over all entries; 0 for empty matrices.
double max_abs(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = kDefaultTol);

// Hermitian within tol and min eigenvalue >= -tol.
bool is_psd(const CMatrix& m, double tol = kDefaultTol);

// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

// (M + M^dagger)/2.  Applied to solver outputs before PSD checks, since
// iterative solvers return slightly asymmetric blocks.
CMatrix hermitize(const CMatrix& m);

// Kronecker product; dimensions multiply.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor(const std::vector<CMatrix>& factors);

// Partial trace of m over the subsystems not listed in `keep`.  `dims` are
// the subsystem dimensions (their product must equal the matrix dimension),
// `keep` holds 0-based subsystem indices and must be nonempty.
CMatrix partial_trace(const CMatrix& m, const std::vector<Eigen::Index>& dims,
                      const std::vector<int>& keep);

// Entrywise transpose, no conjugation.  Requires a square matrix.
CMatrix transpose_entrywise(const CMatrix& m);

// Embeds a Hermitian h into the real symmetric matrix
// [[Re h, -Im h], [Im h, Re h]].  The embedding is PSD iff h is PSD, every
// eigenvalue of h appears exactly twice, and the trace doubles.
RMatrix real_embed(const CMatrix& h, double tol = kDefaultTol);

// Left inverse of real_embed.  For symmetric inputs outside the embedding's
// image this is the natural projection back onto it, followed by
// hermitization; PSD inputs map to PSD outputs.
CMatrix real_unembed(const RMatrix& s);

// JSON encoding {"re": [[..]], "im": [[..]]} with row-major nested arrays.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qcore
}  // namespace eprkit
