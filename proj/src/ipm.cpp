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
//
// Primal-dual interior-point method (HKM direction, Mehrotra
// predictor-corrector) for block-diagonal SDPs.  The Schur complement is
// assembled per block with coefficient-matrix memoization and solved either
// densely or through an arrow factorization that exploits constraints local
// to a single block, plus Woodbury updates for scalar variables coupled to
// every constraint (the slack variable of feasibility reformulations).

#include "ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>

namespace eprkit::sdp::ipm {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BlockIncidence {
  std::vector<int> rows;       // constraint index per incidence
  std::vector<int> local;      // index into pools[] per incidence
  std::vector<int> pools;      // distinct pool ids used by this block
};

enum class BlockClass { Pair, DiagTiny, WideTiny };

// Assembled per iteration; solved via dense LDLT or the arrow factorization.
class SchurSolver {
 public:
  virtual ~SchurSolver() = default;
  virtual void reset() = 0;
  virtual void add(int k, int l, double v) = 0;  // any order, unordered pair
  virtual bool factor() = 0;
  virtual VectorXd solve(const VectorXd& rhs) const = 0;
};

class DenseSchur final : public SchurSolver {
 public:
  explicit DenseSchur(int m) : m_(m), S_(m, m) {}
  void reset() override { S_.setZero(); ranks_.clear(); }
  void add(int k, int l, double v) override {
    if (k <= l) S_(k, l) += v; else S_(l, k) += v;
  }
  void addRankOne(const VectorXd& u, double w) { ranks_.push_back({u, w}); }
  bool factor() override {
    MatrixXd full = S_.selfadjointView<Eigen::Upper>();
    for (const auto& [u, w] : ranks_) full.selfadjointView<Eigen::Lower>().rankUpdate(u, w);
    const double scale = std::max(1.0, full.diagonal().cwiseAbs().maxCoeff());
    for (double reg : {0.0, 1e-12, 1e-10, 1e-8}) {
      MatrixXd reged = full;
      reged.diagonal().array() += reg * scale;
      ldlt_.compute(reged);
      if (ldlt_.info() == Eigen::Success && ldlt_.isPositive()) return true;
    }
    return false;
  }
  VectorXd solve(const VectorXd& rhs) const override { return ldlt_.solve(rhs); }

 private:
  int m_;
  MatrixXd S_;
  std::vector<std::pair<VectorXd, double>> ranks_;
  Eigen::LDLT<MatrixXd> ldlt_;
};

// Arrow structure: local rows touch exactly one "home" block (plus scalar
// slacks), global rows couple many blocks.  S then factors by eliminating
// per-group diagonal blocks first and solving a small dense system on the
// global rows; scalar variables shared by every row enter as rank-one
// Woodbury corrections.
class ArrowSchur final : public SchurSolver {
 public:
  ArrowSchur(int m, std::vector<int> group_of_row, std::vector<int> local_index,
             std::vector<int> global_index, std::vector<int> group_sizes,
             int n_global)
      : m_(m),
        group_of_row_(std::move(group_of_row)),
        local_index_(std::move(local_index)),
        global_index_(std::move(global_index)),
        n_global_(n_global) {
    for (int sz : group_sizes) {
      D_.emplace_back(MatrixXd::Zero(sz, sz));
      B_.emplace_back(MatrixXd::Zero(sz, n_global_));
    }
    C_.setZero(n_global_, n_global_);
  }

  void reset() override {
    for (auto& d : D_) d.setZero();
    for (auto& b : B_) b.setZero();
    C_.setZero();
    wood_.clear();
  }

  void add(int k, int l, double v) override {
    const int gk = group_of_row_[k], gl = group_of_row_[l];
    if (gk >= 0 && gl >= 0) {
      // same group by construction
      int a = local_index_[k], b = local_index_[l];
      if (a <= b) D_[gk](a, b) += v; else D_[gk](b, a) += v;
    } else if (gk >= 0) {
      B_[gk](local_index_[k], global_index_[l]) += v;
    } else if (gl >= 0) {
      B_[gl](local_index_[l], global_index_[k]) += v;
    } else {
      int a = global_index_[k], b = global_index_[l];
      if (a <= b) C_(a, b) += v; else C_(b, a) += v;
    }
  }

  void addRankOne(const VectorXd& u, double w) { wood_.push_back({u, w}); }

  bool factor() {
    const int G = n_global_;
    MatrixXd Cfull = C_.selfadjointView<Eigen::Upper>();
    dinv_.clear();
    E_.clear();
    for (size_t g = 0; g < D_.size(); ++g) {
      MatrixXd Dfull = D_[g].selfadjointView<Eigen::Upper>();
      const double scale = std::max(1.0, Dfull.diagonal().cwiseAbs().maxCoeff());
      Eigen::LLT<MatrixXd> llt;
      bool ok = false;
      for (double reg : {0.0, 1e-12, 1e-10, 1e-8}) {
        MatrixXd reged = Dfull;
        reged.diagonal().array() += reg * scale;
        llt.compute(reged);
        if (llt.info() == Eigen::Success) { ok = true; break; }
      }
      if (!ok) return false;
      dinv_.push_back(llt);
      E_.push_back(llt.solve(B_[g]));
      Cfull.noalias() -= B_[g].transpose() * E_.back();
    }
    const double cscale = G > 0 ? std::max(1.0, Cfull.diagonal().cwiseAbs().maxCoeff()) : 1.0;
    bool ok = false;
    for (double reg : {0.0, 1e-12, 1e-10, 1e-8}) {
      MatrixXd reged = Cfull;
      reged.diagonal().array() += reg * cscale;
      cldlt_.compute(reged);
      if (cldlt_.info() == Eigen::Success && (G == 0 || cldlt_.isPositive())) { ok = true; break; }
    }
    if (!ok) return false;

    // Woodbury: S = S0 + U diag(w) U^T with S0 the arrow part.
    const int K = static_cast<int>(wood_.size());
    if (K > 0) {
      SinvU_.resize(m_, K);
      MatrixXd small(K, K);
      for (int c = 0; c < K; ++c) SinvU_.col(c) = arrowSolve(wood_[c].first);
      for (int r = 0; r < K; ++r)
        for (int c = 0; c < K; ++c)
          small(r, c) = (r == c ? 1.0 / wood_[r].second : 0.0) +
                        wood_[r].first.dot(SinvU_.col(c));
      wldlt_.compute(small);
      if (wldlt_.info() != Eigen::Success) return false;
    }
    return true;
  }

  VectorXd solve(const VectorXd& rhs) const override {
    VectorXd u = arrowSolve(rhs);
    const int K = static_cast<int>(wood_.size());
    if (K > 0) {
      VectorXd utr(K);
      for (int c = 0; c < K; ++c) utr(c) = wood_[c].first.dot(u);
      u.noalias() -= SinvU_ * wldlt_.solve(utr);
    }
    return u;
  }

 private:
  VectorXd arrowSolve(const VectorXd& rhs) const {
    const size_t ngroups = D_.size();
    std::vector<VectorXd> vg(ngroups);
    VectorXd vG(n_global_);
    for (int k = 0; k < m_; ++k) {
      if (group_of_row_[k] < 0) vG(global_index_[k]) = rhs(k);
    }
    for (size_t g = 0; g < ngroups; ++g) vg[g].setZero(D_[g].rows());
    for (int k = 0; k < m_; ++k)
      if (group_of_row_[k] >= 0) vg[group_of_row_[k]](local_index_[k]) = rhs(k);

    VectorXd wG = vG;
    std::vector<VectorXd> tg(ngroups);
    for (size_t g = 0; g < ngroups; ++g) {
      tg[g] = dinv_[g].solve(vg[g]);
      wG.noalias() -= B_[g].transpose() * tg[g];
    }
    VectorXd uG = cldlt_.solve(wG);
    VectorXd out(m_);
    for (int k = 0; k < m_; ++k) {
      const int g = group_of_row_[k];
      if (g < 0) {
        out(k) = uG(global_index_[k]);
      } else {
        out(k) = tg[g](local_index_[k]) - E_[g].row(local_index_[k]).dot(uG);
      }
    }
    return out;
  }

  int m_;
  std::vector<int> group_of_row_, local_index_, global_index_;
  int n_global_;
  std::vector<MatrixXd> D_, B_;
  MatrixXd C_;
  std::vector<Eigen::LLT<MatrixXd>> dinv_;
  std::vector<MatrixXd> E_;
  Eigen::LDLT<MatrixXd> cldlt_;
  std::vector<std::pair<VectorXd, double>> wood_;
  MatrixXd SinvU_;
  Eigen::LDLT<MatrixXd> wldlt_;
};

struct Workspace {
  const IpmProblem& p;
  int nblocks;
  int m;
  Eigen::Index total_dim = 0;
  std::vector<BlockIncidence> inc;
  std::vector<BlockClass> cls;
  std::vector<MatrixXd> C;  // objective per block

  // arrow classification
  bool arrow = false;
  std::vector<int> group_of_row, local_index, global_index, group_sizes;
  int n_global = 0;

  explicit Workspace(const IpmProblem& prob) : p(prob) {
    nblocks = static_cast<int>(p.block_dims.size());
    m = static_cast<int>(p.rows.size());
    inc.resize(nblocks);
    for (int k = 0; k < m; ++k)
      for (const Entry& e : p.rows[k]) {
        auto& bi = inc[e.block];
        int local = -1;
        for (size_t q = 0; q < bi.pools.size(); ++q)
          if (bi.pools[q] == e.pool) { local = static_cast<int>(q); break; }
        if (local < 0) {
          local = static_cast<int>(bi.pools.size());
          bi.pools.push_back(e.pool);
        }
        bi.rows.push_back(k);
        bi.local.push_back(local);
      }
    for (int d : p.block_dims) total_dim += d;

    cls.resize(nblocks);
    for (int j = 0; j < nblocks; ++j) {
      const bool tiny = p.block_dims[j] <= 2;
      const size_t support = inc[j].rows.size();
      if (tiny && support == 1) cls[j] = BlockClass::DiagTiny;
      else if (tiny && support > 8) cls[j] = BlockClass::WideTiny;
      else cls[j] = BlockClass::Pair;
    }

    C.assign(nblocks, MatrixXd());
    for (int j = 0; j < nblocks; ++j) C[j] = MatrixXd::Zero(p.block_dims[j], p.block_dims[j]);
    for (const Entry& e : p.objective) C[e.block] += p.pool[e.pool];
  }

  void classifyArrow() {
    arrow = true;
    group_of_row.assign(m, -1);
    local_index.assign(m, -1);
    global_index.assign(m, -1);
    group_sizes.clear();
    // Home block per row: the unique non-tiny Pair block it touches.
    std::vector<int> home(m, -1);
    std::vector<char> global(m, 0);
    for (int k = 0; k < m; ++k) {
      int h = -1;
      bool multi = false;
      for (const Entry& e : p.rows[k]) {
        if (cls[e.block] == BlockClass::Pair && p.block_dims[e.block] > 2) {
          if (h < 0) h = e.block;
          else if (h != e.block) multi = true;
        }
        // medium tiny pair blocks can couple arbitrary rows: force global
        if (cls[e.block] == BlockClass::Pair && p.block_dims[e.block] <= 2)
          multi = true;
      }
      if (h < 0 || multi) global[k] = 1;
      else home[k] = h;
    }
    std::vector<int> group_of_block(nblocks, -1);
    for (int k = 0; k < m; ++k) {
      if (global[k]) {
        global_index[k] = n_global++;
        continue;
      }
      int g = group_of_block[home[k]];
      if (g < 0) {
        g = static_cast<int>(group_sizes.size());
        group_of_block[home[k]] = g;
        group_sizes.push_back(0);
      }
      group_of_row[k] = g;
      local_index[k] = group_sizes[g]++;
    }
  }
};

double blockDot(const MatrixXd& a, const MatrixXd& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace

IpmResult run_ipm(const IpmProblem& p, const IpmSettings& s) {
  IpmResult res;
  Workspace ws(p);
  const int nb = ws.nblocks, m = ws.m;
  if (nb == 0) {
    res.message = "no blocks";
    return res;
  }

  bool useArrow = s.schur_mode == SchurMode::Arrow ||
                  (s.schur_mode == SchurMode::Auto && m > s.dense_constraint_limit);
  std::unique_ptr<DenseSchur> dense;
  std::unique_ptr<ArrowSchur> arrow;
  SchurSolver* schur = nullptr;
  if (useArrow) {
    ws.classifyArrow();
    arrow = std::make_unique<ArrowSchur>(m, ws.group_of_row, ws.local_index,
                                         ws.global_index, ws.group_sizes, ws.n_global);
    schur = arrow.get();
  } else {
    dense = std::make_unique<DenseSchur>(m);
    schur = dense.get();
  }

  // Data norms for scale-aware starting point and stopping tests.
  double maxb = 0.0, maxA = 0.0, maxC = 0.0;
  for (double v : p.b) maxb = std::max(maxb, std::abs(v));
  for (const auto& mat : p.pool) maxA = std::max(maxA, mat.cwiseAbs().maxCoeff());
  for (int j = 0; j < nb; ++j)
    if (ws.C[j].size() > 0) maxC = std::max(maxC, ws.C[j].cwiseAbs().maxCoeff());

  const double xi = std::max({10.0, std::sqrt(double(ws.total_dim)), 10.0 * maxb});
  const double zeta = std::max({10.0, std::sqrt(double(ws.total_dim)), maxA + maxC});

  std::vector<MatrixXd> X(nb), Z(nb), Zinv(nb), Rd(nb), ATy(nb);
  std::vector<Eigen::LLT<MatrixXd>> lltX(nb), lltZ(nb);
  for (int j = 0; j < nb; ++j) {
    X[j] = xi * MatrixXd::Identity(p.block_dims[j], p.block_dims[j]);
    Z[j] = zeta * MatrixXd::Identity(p.block_dims[j], p.block_dims[j]);
  }
  VectorXd y = VectorXd::Zero(m);
  VectorXd b = Eigen::Map<const VectorXd>(p.b.data(), m);

  // Per-row sums of tr(A_k M_j) over each row's blocks, memoized per
  // distinct coefficient matrix within a block.
  std::vector<double> dotbuf;
  auto rowDots = [&](const std::vector<MatrixXd>& M, VectorXd& out) {
    out.setZero(m);
    for (int j = 0; j < nb; ++j) {
      const auto& bi = ws.inc[j];
      if (bi.rows.empty()) continue;
      dotbuf.assign(bi.pools.size(), 0.0);
      for (size_t q = 0; q < bi.pools.size(); ++q)
        dotbuf[q] = blockDot(p.pool[bi.pools[q]], M[j]);
      for (size_t i = 0; i < bi.rows.size(); ++i)
        out(bi.rows[i]) += dotbuf[bi.local[i]];
    }
  };

  // out_j = sum_k v_k A_{k,j}, accumulated per distinct coefficient.
  auto adjoint = [&](const VectorXd& v, std::vector<MatrixXd>& out) {
    for (int j = 0; j < nb; ++j) {
      out[j].setZero(p.block_dims[j], p.block_dims[j]);
      const auto& bi = ws.inc[j];
      if (bi.rows.empty()) continue;
      dotbuf.assign(bi.pools.size(), 0.0);
      for (size_t i = 0; i < bi.rows.size(); ++i)
        dotbuf[bi.local[i]] += v(bi.rows[i]);
      for (size_t q = 0; q < bi.pools.size(); ++q)
        if (dotbuf[q] != 0.0) out[j].noalias() += dotbuf[q] * p.pool[bi.pools[q]];
    }
  };

  auto maxStep = [&](const std::vector<Eigen::LLT<MatrixXd>>& llt,
                     const std::vector<MatrixXd>& D) {
    double alpha = kInf;
    for (int j = 0; j < nb; ++j) {
      const auto L = llt[j].matrixL();
      MatrixXd T = L.solve(D[j]);
      MatrixXd M = L.solve(T.transpose());
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (M + M.transpose()),
                                                 Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      if (lmin < -1e-14) alpha = std::min(alpha, -1.0 / lmin);
    }
    return alpha;
  };

  // Schur assembly from per-block contributions tr(A_k X A_l Z^{-1}).
  std::vector<MatrixXd> H;        // per distinct pool within a block
  MatrixXd dots;                  // symmetrized pairwise table
  auto assembleSchur = [&]() {
    schur->reset();
    for (int j = 0; j < nb; ++j) {
      const auto& bi = ws.inc[j];
      if (bi.rows.empty()) continue;
      if (ws.cls[j] == BlockClass::WideTiny) {
        // coefficients on embedded scalars are multiples of I
        VectorXd u = VectorXd::Zero(m);
        for (size_t i = 0; i < bi.rows.size(); ++i)
          u(bi.rows[i]) += p.pool[bi.pools[bi.local[i]]](0, 0);
        const double w = blockDot(X[j], Zinv[j]);
        if (useArrow) arrow->addRankOne(u, w); else dense->addRankOne(u, w);
        continue;
      }
      const size_t np = bi.pools.size();
      H.resize(np);
      for (size_t q = 0; q < np; ++q)
        H[q].noalias() = X[j] * p.pool[bi.pools[q]] * Zinv[j];
      dots.setZero(np, np);
      for (size_t q1 = 0; q1 < np; ++q1)
        for (size_t q2 = 0; q2 < np; ++q2)
          dots(q1, q2) = blockDot(p.pool[bi.pools[q1]], H[q2]);
      dots = 0.5 * (dots + dots.transpose()).eval();
      if (ws.cls[j] == BlockClass::DiagTiny) {
        schur->add(bi.rows[0], bi.rows[0], dots(bi.local[0], bi.local[0]));
        continue;
      }
      const size_t n = bi.rows.size();
      for (size_t i1 = 0; i1 < n; ++i1)
        for (size_t i2 = i1; i2 < n; ++i2)
          schur->add(bi.rows[i1], bi.rows[i2], dots(bi.local[i1], bi.local[i2]));
    }
  };

  std::vector<MatrixXd> dZ(nb), dX(nb), dZa(nb), dXa(nb), Mtmp(nb), CorrZinv(nb);
  for (int j = 0; j < nb; ++j) Mtmp[j].resize(p.block_dims[j], p.block_dims[j]);
  VectorXd zinvDots(m), xrdzDots(m), corrDots(m), ax(m), rhs(m), dy(m), dya(m);

  auto newtonStep = [&](double tau, bool withCorr, VectorXd& dy_out,
                        std::vector<MatrixXd>& dZ_out, std::vector<MatrixXd>& dX_out) {
    rhs = b - tau * zinvDots + xrdzDots;
    if (withCorr) rhs += corrDots;
    dy_out = schur->solve(rhs);
    adjoint(dy_out, ATy);  // reuse buffer for sum_k dy_k A_k
    for (int j = 0; j < nb; ++j) {
      dZ_out[j] = Rd[j] - ATy[j];
      Mtmp[j].noalias() = X[j] * dZ_out[j] * Zinv[j];
      dX_out[j] = tau * Zinv[j] - X[j] - Mtmp[j];
      if (withCorr) dX_out[j] -= CorrZinv[j];
      dX_out[j] = 0.5 * (dX_out[j] + dX_out[j].transpose()).eval();
    }
  };

  double pinf = kInf, dinf = kInf, gap = kInf, pobj = 0, dobj = 0;
  int it = 0;
  std::string message = "iteration limit reached";

  // Near mu ~ 1e-16 the Schur system is ill-conditioned enough that the
  // residuals can regress; keep the best iterate seen and return it.
  struct Snapshot {
    double merit = kInf;
    std::vector<MatrixXd> X;
    VectorXd y;
    double pobj = 0, dobj = 0, pinf = kInf, dinf = kInf, gap = kInf;
  } best;
  int stale = 0;

  for (it = 0; it < s.max_iterations; ++it) {
    bool factored = true;
    for (int j = 0; j < nb; ++j) {
      lltZ[j].compute(Z[j]);
      lltX[j].compute(X[j]);
      if (lltZ[j].info() != Eigen::Success || lltX[j].info() != Eigen::Success) {
        factored = false;
        break;
      }
      Zinv[j] = lltZ[j].solve(MatrixXd::Identity(p.block_dims[j], p.block_dims[j]));
      Zinv[j] = 0.5 * (Zinv[j] + Zinv[j].transpose()).eval();
    }
    if (!factored) {
      message = "iterate left the cone";
      break;
    }

    double mu = 0.0;
    for (int j = 0; j < nb; ++j) mu += blockDot(X[j], Z[j]);
    mu /= double(ws.total_dim);

    adjoint(y, ATy);
    dinf = 0.0;
    for (int j = 0; j < nb; ++j) {
      Rd[j] = ws.C[j] - Z[j] - ATy[j];
      dinf = std::max(dinf, Rd[j].cwiseAbs().maxCoeff());
    }
    dinf /= 1.0 + maxC;
    rowDots(X, ax);
    pinf = (b - ax).cwiseAbs().maxCoeff() / (1.0 + maxb);
    pobj = 0.0;
    for (int j = 0; j < nb; ++j) pobj += blockDot(ws.C[j], X[j]);
    dobj = b.dot(y);
    gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (s.verbose)
      std::fprintf(stderr, "ipm it %3d  mu %.3e  pinf %.3e  dinf %.3e  gap %.3e\n",
                   it, mu, pinf, dinf, gap);

    const double merit = std::max({pinf, dinf, gap});
    if (merit < best.merit) {
      best = {merit, X, y, pobj, dobj, pinf, dinf, gap};
      stale = 0;
    } else if (++stale >= 8) {
      message = "stalled without further progress";
      break;
    }
    if (pinf <= s.tol && dinf <= s.tol && gap <= s.tol) {
      res.converged = true;
      message = "converged";
      break;
    }
    if (mu < 1e-17) {
      message = "barrier parameter exhausted";
      break;
    }

    assembleSchur();
    if (!schur->factor()) {
      message = "Schur complement factorization failed";
      break;
    }
    rowDots(Zinv, zinvDots);
    for (int j = 0; j < nb; ++j) Mtmp[j].noalias() = X[j] * Rd[j] * Zinv[j];
    rowDots(Mtmp, xrdzDots);

    // predictor
    newtonStep(0.0, false, dya, dZa, dXa);
    const double apa = std::min(1.0, maxStep(lltX, dXa));
    const double ada = std::min(1.0, maxStep(lltZ, dZa));
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j)
      mu_aff += blockDot(X[j] + apa * dXa[j], Z[j] + ada * dZa[j]);
    mu_aff = std::max(0.0, mu_aff / double(ws.total_dim));
    double sigma = std::pow(mu_aff / mu, 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // corrector
    for (int j = 0; j < nb; ++j) CorrZinv[j].noalias() = dXa[j] * dZa[j] * Zinv[j];
    rowDots(CorrZinv, corrDots);
    newtonStep(sigma * mu, true, dy, dZ, dX);

    double gamma = 0.9 + 0.09 * std::min(apa, ada);
    if (mu < 1e-6) gamma = std::max(gamma, 0.98);
    const double ap = std::min(1.0, gamma * maxStep(lltX, dX));
    const double ad = std::min(1.0, gamma * maxStep(lltZ, dZ));
    if (ap < 1e-10 && ad < 1e-10) {
      message = "step sizes vanished";
      break;
    }

    bool finite = true;
    for (int j = 0; j < nb; ++j) {
      X[j] += ap * dX[j];
      Z[j] += ad * dZ[j];
      X[j] = 0.5 * (X[j] + X[j].transpose()).eval();
      Z[j] = 0.5 * (Z[j] + Z[j].transpose()).eval();
      finite = finite && X[j].allFinite() && Z[j].allFinite();
    }
    y += ad * dy;
    if (!finite || !y.allFinite()) {
      message = "non-finite iterate";
      break;
    }
  }

  if (!res.converged && best.merit < std::max({pinf, dinf, gap})) {
    X = std::move(best.X);
    y = std::move(best.y);
    pobj = best.pobj;
    dobj = best.dobj;
    pinf = best.pinf;
    dinf = best.dinf;
    gap = best.gap;
  }
  res.message = message;
  res.X = std::move(X);
  res.y.assign(y.data(), y.data() + m);
  res.primal_objective = pobj;
  res.dual_objective = dobj;
  res.primal_infeasibility = pinf;
  res.dual_infeasibility = dinf;
  res.gap = gap;
  res.iterations = it;
  return res;
}

}  // namespace eprkit::sdp::ipm
