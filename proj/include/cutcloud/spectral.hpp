// Walk-matrix eigendecomposition, the tau-projector, and the isotropic
// embedding b_i = sqrt(n) * a_i with AA^T equal to the projector.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "cutcloud/common.hpp"
#include "cutcloud/graph.hpp"

namespace cutcloud {

struct SpectralEmbedding {
  Eigen::MatrixXd b;            // n x k, rows are the embedding points
  Eigen::VectorXd eigenvalues;  // the k retained eigenvalues, descending
  double tau = 0.5;
  double tol = 1e-9;
  bool boundary_warning = false;  // some eigenvalue within tol of tau
  double gap_below_tau = 0.0;     // tau minus the largest dropped eigenvalue
  double gap_above_tau = 0.0;     // smallest retained eigenvalue minus tau

  int n() const { return static_cast<int>(b.rows()); }
  int k() const { return static_cast<int>(b.cols()); }

  // Pi v, the projection onto the retained eigenspace
  Eigen::VectorXd project(const Eigen::VectorXd& v) const {
    return b * (b.transpose() * v) / static_cast<double>(n());
  }

  Eigen::MatrixXd projector() const { return b * b.transpose() / static_cast<double>(n()); }
};

inline SpectralEmbedding embed(const RegularGraph& g, double tau = 0.5, double tol = 1e-9) {
  if (tau <= 0.0 || tau > 1.0) throw invalid_argument_error("embed: tau in (0,1] required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.walk);
  if (solver.info() != Eigen::Success) throw numeric_error("embed: eigendecomposition failed");
  const Eigen::VectorXd& vals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  int n = g.n;

  int first = n;
  for (int i = 0; i < n; ++i)
    if (vals[i] >= tau - tol) {
      first = i;
      break;
    }
  if (first == n) throw numeric_error("embed: no eigenvalue reaches tau");
  int k = n - first;

  SpectralEmbedding e;
  e.tau = tau;
  e.tol = tol;
  e.eigenvalues = vals.segment(first, k).reverse();
  for (int i = 0; i < n; ++i)
    if (std::abs(vals[i] - tau) <= tol) e.boundary_warning = true;
  e.gap_above_tau = e.eigenvalues[k - 1] - tau;
  e.gap_below_tau = first > 0 ? tau - vals[first - 1] : 1.0;

  // columns ordered by descending eigenvalue
  Eigen::MatrixXd v(n, k);
  for (int j = 0; j < k; ++j) v.col(j) = vecs.col(n - 1 - j);

  // Rotate the eigenvalue-1 block so its first column is exactly the all-ones
  // direction; an arbitrary solver basis for a degenerate top eigenspace
  // (disconnected graphs) otherwise hides it. The rotation stays inside one
  // eigenspace, so W-eigenstructure and the projector are unchanged.
  int top = 0;
  while (top < k && e.eigenvalues[top] >= 1.0 - 1e-9) ++top;
  if (top == 0) throw numeric_error("embed: eigenvalue 1 missing from walk matrix");
  Eigen::VectorXd ones_dir = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd w = v.leftCols(top).transpose() * ones_dir;
  if (std::abs(w.norm() - 1.0) > 1e-6)
    throw numeric_error("embed: all-ones vector not inside the eigenvalue-1 space");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(top, top);
  q.col(0) = w / w.norm();
  // complete q to an orthonormal basis via Gram-Schmidt over identity columns
  int filled = 1;
  for (int c = 0; c < top && filled < top; ++c) {
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(top);
    cand[c] = 1.0;
    for (int j = 0; j < filled; ++j) cand -= q.col(j).dot(cand) * q.col(j);
    if (cand.norm() > 1e-8) {
      q.col(filled) = cand / cand.norm();
      ++filled;
    }
  }
  if (filled != top) throw numeric_error("embed: basis completion failed");
  v.leftCols(top) = v.leftCols(top) * q;

  // sign convention: first column positive, others by largest-magnitude entry
  if (v(0, 0) < 0) v.col(0) = -v.col(0);
  for (int j = 1; j < k; ++j) {
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, j)) > std::abs(v(arg, j))) arg = i;
    if (v(arg, j) < 0) v.col(j) = -v.col(j);
  }

  e.b = std::sqrt(double(n)) * v;
  return e;
}

inline Eigen::VectorXd subset_mean(const SpectralEmbedding& e, const VertexSet& t) {
  if (t.empty()) throw invalid_argument_error("subset_mean: empty vertex set");
  Eigen::VectorXd m = Eigen::VectorXd::Zero(e.k());
  for (int i : t.indices) m += e.b.row(i).transpose();
  return m / t.size();
}

struct MixResult {
  int t_star = 0;
  std::vector<double> norms;  // ||W^t 1_T||^2 for t = 0..t_star
};

// Smallest t with ||W^t 1_T||^2 < eps^0.2 |T|^2/(delta n).
inline MixResult walk_until_mixed(const RegularGraph& g, const SpectralEmbedding& e,
                                  const VertexSet& t, double eps, double delta, int t_cap) {
  (void)e;  // interface carries the embedding; the walk trajectory only needs g
  if (t.empty()) throw invalid_argument_error("walk_until_mixed: empty vertex set");
  if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0)
    throw invalid_argument_error("walk_until_mixed: eps, delta in (0,1) required");
  if (t.size() > delta * g.n + 1e-9)
    throw invalid_argument_error("walk_until_mixed: |T| <= delta*n required");
  double threshold = std::pow(eps, 0.2) * t.size() * t.size() / (delta * g.n);
  Eigen::VectorXd f = t.indicator(g.n);
  std::vector<double> norms;
  for (int step = 0; step <= t_cap; ++step) {
    norms.push_back(f.squaredNorm());
    if (norms.back() < threshold) return MixResult{step, std::move(norms)};
    f = g.walk * f;
  }
  throw not_mixed_error("walk_until_mixed: threshold not reached by t_cap", std::move(norms));
}

}  // namespace cutcloud
