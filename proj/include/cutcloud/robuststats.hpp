// Point-cloud statistics: directional moments, resilience certificates,
// mean/moment conversion bounds, Rosenthal smoothing, and mean estimators.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cutcloud/common.hpp"

namespace cutcloud {

struct PointCloud {
  Eigen::MatrixXd x;        // n x k
  Eigen::RowVectorXd mean;  // cached (1/n) sum of rows
  std::string provenance;

  static PointCloud from(Eigen::MatrixXd pts, std::string origin = "") {
    if (pts.rows() < 1) throw invalid_argument_error("PointCloud: at least one point required");
    PointCloud c;
    c.mean = pts.colwise().mean();
    c.x = std::move(pts);
    c.provenance = std::move(origin);
    return c;
  }

  int n() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }
};

struct ResilienceCertificate {
  double delta = 0.0;
  double sigma_star = 0.0;  // sup over probed events of ||E[X|A] - mu|| PrA/(1-PrA)
  Eigen::VectorXd witness_dir;
  std::vector<int> witness_set;
  long probed = 0;
  bool exact = false;
};

struct MomentWitness {
  double p = 4.0;
  Eigen::VectorXd dir;
  double value = 0.0;          // E_i |<dir, x_i - mu>|^p
  double yes_threshold = 0.0;  // (c p)^{p/2}
  double no_threshold = 0.0;   // (s p)^{p/2}
  double c = 0.0;
  double s = 0.0;
};

struct EstimatorResult {
  Eigen::VectorXd mu_hat;
  std::string strategy;
  int iterations = 0;
  std::vector<int> removed;
};

namespace detail {

inline void check_unit(const Eigen::VectorXd& v, const char* who) {
  if (v.norm() < 1e-12) throw invalid_argument_error(std::string(who) + ": zero direction");
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw invalid_argument_error(std::string(who) + ": direction must be unit length");
}

// resilience value of the event "uniform over the rows in `set`"
inline double event_value(const PointCloud& c, const std::vector<int>& set) {
  if (set.empty() || static_cast<int>(set.size()) >= c.n()) return 0.0;
  Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(c.dim());
  for (int i : set) m += c.x.row(i);
  m /= static_cast<double>(set.size());
  double pr = static_cast<double>(set.size()) / c.n();
  return (m - c.mean).norm() * pr / (1.0 - pr);
}

}  // namespace detail

inline double directional_moment(const PointCloud& c, const Eigen::VectorXd& v, double p) {
  detail::check_unit(v, "directional_moment");
  if (p < 1.0) throw invalid_argument_error("directional_moment: p >= 1 required");
  if (v.size() != c.dim()) throw invalid_argument_error("directional_moment: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < c.n(); ++i)
    acc += std::pow(std::abs((c.x.row(i) - c.mean).dot(v.transpose())), p);
  return acc / c.n();
}

// Exact sup over tail events along v: for each k <= floor(delta n), the top-k
// and bottom-k points by <v, x_i>.
inline ResilienceCertificate directional_resilience(const PointCloud& c, const Eigen::VectorXd& v,
                                                    double delta) {
  detail::check_unit(v, "directional_resilience");
  if (delta <= 0.0 || delta >= 1.0)
    throw invalid_argument_error("directional_resilience: delta in (0,1) required");
  int kmax = static_cast<int>(std::floor(delta * c.n() + 1e-12));
  if (kmax < 1) throw invalid_argument_error("directional_resilience: delta*n < 1");
  kmax = std::min(kmax, c.n() - 1);

  std::vector<int> order(c.n());
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd proj = c.x * v;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return proj[a] > proj[b]; });

  ResilienceCertificate best;
  best.delta = delta;
  best.witness_dir = v;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<int> top(order.begin(), order.begin() + k);
    std::vector<int> bot(order.end() - k, order.end());
    for (auto* set : {&top, &bot}) {
      double val = detail::event_value(c, *set);
      ++best.probed;
      if (val > best.sigma_star) {
        best.sigma_star = val;
        best.witness_set = *set;
        std::sort(best.witness_set.begin(), best.witness_set.end());
      }
    }
  }
  return best;
}

struct DirectionBudget {
  int random_dirs = 256;
  int cov_eigvecs = 8;
  int subset_means = 64;
  std::uint64_t seed = 0;
  // probe the sum direction of every subset of size <= floor(delta n); on tiny
  // clouds this provably reproduces the exact optimum (cap guards blowup)
  bool enumerate_small_subsets = false;
  long enumerate_cap = 2'000'000;
};

namespace detail {

inline void push_dir(std::vector<Eigen::VectorXd>& dirs, Eigen::VectorXd v) {
  double nrm = v.norm();
  if (nrm > 1e-12) dirs.push_back(v / nrm);
}

inline void enumerate_sum_dirs(const PointCloud& c, int kmax, long cap,
                               std::vector<Eigen::VectorXd>& dirs) {
  int n = c.n();
  std::vector<int> pick;
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(c.dim());
  long emitted = 0;
  // depth-first over subsets of size <= kmax
  auto rec = [&](auto&& self, int next, Eigen::RowVectorXd sum) -> void {
    if (emitted > cap) return;
    if (!pick.empty()) {
      push_dir(dirs, sum.transpose());
      ++emitted;
    }
    if (static_cast<int>(pick.size()) == kmax) return;
    for (int i = next; i < n; ++i) {
      pick.push_back(i);
      self(self, i + 1, sum + (c.x.row(i) - c.mean));
      pick.pop_back();
    }
  };
  rec(rec, 0, acc);
}

}  // namespace detail

// Candidate witness directions: coordinate axes, top covariance eigenvectors,
// random gaussian directions, random k-subset mean shifts, and optionally
// every small-subset sum direction.
inline std::vector<Eigen::VectorXd> probe_directions(const PointCloud& c, int kmax,
                                                     const DirectionBudget& budget = {}) {
  std::vector<Eigen::VectorXd> dirs;
  for (int j = 0; j < c.dim(); ++j)
    detail::push_dir(dirs, Eigen::VectorXd::Unit(c.dim(), j));

  Eigen::MatrixXd centered = c.x.rowwise() - c.mean;
  Eigen::MatrixXd cov = centered.transpose() * centered / c.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() == Eigen::Success) {
    int take = std::min(budget.cov_eigvecs, c.dim());
    for (int j = 0; j < take; ++j)
      detail::push_dir(dirs, es.eigenvectors().col(c.dim() - 1 - j));
  }

  auto rng = make_rng(budget.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < budget.random_dirs; ++r) {
    Eigen::VectorXd v(c.dim());
    for (int j = 0; j < c.dim(); ++j) v[j] = gauss(rng);
    detail::push_dir(dirs, v);
  }
  std::uniform_int_distribution<int> pick(0, c.n() - 1);
  for (int r = 0; r < budget.subset_means; ++r) {
    Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(c.dim());
    for (int j = 0; j < std::max(1, kmax); ++j) m += c.x.row(pick(rng)) - c.mean;
    detail::push_dir(dirs, m.transpose());
  }
  if (budget.enumerate_small_subsets)
    detail::enumerate_sum_dirs(c, std::min(std::max(1, kmax), c.n() - 1), budget.enumerate_cap,
                               dirs);
  return dirs;
}

inline ResilienceCertificate resilience_witness_search(const PointCloud& c, double delta,
                                                       const DirectionBudget& budget = {}) {
  if (delta <= 0.0 || delta >= 1.0)
    throw invalid_argument_error("resilience_witness_search: delta in (0,1) required");
  int kmax = static_cast<int>(std::floor(delta * c.n() + 1e-12));
  if (kmax < 1) throw invalid_argument_error("resilience_witness_search: delta*n < 1");

  std::vector<Eigen::VectorXd> dirs = probe_directions(c, kmax, budget);

  ResilienceCertificate best;
  best.delta = delta;
  best.exact = false;
  for (const auto& v : dirs) {
    ResilienceCertificate cand = directional_resilience(c, v, delta);
    best.probed += cand.probed;
    if (cand.sigma_star > best.sigma_star) {
      best.sigma_star = cand.sigma_star;
      best.witness_dir = cand.witness_dir;
      best.witness_set = cand.witness_set;
    }
  }
  if (best.witness_dir.size() == 0) best.witness_dir = Eigen::VectorXd::Unit(c.dim(), 0);
  return best;
}

// |E[X|A]| <= (E|X|^q / PrA)^{1/q}
inline double deviation_from_moment(double mq, double pr_a, double q) {
  if (mq < 0.0) throw invalid_argument_error("deviation_from_moment: negative moment");
  if (pr_a <= 0.0 || pr_a > 1.0) throw invalid_argument_error("deviation_from_moment: PrA in (0,1]");
  if (q < 1.0) throw invalid_argument_error("deviation_from_moment: q >= 1 required");
  return std::pow(mq / pr_a, 1.0 / q);
}

// E|X|^q <= (2 C_p)^{q/p} p/(p-q)
inline double moment_from_deviation(double cp, double p, double q) {
  if (cp < 0.0) throw invalid_argument_error("moment_from_deviation: negative C_p");
  if (q < 1.0 || q >= p)
    throw invalid_argument_error("moment_from_deviation: p > q >= 1 required");
  return std::pow(2.0 * cp, q / p) * p / (p - q);
}

// m points, each sqrt(delta/alpha) times a sum of alpha/delta i.i.d. rows.
inline PointCloud rosenthal_smooth(const PointCloud& c, double delta, double alpha, int m,
                                   std::uint64_t seed) {
  if (c.mean.norm() > 1e-9)
    throw invalid_argument_error("rosenthal_smooth: input cloud must be centered");
  if (delta <= 0.0 || alpha <= 0.0)
    throw invalid_argument_error("rosenthal_smooth: positive delta, alpha required");
  double ratio = alpha / delta;
  int k = static_cast<int>(std::lround(ratio));
  if (k < 1 || std::abs(ratio - k) > 1e-9)
    throw invalid_argument_error("rosenthal_smooth: alpha/delta must be a positive integer");
  if (m < 1) throw invalid_argument_error("rosenthal_smooth: m >= 1 required");
  double scale = std::sqrt(delta / alpha);
  auto rng = make_rng(seed);
  std::uniform_int_distribution<int> pick(0, c.n() - 1);
  Eigen::MatrixXd out(m, c.dim());
  for (int i = 0; i < m; ++i) {
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(c.dim());
    for (int j = 0; j < k; ++j) sum += c.x.row(pick(rng));
    out.row(i) = scale * sum;
  }
  return PointCloud::from(std::move(out), "rosenthal_smooth(k=" + std::to_string(k) + ")");
}

struct OptimalS {
  double s_star = 0.0;
  double min_value = 0.0;  // e x log(1/x), the minimum of x^{r/s} s/(s-r)
};

inline OptimalS optimal_s(double x, double r) {
  if (r < 2.0) throw invalid_argument_error("optimal_s: r >= 2 required");
  if (x <= 0.0 || x >= std::exp(-1.0))
    throw invalid_argument_error("optimal_s: x in (0, 1/e) required");
  double big_l = std::log(1.0 / x);
  return OptimalS{r * big_l / (big_l - 1.0), std::exp(1.0) * x * big_l};
}

enum class EstimatorStrategy { sample_mean, coordinate_median, spectral_filter, known_inliers };

inline EstimatorResult estimate_mean(const PointCloud& c, double delta, EstimatorStrategy strategy,
                                     const std::optional<std::vector<int>>& inliers = std::nullopt,
                                     double theta = 0.5) {
  EstimatorResult r;
  switch (strategy) {
    case EstimatorStrategy::sample_mean:
      r.strategy = "sample_mean";
      r.mu_hat = c.mean.transpose();
      return r;
    case EstimatorStrategy::coordinate_median: {
      r.strategy = "coordinate_median";
      r.mu_hat = Eigen::VectorXd(c.dim());
      std::vector<double> col(c.n());
      for (int j = 0; j < c.dim(); ++j) {
        for (int i = 0; i < c.n(); ++i) col[i] = c.x(i, j);
        std::sort(col.begin(), col.end());
        r.mu_hat[j] = c.n() % 2 ? col[c.n() / 2] : 0.5 * (col[c.n() / 2 - 1] + col[c.n() / 2]);
      }
      return r;
    }
    case EstimatorStrategy::known_inliers: {
      r.strategy = "known_inliers";
      if (!inliers || inliers->empty())
        throw invalid_argument_error("estimate_mean: known_inliers needs a nonempty set");
      Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(c.dim());
      for (int i : *inliers) m += c.x.row(i);
      r.mu_hat = (m / inliers->size()).transpose();
      return r;
    }
    case EstimatorStrategy::spectral_filter:
      break;
  }

  // spectral filter: while the top covariance eigenvalue exceeds 1 + theta,
  // drop the ceil(delta n / 4) survivors with largest projection onto it
  r.strategy = "spectral_filter";
  int chunk = static_cast<int>(std::ceil(delta * c.n() / 4.0));
  chunk = std::max(chunk, 1);
  std::vector<int> alive(c.n());
  std::iota(alive.begin(), alive.end(), 0);
  while (true) {
    if (alive.empty()) throw estimator_failed("spectral_filter: removed every point");
    Eigen::RowVectorXd mu = Eigen::RowVectorXd::Zero(c.dim());
    for (int i : alive) mu += c.x.row(i);
    mu /= static_cast<double>(alive.size());
    Eigen::MatrixXd centered(alive.size(), c.dim());
    for (std::size_t a = 0; a < alive.size(); ++a) centered.row(a) = c.x.row(alive[a]) - mu;
    Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(alive.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw numeric_error("spectral_filter: eigensolver failed");
    double lam = es.eigenvalues()[c.dim() - 1];
    if (lam <= 1.0 + theta) {
      r.mu_hat = mu.transpose();
      return r;
    }
    Eigen::VectorXd u = es.eigenvectors().col(c.dim() - 1);
    Eigen::VectorXd score = centered * u;
    std::vector<std::size_t> order(alive.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return score[a] * score[a] > score[b] * score[b]; });
    int cut = std::min<int>(chunk, static_cast<int>(alive.size()));
    std::vector<bool> drop(alive.size(), false);
    for (int i = 0; i < cut; ++i) {
      drop[order[i]] = true;
      r.removed.push_back(alive[order[i]]);
    }
    std::vector<int> next;
    next.reserve(alive.size() - cut);
    for (std::size_t a = 0; a < alive.size(); ++a)
      if (!drop[a]) next.push_back(alive[a]);
    alive = std::move(next);
    ++r.iterations;
  }
}

}  // namespace cutcloud
