// Level-set rounding: plain Cheeger sweep, the two local variants (size
// window, avoidance), random-walk rounding of analytically sparse vectors,
// and the fourth-moment tail-set selector.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "cutcloud/common.hpp"
#include "cutcloud/graph.hpp"
#include "cutcloud/robuststats.hpp"
#include "cutcloud/spectral.hpp"

namespace cutcloud {

struct RoundingTrace {
  std::vector<CutReport> candidate_cuts;
  CutReport chosen;
  int walk_steps = -1;  // random-walk variant only
  std::vector<double> thresholds;
};

namespace detail {

// Prefix level sets of `score` at strictly decreasing thresholds, sizes in
// [min_size, max_size], scored by expansion; appends each candidate to trace.
// Returns index of the best candidate in trace.candidate_cuts, or -1.
inline int sweep_level_sets(const RegularGraph& g, const Eigen::VectorXd& score, int min_size,
                            int max_size, bool positive_only, RoundingTrace& trace) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });

  int best = -1;
  double best_phi = std::numeric_limits<double>::infinity();
  std::vector<int> prefix;
  double quad = 0.0;
  for (int i = 0; i < g.n; ++i) {
    int v = order[i];
    if (positive_only && score[v] <= 0.0) break;
    for (int u : prefix) quad += 2.0 * g.walk(v, u);
    quad += g.walk(v, v);
    prefix.push_back(v);
    int sz = i + 1;
    if (sz > max_size) break;
    bool boundary = (i + 1 == g.n) || (score[order[i + 1]] < score[v]);
    if (!boundary || sz < min_size) continue;
    trace.thresholds.push_back(score[v]);
    CutReport r;
    r.set = VertexSet::of(prefix);
    r.size = sz;
    r.quad_form = quad;
    r.phi = 1.0 - quad / sz;
    trace.candidate_cuts.push_back(r);
    if (r.phi < best_phi) {
      best_phi = r.phi;
      best = static_cast<int>(trace.candidate_cuts.size()) - 1;
    }
  }
  return best;
}

}  // namespace detail

// Min-expansion level set of w_i = v_i^2 with size <= delta n, with the
// spectral bound sqrt(1 - <v,Gv>^2/||v||^4) / (1 - ||v||_1^2/(delta n ||v||^2))
// asserted on the returned cut.
inline RoundingTrace cheeger_round(const RegularGraph& g, const Eigen::VectorXd& v, double delta) {
  if (v.size() != g.n) throw invalid_argument_error("cheeger_round: vector length mismatch");
  double norm2 = v.squaredNorm();
  if (norm2 < 1e-300) throw invalid_argument_error("cheeger_round: zero vector");
  int cap = static_cast<int>(std::floor(delta * g.n + 1e-12));
  if (cap < 1) throw no_candidate_error("cheeger_round: delta n < 1");

  RoundingTrace trace;
  // level sets {w >= t} for positive thresholds only; zero entries never join
  Eigen::VectorXd w = v.array().square();
  int best = detail::sweep_level_sets(g, w, 1, cap, true, trace);
  if (best < 0) throw no_candidate_error("cheeger_round: no level set of size <= delta n");
  trace.chosen = trace.candidate_cuts[best];

  double quad = v.dot(g.walk * v);
  double ratio = quad / norm2;
  // 1 - ratio^2 sits at machine noise for exact top eigenvectors; test it
  // before the square root amplifies the noise to ~1e-8
  double rsq = 1.0 - ratio * ratio;
  double num = std::sqrt(std::max(0.0, rsq));
  double den = 1.0 - v.lpNorm<1>() * v.lpNorm<1>() / (delta * g.n * norm2);
  if (den > 0.0) {
    if (trace.chosen.phi > num / den + 1e-10)
      throw numeric_error("cheeger_round: chosen cut violates the spectral bound");
  } else if (rsq <= 1e-12) {
    // degenerate 0/0 case (v an exact top eigenvector at full spread): the
    // bound collapses to 0 and the swept optimum must be an exact cut
    if (trace.chosen.phi > 1e-10)
      throw numeric_error("cheeger_round: degenerate bound 0 but chosen phi positive");
  } else {
    throw bound_vacuous_error("cheeger_round: vector too spread for delta");
  }
  return trace;
}

// Cheeger sweep on h = (f + Wf)/2 at size cap delta n/(gamma eps^2), then
// uniform subsampling down to ceil(delta n).
inline RoundingTrace local_cheeger_round(const RegularGraph& g, const Eigen::VectorXd& f,
                                         double eps, double delta, double gamma, int retries,
                                         std::uint64_t seed = 0) {
  if (f.size() != g.n) throw invalid_argument_error("local_cheeger_round: vector length mismatch");
  if (f.minCoeff() < -1e-12)
    throw invalid_argument_error("local_cheeger_round: f must be entrywise nonnegative");
  if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta > 1.0 || gamma <= 0.0)
    throw invalid_argument_error("local_cheeger_round: eps in (0,1), delta in (0,1], gamma > 0");
  Eigen::VectorXd wf = g.walk * f;
  if (wf.squaredNorm() < eps * f.squaredNorm() - 1e-12)
    throw invalid_argument_error("local_cheeger_round: walk energy ||Gf||^2 >= eps ||f||^2 fails");
  double l1 = f.lpNorm<1>();
  if (f.squaredNorm() < gamma * l1 * l1 / (delta * g.n) - 1e-12)
    throw invalid_argument_error(
        "local_cheeger_round: spread ||f||^2 >= gamma ||f||_1^2/(delta n) fails");

  Eigen::VectorXd h = 0.5 * (f + wf);
  double cap_delta = std::min(1.0, delta / (gamma * eps * eps));
  RoundingTrace inner = cheeger_round(g, h.array().sqrt().matrix(), cap_delta);

  int target = static_cast<int>(std::ceil(delta * g.n - 1e-12));
  RoundingTrace trace;
  trace.thresholds = inner.thresholds;
  trace.candidate_cuts = inner.candidate_cuts;
  if (inner.chosen.size <= target) {
    trace.chosen = inner.chosen;
    return trace;
  }

  auto rng = make_rng(seed);
  std::vector<int> pool = inner.chosen.set.indices;
  int best = -1;
  double best_phi = std::numeric_limits<double>::infinity();
  for (int r = 0; r < retries; ++r) {
    std::shuffle(pool.begin(), pool.end(), rng);
    CutReport cand = expansion(g, VertexSet::of({pool.begin(), pool.begin() + target}));
    trace.candidate_cuts.push_back(cand);
    if (cand.phi < best_phi) {
      best_phi = cand.phi;
      best = static_cast<int>(trace.candidate_cuts.size()) - 1;
    }
  }
  if (best < 0 || best_phi >= 1.0 - 1e-12)
    throw rounding_failed("local_cheeger_round: every subsample has expansion 1");
  trace.chosen = trace.candidate_cuts[best];
  return trace;
}

// Level sets of h = (1-eta) 1_S + eta W 1_S inside the size window
// [c eta eps^2 |S|, C |S|/(eta^2 eps^2)]; h is zeroed on `avoid` first.
inline RoundingTrace sized_cheeger_round(const RegularGraph& g, const VertexSet& s, double eps,
                                         double eta, const std::optional<VertexSet>& avoid,
                                         double c_window = 0.01, double big_c_window = 100.0,
                                         double c_target = 0.05) {
  if (s.empty()) throw invalid_argument_error("sized_cheeger_round: empty set");
  if (eps <= 0.0 || eps > 1.0 || eta <= 0.0 || eta >= 1.0)
    throw invalid_argument_error("sized_cheeger_round: eps in (0,1], eta in (0,1)");
  Eigen::VectorXd f = s.indicator(g.n);
  Eigen::VectorXd wf = g.walk * f;
  if (wf.squaredNorm() < eps * s.size() - 1e-12)
    throw invalid_argument_error("sized_cheeger_round: walk energy ||Gf||^2 >= eps |S| fails");
  if (avoid) {
    if (!s.disjoint_from(*avoid))
      throw invalid_argument_error("sized_cheeger_round: S intersects avoid");
    if (avoid->size() != s.size())
      throw invalid_argument_error("sized_cheeger_round: |avoid| must equal |S|");
    if (expansion(g, *avoid).phi > eps / 100.0 + 1e-12)
      throw invalid_argument_error("sized_cheeger_round: avoid set expands more than eps/100");
  }

  Eigen::VectorXd h = (1.0 - eta) * f + eta * wf;
  if (avoid)
    for (int v : avoid->indices) h[v] = 0.0;

  int lo = std::max(1, static_cast<int>(std::ceil(c_window * eta * eps * eps * s.size() - 1e-9)));
  int hi = static_cast<int>(std::floor(big_c_window * s.size() / (eta * eta * eps * eps) + 1e-9));
  hi = std::min(hi, g.n);
  RoundingTrace trace;
  int best = detail::sweep_level_sets(g, h, lo, hi, true, trace);
  if (best < 0) throw no_candidate_error("sized_cheeger_round: no level set inside the size window");
  trace.chosen = trace.candidate_cuts[best];
  if (trace.chosen.phi > 1.0 - c_target) {
    std::ostringstream msg;
    msg << "sized_cheeger_round: best windowed expansion " << trace.chosen.phi << " over "
        << trace.candidate_cuts.size() << " candidates exceeds " << (1.0 - c_target);
    throw rounding_failed(msg.str());
  }
  if (avoid && !trace.chosen.set.disjoint_from(*avoid))
    throw numeric_error("sized_cheeger_round: chosen cut touches avoid");
  return trace;
}

// Two-step random-walk rounding of a unit vector in the retained eigenspace
// with ||v||_4^4 >= 1/(delta n): threshold |v_i| for a maximal-mean-shift seed
// S, then sweep level sets of W^t 1_S + W^{t+1} 1_S until one cuts below
// 1 - c_target.
inline RoundingTrace round_analytically_sparse(const RegularGraph& g, const SpectralEmbedding& e,
                                               const Eigen::VectorXd& v, double delta,
                                               double c_target = 0.05, int t_cap = -1,
                                               double cap_k = 4.0, double cap_kp = 4.0) {
  if (v.size() != g.n) throw invalid_argument_error("round_analytically_sparse: length mismatch");
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw invalid_argument_error("round_analytically_sparse: ||v|| = 1 required");
  if ((e.project(v) - v).norm() > 1e-6)
    throw invalid_argument_error("round_analytically_sparse: v outside the retained eigenspace");
  if (delta <= 0.0 || delta > 1.0)
    throw invalid_argument_error("round_analytically_sparse: delta in (0,1] required");
  double four_norm = v.array().pow(4).sum();
  if (four_norm < 1.0 / (delta * g.n) - 1e-12)
    throw invalid_argument_error("round_analytically_sparse: ||v||_4^4 >= 1/(delta n) fails");
  if (t_cap < 0) t_cap = static_cast<int>(std::ceil(4.0 * std::log(double(g.n))));

  // step 1: seed set from |v_i| thresholds, maximal embedding mean shift
  int seed_cap = static_cast<int>(std::floor(cap_k * delta * g.n + 1e-12));
  if (seed_cap < 1) throw no_candidate_error("round_analytically_sparse: K delta n < 1");
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd mag = v.array().abs();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return mag[a] > mag[b]; });
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(e.k());
  e1[0] = 1.0;
  RoundingTrace trace;
  std::optional<VertexSet> seed;
  double best_shift = -1.0;
  Eigen::VectorXd running = Eigen::VectorXd::Zero(e.k());
  std::vector<int> prefix;
  for (int i = 0; i < g.n && i < seed_cap; ++i) {
    int u = order[i];
    if (mag[u] <= 0.0) break;
    running += e.b.row(u).transpose();
    prefix.push_back(u);
    bool boundary = (i + 1 == g.n) || (mag[order[i + 1]] < mag[u]);
    if (!boundary) continue;
    trace.thresholds.push_back(mag[u]);
    double shift = (running / prefix.size() - e1).norm();
    if (shift > best_shift) {
      best_shift = shift;
      seed = VertexSet::of(prefix);
    }
  }
  if (!seed) throw no_candidate_error("round_analytically_sparse: no threshold seed available");

  // step 2: walk the seed and sweep windowed level sets per step
  int size_cap = static_cast<int>(
      std::floor(cap_kp * delta * std::max(1.0, std::log(1.0 / delta)) * g.n + 1e-9));
  size_cap = std::min(size_cap, g.n);
  Eigen::VectorXd f = seed->indicator(g.n);
  std::ostringstream failure;
  failure << "round_analytically_sparse: no cut reached phi <= " << (1.0 - c_target) << ";";
  for (int t = 0; t <= t_cap; ++t) {
    Eigen::VectorXd h = f + g.walk * f;
    int best = detail::sweep_level_sets(g, h, 1, size_cap, true, trace);
    if (best >= 0 && trace.candidate_cuts[best].phi <= 1.0 - c_target) {
      trace.chosen = trace.candidate_cuts[best];
      trace.walk_steps = t;
      return trace;
    }
    failure << " t=" << t << " best="
            << (best >= 0 ? trace.candidate_cuts[best].phi : std::numeric_limits<double>::quiet_NaN());
    f = g.walk * f;
  }
  throw rounding_failed(failure.str());
}

struct TailSetResult {
  double threshold = 0.0;
  std::vector<int> set;
  double mean_shift = 0.0;
};

// Max-|mean| tail of <v, x_i - mu> with |S| <= K delta n, over two-sided and
// both one-sided threshold families.
inline TailSetResult fourth_moment_tail_set(const PointCloud& points, const Eigen::VectorXd& v,
                                            double delta, double cap_k = 4.0) {
  detail::check_unit(v, "fourth_moment_tail_set");
  if (delta <= 0.0 || delta > 1.0)
    throw invalid_argument_error("fourth_moment_tail_set: delta in (0,1] required");
  double m4 = directional_moment(points, v, 4.0);
  if (m4 < 1.0 / delta - 1e-9)
    throw invalid_argument_error("fourth_moment_tail_set: fourth moment below 1/delta");
  int cap = static_cast<int>(std::floor(cap_k * delta * points.n() + 1e-12));
  if (cap < 1) throw no_candidate_error("fourth_moment_tail_set: K delta n < 1");

  Eigen::VectorXd y(points.n());
  for (int i = 0; i < points.n(); ++i) y[i] = (points.x.row(i) - points.mean).dot(v.transpose());

  TailSetResult best;
  best.mean_shift = -1.0;
  auto sweep = [&](auto key) {
    std::vector<int> order(points.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) > key(b); });
    double sum = 0.0;
    for (int i = 0; i < points.n() && i < cap; ++i) {
      sum += y[order[i]];
      bool boundary = (i + 1 == points.n()) || (key(order[i + 1]) < key(order[i]));
      if (!boundary) continue;
      double shift = std::abs(sum / (i + 1));
      if (shift > best.mean_shift) {
        best.mean_shift = shift;
        best.threshold = key(order[i]);
        best.set.assign(order.begin(), order.begin() + i + 1);
        std::sort(best.set.begin(), best.set.end());
      }
    }
  };
  sweep([&](int i) { return std::abs(y[i]); });  // two-sided |y| > t
  sweep([&](int i) { return y[i]; });            // upper tail
  sweep([&](int i) { return -y[i]; });           // lower tail
  return best;
}

}  // namespace cutcloud
