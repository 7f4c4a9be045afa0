// Graph-to-statistics reductions: planted cuts become resilience witnesses,
// smoothed embeddings become moment-gap instances, and the embedding itself
// becomes a robust mean estimation problem with a yes/no decision rule.
// Every report re-verifies from its own serialized cloud.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cutcloud/common.hpp"
#include "cutcloud/graph.hpp"
#include "cutcloud/io.hpp"
#include "cutcloud/robuststats.hpp"
#include "cutcloud/spectral.hpp"
#include "json.hpp"

namespace cutcloud {

struct ReductionReport {
  PlantedInstance instance;
  std::string kind;  // resilience | moments | robust_mean
  PointCloud cloud;
  std::string cloud_file;  // set by callers that serialize the cloud
  std::string verdict = "indeterminate";
  std::optional<ResilienceCertificate> resilience;
  std::vector<MomentWitness> moments;
  std::map<std::string, double> thresholds;
  std::vector<std::string> warnings;
};

inline nlohmann::json report_json(const ReductionReport& r) {
  nlohmann::json j;
  j["instance"] = io::instance_json(r.instance);
  j["kind"] = r.kind;
  j["verdict"] = r.verdict;
  j["cloud"] = {{"n", r.cloud.n()},
                {"dim", r.cloud.dim()},
                {"provenance", r.cloud.provenance},
                {"file", r.cloud_file}};
  j["thresholds"] = r.thresholds;
  j["warnings"] = r.warnings;
  if (r.resilience) {
    const auto& c = *r.resilience;
    j["resilience"] = {{"delta", c.delta},
                       {"sigma_star", c.sigma_star},
                       {"witness_dir", std::vector<double>(c.witness_dir.begin(), c.witness_dir.end())},
                       {"witness_set", c.witness_set},
                       {"probed", c.probed},
                       {"exact", c.exact}};
  }
  if (!r.moments.empty()) {
    j["moments"] = nlohmann::json::array();
    for (const auto& w : r.moments)
      j["moments"].push_back({{"p", w.p},
                              {"dir", std::vector<double>(w.dir.begin(), w.dir.end())},
                              {"value", w.value},
                              {"yes_threshold", w.yes_threshold},
                              {"no_threshold", w.no_threshold},
                              {"c", w.c},
                              {"s", w.s}});
  }
  return j;
}

// Largest discrepancy between the report's certificate numbers and a fresh
// recomputation from the stored cloud.
inline double reverify(const ReductionReport& r) {
  double err = 0.0;
  if (r.resilience && !r.resilience->witness_set.empty())
    err = std::max(err, std::abs(r.resilience->sigma_star -
                                 detail::event_value(r.cloud, r.resilience->witness_set)));
  for (const auto& w : r.moments)
    err = std::max(err, std::abs(w.value - directional_moment(r.cloud, w.dir, w.p)));
  return err;
}

// Embed; certify yes from the planted event (||E[X|A] - mu|| exceeding
// 0.4 sqrt(delta) (1-PrA)/PrA), or no from a heuristic witness search staying
// under s sqrt(delta).
inline ReductionReport reduce_graph_to_resilience(const PlantedInstance& inst, double s) {
  ReductionReport rep;
  rep.instance = inst;
  rep.kind = "resilience";
  SpectralEmbedding e = embed(inst.graph);
  rep.cloud = PointCloud::from(e.b, "embedding(" + inst.kind + ", n=" +
                                        std::to_string(inst.graph.n) + ")");
  double delta = inst.delta;
  rep.thresholds["delta"] = delta;
  rep.thresholds["eps"] = inst.eps;
  rep.thresholds["s"] = s;
  rep.thresholds["sigma_yes"] = 0.4 * std::sqrt(delta);
  rep.thresholds["sigma_no"] = s * std::sqrt(delta);

  if (inst.planted) {
    const VertexSet& a = *inst.planted;
    double pr = static_cast<double>(a.size()) / inst.graph.n;
    double phi = expansion(inst.graph, a).phi;
    Eigen::VectorXd mean_a = subset_mean(e, a);
    // the subset-mean lower bound, with the planted set's actual expansion
    double floor_sq = (0.5 - phi) / pr;
    if (mean_a.squaredNorm() < floor_sq - 1e-9)
      throw numeric_error("reduce_graph_to_resilience: planted event breaks the mean bound");
    if (phi > inst.eps + 1e-9)
      rep.warnings.push_back("planted set expands more than the declared eps");
    ResilienceCertificate cert;
    cert.delta = delta;
    cert.witness_set = a.indices;
    cert.sigma_star = detail::event_value(rep.cloud, cert.witness_set);
    Eigen::VectorXd shift = mean_a - rep.cloud.mean.transpose();
    cert.witness_dir = shift.norm() > 1e-12 ? Eigen::VectorXd(shift / shift.norm())
                                            : Eigen::VectorXd::Unit(e.k(), 0);
    cert.probed = 1;
    cert.exact = false;
    rep.thresholds["planted_phi"] = phi;
    rep.thresholds["planted_mean_sq"] = mean_a.squaredNorm();
    rep.verdict = cert.sigma_star > rep.thresholds["sigma_yes"] ? "yes" : "indeterminate";
    rep.resilience = std::move(cert);
    return rep;
  }

  ResilienceCertificate cert = resilience_witness_search(rep.cloud, delta);
  rep.verdict = cert.sigma_star <= rep.thresholds["sigma_no"] ? "no" : "indeterminate";
  rep.resilience = std::move(cert);
  return rep;
}

// Drop the mean coordinate of the embedding, smooth by averaged resampling,
// and probe directional moments: yes when some order t in (2,p] reaches
// (c t)^{t/2}, no when every probed order r in (2,q] stays under (s r)^{r/2}.
inline ReductionReport reduce_graph_to_moment_instance(const PlantedInstance& inst, double p,
                                                       double q, double c, double s, double alpha,
                                                       int m, std::uint64_t seed) {
  if (p <= 2.0 || q <= 2.0)
    throw invalid_argument_error("reduce_graph_to_moment_instance: p, q > 2 required");
  if (c <= 0.0 || s <= 0.0 || alpha <= 0.0)
    throw invalid_argument_error("reduce_graph_to_moment_instance: c, s, alpha must be positive");
  if (m < 1) throw invalid_argument_error("reduce_graph_to_moment_instance: m >= 1 required");

  ReductionReport rep;
  rep.instance = inst;
  rep.kind = "moments";
  SpectralEmbedding e = embed(inst.graph);
  if (e.k() < 2)
    throw degenerate_instance_error(
        "reduce_graph_to_moment_instance: nothing left after dropping the mean coordinate");
  Eigen::MatrixXd b0 = e.b.rightCols(e.k() - 1);
  PointCloud cloud0 = PointCloud::from(b0, "embedding minus mean coordinate");
  if (cloud0.mean.norm() > 1e-9)
    throw numeric_error("reduce_graph_to_moment_instance: reduced cloud is not mean-zero");
  Eigen::MatrixXd cov = b0.transpose() * b0 / inst.graph.n;
  if ((cov - Eigen::MatrixXd::Identity(cov.rows(), cov.cols())).cwiseAbs().maxCoeff() > 1e-6)
    throw numeric_error("reduce_graph_to_moment_instance: reduced cloud is not isotropic");

  double delta = inst.delta;
  int k = static_cast<int>(std::lround(alpha / delta));
  if (k < 1) throw invalid_argument_error("reduce_graph_to_moment_instance: alpha < delta/2");
  double alpha_eff = k * delta;
  rep.cloud = rosenthal_smooth(cloud0, delta, alpha_eff, m, seed);
  if (m < 1000) rep.warnings.push_back("sampling budget m < 1000");

  rep.thresholds["delta"] = delta;
  rep.thresholds["eps"] = inst.eps;
  rep.thresholds["p"] = p;
  rep.thresholds["q"] = q;
  rep.thresholds["c"] = c;
  rep.thresholds["s"] = s;
  rep.thresholds["alpha"] = alpha;
  rep.thresholds["alpha_effective"] = alpha_eff;
  rep.thresholds["m"] = m;

  // probe integer orders plus the endpoints themselves
  std::vector<double> orders;
  for (int t = 3; t <= static_cast<int>(std::floor(std::max(p, q) + 1e-12)); ++t)
    orders.push_back(t);
  for (double t : {p, q})
    if (std::none_of(orders.begin(), orders.end(),
                     [&](double o) { return std::abs(o - t) < 1e-9; }))
      orders.push_back(t);
  std::sort(orders.begin(), orders.end());

  int kmax = std::max(1, static_cast<int>(std::floor(delta * rep.cloud.n() + 1e-12)));
  DirectionBudget budget;
  budget.seed = seed + 1;
  std::vector<Eigen::VectorXd> dirs = probe_directions(rep.cloud, kmax, budget);
  if (inst.planted) {
    Eigen::RowVectorXd pm = Eigen::RowVectorXd::Zero(cloud0.dim());
    for (int i : inst.planted->indices) pm += cloud0.x.row(i);
    if (pm.norm() > 1e-12) dirs.push_back((pm / pm.norm()).transpose());
  }

  bool any_yes = false, all_no = true;
  for (double t : orders) {
    MomentWitness w;
    w.p = t;
    w.c = c;
    w.s = s;
    w.yes_threshold = std::pow(c * t, t / 2.0);
    w.no_threshold = std::pow(s * t, t / 2.0);
    for (const auto& v : dirs) {
      double val = directional_moment(rep.cloud, v, t);
      if (val > w.value || w.dir.size() == 0) {
        w.value = val;
        w.dir = v;
      }
    }
    if (t <= p + 1e-12 && w.value >= w.yes_threshold) any_yes = true;
    if (t <= q + 1e-12 && w.value > w.no_threshold) all_no = false;
    rep.moments.push_back(std::move(w));
  }
  rep.verdict = any_yes ? "yes" : (all_no ? "no" : "indeterminate");
  return rep;
}

struct RobustMeanInstance {
  PointCloud cloud;
  double corruption = 0.0;  // adversary budget handed to the estimator
};

inline RobustMeanInstance reduce_graph_to_robust_mean(const PlantedInstance& inst) {
  SpectralEmbedding e = embed(inst.graph);
  RobustMeanInstance out;
  out.cloud = PointCloud::from(e.b, "embedding(" + inst.kind + ", n=" +
                                        std::to_string(inst.graph.n) + ")");
  out.corruption = inst.delta / 2.0;
  return out;
}

// yes iff the estimate strays from the embedding mean by more than
// 2 beta* sqrt(delta), strictly
inline bool sse_decision(const Eigen::VectorXd& mu_hat, double delta, double beta_star) {
  if (mu_hat.size() < 1) throw invalid_argument_error("sse_decision: empty estimate");
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(mu_hat.size(), 0);
  return (mu_hat - e1).norm() > 2.0 * beta_star * std::sqrt(delta);
}

struct AuditReport {
  double max_value = 0.0;  // max over trials of ||subset_mean(T)|| |T|/n
  double bound = 0.0;      // 2 eps^{0.05} sqrt(delta)
  bool below = true;
  int trials = 0;
  std::uint64_t seed = 0;
  int argmax_size = 0;
  std::vector<int> argmax_set;
};

inline nlohmann::json audit_json(const AuditReport& a) {
  return {{"max_value", a.max_value}, {"bound", a.bound},   {"below", a.below},
          {"trials", a.trials},       {"seed", a.seed},     {"argmax_size", a.argmax_size},
          {"argmax_set", a.argmax_set}};
}

// Samples log-uniform-size sets disjoint from the planted one and checks the
// scaled subset-mean norm never rivals the planted shift.
inline AuditReport unique_mean_shift_audit(const PlantedInstance& inst, int trials,
                                           std::uint64_t seed) {
  if (!inst.planted) throw invalid_argument_error("unique_mean_shift_audit: no planted set");
  if (trials < 1) throw invalid_argument_error("unique_mean_shift_audit: trials >= 1 required");
  SpectralEmbedding e = embed(inst.graph);
  int n = inst.graph.n;
  int kmax = static_cast<int>(std::floor(inst.delta * n + 1e-12));
  if (kmax < 1) throw invalid_argument_error("unique_mean_shift_audit: delta*n < 1");

  std::vector<int> pool;
  for (int i = 0; i < n; ++i)
    if (!inst.planted->contains(i)) pool.push_back(i);
  if (static_cast<int>(pool.size()) < kmax)
    throw invalid_argument_error("unique_mean_shift_audit: complement smaller than delta*n");

  AuditReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.bound = 2.0 * std::pow(inst.eps, 0.05) * std::sqrt(inst.delta);
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> logu(0.0, std::log(kmax + 1.0));
  for (int t = 0; t < trials; ++t) {
    int sz = std::clamp(static_cast<int>(std::exp(logu(rng))), 1, kmax);
    std::shuffle(pool.begin(), pool.end(), rng);
    VertexSet tset = VertexSet::of({pool.begin(), pool.begin() + sz});
    double value = subset_mean(e, tset).norm() * sz / n;
    if (value > rep.max_value) {
      rep.max_value = value;
      rep.argmax_size = sz;
      rep.argmax_set = tset.indices;
    }
  }
  rep.below = rep.max_value <= rep.bound;
  return rep;
}

}  // namespace cutcloud
