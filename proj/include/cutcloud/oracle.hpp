// Brute-force exact baselines on tiny instances; ground truth for tests.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "cutcloud/common.hpp"
#include "cutcloud/graph.hpp"
#include "cutcloud/robuststats.hpp"

namespace cutcloud::oracle {

enum class ProfileMode { eq, leq };

struct ProfileResult {
  double value = 1.0;
  VertexSet argmin;
};

// Exact min expansion over all sets of size exactly (eq) or at most (leq)
// floor(delta n), by 2^n enumeration.
inline ProfileResult expansion_profile_exact(const RegularGraph& g, double delta,
                                             ProfileMode mode) {
  if (g.n > 20) throw too_large_error("expansion_profile_exact: n <= 20 required");
  int target = static_cast<int>(std::floor(delta * g.n + 1e-12));
  if (target < 1) throw invalid_argument_error("expansion_profile_exact: delta*n < 1");
  target = std::min(target, g.n);

  ProfileResult best;
  best.value = std::numeric_limits<double>::infinity();
  const int n = g.n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int sz = __builtin_popcount(mask);
    if (mode == ProfileMode::eq ? sz != target : sz > target) continue;
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) quad += g.walk(i, j);
    }
    double phi = 1.0 - quad / sz;
    if (phi < best.value) {
      std::vector<int> ids;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) ids.push_back(i);
      best.value = phi;
      best.argmin = VertexSet{std::move(ids)};
    }
  }
  return best;
}

// Exact sup over all events of probability <= delta, by subset enumeration.
inline ResilienceCertificate resilience_exact(const PointCloud& c, double delta) {
  if (c.n() > 18) throw too_large_error("resilience_exact: n <= 18 required");
  if (delta <= 0.0 || delta >= 1.0)
    throw invalid_argument_error("resilience_exact: delta in (0,1) required");
  int kmax = static_cast<int>(std::floor(delta * c.n() + 1e-12));
  if (kmax < 1) throw invalid_argument_error("resilience_exact: delta*n < 1");
  kmax = std::min(kmax, c.n() - 1);

  ResilienceCertificate best;
  best.delta = delta;
  best.exact = true;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next) -> void {
    if (!pick.empty()) {
      double val = detail::event_value(c, pick);
      ++best.probed;
      if (val > best.sigma_star) {
        best.sigma_star = val;
        best.witness_set = pick;
      }
    }
    if (static_cast<int>(pick.size()) == kmax) return;
    for (int i = next; i < c.n(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  if (!best.witness_set.empty()) {
    Eigen::RowVectorXd m = Eigen::RowVectorXd::Zero(c.dim());
    for (int i : best.witness_set) m += c.x.row(i);
    m /= static_cast<double>(best.witness_set.size());
    Eigen::VectorXd dir = (m - c.mean).transpose();
    best.witness_dir = dir.norm() > 1e-12 ? Eigen::VectorXd(dir / dir.norm())
                                          : Eigen::VectorXd::Unit(c.dim(), 0);
  } else {
    best.witness_dir = Eigen::VectorXd::Unit(c.dim(), 0);
  }
  return best;
}

namespace detail2 {

// E|<v, x - mu>|^p is convex, so v <- normalize(grad) ascends; used to polish
// a grid argmax. Still a lower bound on the true sup.
inline void polish_direction(const PointCloud& c, double p, Eigen::VectorXd& v, double& value) {
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(c.dim());
    for (int i = 0; i < c.n(); ++i) {
      double y = (c.x.row(i) - c.mean).dot(v.transpose());
      grad += std::copysign(std::pow(std::abs(y), p - 1.0), y) *
              (c.x.row(i) - c.mean).transpose();
    }
    if (grad.norm() < 1e-300) return;
    Eigen::VectorXd next = grad / grad.norm();
    double nv = directional_moment(c, next, p);
    if (nv <= value + 1e-15) return;
    v = next;
    value = nv;
  }
}

}  // namespace detail2

struct MomentSupResult {
  double value = 0.0;
  Eigen::VectorXd direction;
};

// Max directional p-th moment over a uniform angular grid plus local polish;
// a lower bound converging with resolution.
inline MomentSupResult moment_sup_grid(const PointCloud& c, double p, int resolution) {
  if (c.dim() > 3) throw too_large_error("moment_sup_grid: dimension <= 3 required");
  if (resolution < 90) throw invalid_argument_error("moment_sup_grid: resolution >= 90 required");

  MomentSupResult best;
  auto consider = [&](const Eigen::VectorXd& v) {
    double val = directional_moment(c, v, p);
    if (val > best.value) {
      best.value = val;
      best.direction = v;
    }
  };

  if (c.dim() == 1) {
    best.direction = Eigen::VectorXd::Ones(1);
    best.value = directional_moment(c, best.direction, p);
    return best;
  }
  if (c.dim() == 2) {
    for (int j = 0; j < resolution; ++j) {
      double th = 2.0 * M_PI * j / resolution;
      Eigen::VectorXd v(2);
      v << std::cos(th), std::sin(th);
      consider(v);
    }
  } else {
    int polar = resolution / 2 + 1;
    for (int a = 0; a < resolution; ++a) {
      double th = 2.0 * M_PI * a / resolution;
      for (int b = 0; b < polar; ++b) {
        double ph = M_PI * b / (polar - 1);
        Eigen::VectorXd v(3);
        v << std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th), std::cos(ph);
        consider(v);
      }
    }
  }
  detail2::polish_direction(c, p, best.direction, best.value);
  return best;
}

}  // namespace cutcloud::oracle
