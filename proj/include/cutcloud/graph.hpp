// Regular multigraphs, their symmetric stochastic walk matrix, expansion of
// vertex sets, and the instance generators used throughout.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cutcloud/common.hpp"

namespace cutcloud {

struct VertexSet {
  std::vector<int> indices;  // strictly increasing

  static VertexSet of(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i)
      if (ids[i] == ids[i - 1])
        throw invalid_argument_error("VertexSet: duplicate index " + std::to_string(ids[i]));
    return VertexSet{std::move(ids)};
  }

  static VertexSet range(int lo, int hi) {  // [lo, hi)
    std::vector<int> ids(hi - lo);
    std::iota(ids.begin(), ids.end(), lo);
    return VertexSet{std::move(ids)};
  }

  int size() const { return static_cast<int>(indices.size()); }
  bool empty() const { return indices.empty(); }
  bool contains(int v) const { return std::binary_search(indices.begin(), indices.end(), v); }

  bool disjoint_from(const VertexSet& other) const {
    for (int v : indices)
      if (other.contains(v)) return false;
    return true;
  }

  VertexSet complement(int n) const {
    std::vector<int> out;
    out.reserve(n - size());
    for (int v = 0; v < n; ++v)
      if (!contains(v)) out.push_back(v);
    return VertexSet{std::move(out)};
  }

  Eigen::VectorXd indicator(int n) const {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    for (int v : indices) f[v] = 1.0;
    return f;
  }
};

using Edge = std::pair<int, int>;  // one unit of adjacency mass; (u,u) adds 1 to A_uu

struct RegularGraph {
  int n = 0;
  int d = 0;
  std::vector<Edge> edges;
  Eigen::MatrixXd walk;  // W = A/d, symmetric, rows sum to 1

  static RegularGraph from_edges(int n, int d, std::vector<Edge> edges) {
    if (n <= 0 || d <= 0) throw invalid_argument_error("graph: n and d must be positive");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw invalid_argument_error("graph: edge endpoint out of range");
      a(u, v) += 1.0;
      if (u != v) a(v, u) += 1.0;
    }
    for (int u = 0; u < n; ++u) {
      double deg = a.row(u).sum();
      if (deg != static_cast<double>(d))
        throw invalid_argument_error("graph: vertex " + std::to_string(u) + " has degree " +
                                     std::to_string(deg) + ", want " + std::to_string(d));
    }
    RegularGraph g;
    g.n = n;
    g.d = d;
    g.edges = std::move(edges);
    g.walk = a / static_cast<double>(d);
    return g;
  }
};

struct CutReport {
  VertexSet set;
  int size = 0;
  double phi = 0.0;
  double quad_form = 0.0;  // <1_S, W 1_S>
};

struct PlantedInstance {
  RegularGraph graph;
  std::optional<VertexSet> planted;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string kind;
};

inline CutReport expansion(const RegularGraph& g, const VertexSet& s) {
  if (s.empty()) throw invalid_argument_error("expansion: empty vertex set");
  for (int v : s.indices)
    if (v < 0 || v >= g.n) throw invalid_argument_error("expansion: index out of range");
  double quad = 0.0;
  for (int i : s.indices)
    for (int j : s.indices) quad += g.walk(i, j);
  CutReport r;
  r.set = s;
  r.size = s.size();
  r.quad_form = quad;
  r.phi = 1.0 - quad / s.size();
  return r;
}

inline Eigen::VectorXd walk_apply(const RegularGraph& g, Eigen::VectorXd f, int t) {
  if (t < 0) throw invalid_argument_error("walk_apply: negative step count");
  if (f.size() != g.n) throw invalid_argument_error("walk_apply: vector length mismatch");
  for (int i = 0; i < t; ++i) f = g.walk * f;
  return f;
}

struct GenParams {
  int n = 0;
  int d = 0;
  double delta = 0.0;
  double eps = 0.0;
};

namespace detail {

// Configuration-model d-regular multigraph on vertices [lo, lo+count).
// Each stub pairing emits one edge line, so a self-pairing appears twice as (u,u).
inline std::vector<Edge> config_model(int lo, int count, int d, std::mt19937_64& rng) {
  if (static_cast<long long>(count) * d % 2 != 0)
    throw generation_failed("config model: count*d must be even");
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(count) * d);
  for (int v = 0; v < count; ++v)
    for (int k = 0; k < d; ++k) stubs.push_back(lo + v);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v) {
      // one loop consumes two stubs and must carry adjacency mass 2
      edges.emplace_back(u, u);
      edges.emplace_back(u, u);
    } else {
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  return edges;
}

inline std::vector<Edge> complete_selfloop_edges(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    edges.emplace_back(u, u);
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

// Swap endpoints of `k` disjoint edge pairs across the two blocks, creating
// exactly 2k cross edges while preserving every degree.
inline void crossing_swaps(std::vector<Edge>& edges, const std::vector<std::size_t>& left_ids,
                           const std::vector<std::size_t>& right_ids, int k,
                           std::mt19937_64& rng) {
  std::vector<std::size_t> left = left_ids, right = right_ids;
  std::shuffle(left.begin(), left.end(), rng);
  std::shuffle(right.begin(), right.end(), rng);
  if (static_cast<int>(left.size()) < k || static_cast<int>(right.size()) < k)
    throw generation_failed("planted cut: not enough non-loop edges to rewire");
  for (int i = 0; i < k; ++i) {
    auto& [a, b] = edges[left[i]];
    auto& [c, e] = edges[right[i]];
    std::swap(b, c);  // (a,b),(c,e) -> (a,c),(b,e)
  }
}

}  // namespace detail

inline PlantedInstance generate(const std::string& kind, const GenParams& p, std::uint64_t seed) {
  PlantedInstance inst;
  inst.seed = seed;
  inst.kind = kind;
  inst.delta = p.delta;
  inst.eps = p.eps;
  auto rng = make_rng(seed);

  if (kind == "complete_selfloop") {
    if (p.n < 1) throw invalid_argument_error("complete_selfloop: n >= 1 required");
    inst.graph = RegularGraph::from_edges(p.n, p.n, detail::complete_selfloop_edges(p.n));
    return inst;
  }

  if (kind == "cycle") {
    if (p.n < 3) throw invalid_argument_error("cycle: n >= 3 required");
    std::vector<Edge> edges;
    for (int u = 0; u < p.n; ++u) edges.emplace_back(u, (u + 1) % p.n);
    inst.graph = RegularGraph::from_edges(p.n, 2, edges);
    return inst;
  }

  if (kind == "disjoint_cliques") {
    // two self-loop cliques of size m = n/2
    if (p.n < 4 || p.n % 2 != 0) throw invalid_argument_error("disjoint_cliques: even n >= 4 required");
    int m = p.n / 2;
    std::vector<Edge> edges = detail::complete_selfloop_edges(m);
    for (const auto& [u, v] : detail::complete_selfloop_edges(m)) edges.emplace_back(u + m, v + m);
    inst.graph = RegularGraph::from_edges(p.n, m, edges);
    inst.planted = VertexSet::range(0, m);
    inst.delta = 0.5;
    inst.eps = 0.0;
    return inst;
  }

  if (kind == "random_regular") {
    if (p.n < 2 || p.d < 1 || p.d >= p.n)
      throw invalid_argument_error("random_regular: need 1 <= d < n");
    if (static_cast<long long>(p.n) * p.d % 2 != 0)
      throw generation_failed("random_regular: n*d must be even");
    inst.graph = RegularGraph::from_edges(p.n, p.d, detail::config_model(0, p.n, p.d, rng));
    return inst;
  }

  if (kind == "planted_sparse_cut") {
    int np = static_cast<int>(std::lround(p.delta * p.n));
    if (np < 2) throw invalid_argument_error("planted_sparse_cut: delta*n >= 2 required");
    if (p.n - np < 2) throw invalid_argument_error("planted_sparse_cut: complement too small");
    if (p.eps < 0.0 || p.eps > 1.0) throw invalid_argument_error("planted_sparse_cut: eps in [0,1]");
    if (static_cast<long long>(np) * p.d % 2 != 0 ||
        static_cast<long long>(p.n - np) * p.d % 2 != 0)
      throw generation_failed("planted_sparse_cut: block sizes incompatible with degree parity");
    int k = static_cast<int>(std::floor(p.eps * p.d * np / 2.0));
    const int retry_cap = 32;
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
      std::vector<Edge> edges = detail::config_model(0, np, p.d, rng);
      std::size_t left_count = edges.size();
      auto right = detail::config_model(np, p.n - np, p.d, rng);
      edges.insert(edges.end(), right.begin(), right.end());
      std::vector<std::size_t> left_ids, right_ids;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].first == edges[i].second) continue;  // loops cannot be rewired
        (i < left_count ? left_ids : right_ids).push_back(i);
      }
      if (static_cast<int>(left_ids.size()) < k || static_cast<int>(right_ids.size()) < k)
        continue;
      detail::crossing_swaps(edges, left_ids, right_ids, k, rng);
      RegularGraph g = RegularGraph::from_edges(p.n, p.d, edges);
      VertexSet planted = VertexSet::range(0, np);
      if (expansion(g, planted).phi <= p.eps + 1e-12) {
        inst.graph = std::move(g);
        inst.planted = std::move(planted);
        return inst;
      }
    }
    throw generation_failed("planted_sparse_cut: expansion target not met after 32 attempts");
  }

  throw invalid_argument_error("generate: unknown kind '" + kind + "'");
}

}  // namespace cutcloud
