// Shared test fixtures.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cutcloud/graph.hpp"

namespace cutcloud::fixtures {

struct TwoPlanted {
  PlantedInstance inst;  // planted = first block
  VertexSet first;
  VertexSet second;
};

// Three d-regular blocks: two planted blocks of size round(delta n) rewired
// into the bulk at rates eps1 and eps2 (0 leaves a block disconnected), the
// rest filling up the remaining vertices. Violates planted-cut uniqueness by
// construction.
inline TwoPlanted two_planted_instance(int n, int d, double delta, double eps1, double eps2,
                                       std::uint64_t seed) {
  int np = static_cast<int>(std::lround(delta * n));
  if (np < 2 || n - 2 * np < 2)
    throw invalid_argument_error("two_planted_instance: blocks too small");
  if ((static_cast<long long>(np) * d) % 2 != 0 ||
      (static_cast<long long>(n - 2 * np) * d) % 2 != 0)
    throw generation_failed("two_planted_instance: block size parity");

  auto rng = make_rng(seed);
  auto ids_within = [](const std::vector<Edge>& edges, int lo, int hi) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u != v && u >= lo && u < hi && v >= lo && v < hi) ids.push_back(i);
    }
    return ids;
  };
  int k1 = static_cast<int>(std::floor(eps1 * d * np / 2.0));
  int k2 = static_cast<int>(std::floor(eps2 * d * np / 2.0));

  for (int attempt = 0; attempt < 32; ++attempt) {
    try {
      std::vector<Edge> edges = detail::config_model(0, np, d, rng);
      auto block_b = detail::config_model(np, np, d, rng);
      auto rest = detail::config_model(2 * np, n - 2 * np, d, rng);
      edges.insert(edges.end(), block_b.begin(), block_b.end());
      edges.insert(edges.end(), rest.begin(), rest.end());

      if (k1 > 0)
        detail::crossing_swaps(edges, ids_within(edges, 0, np), ids_within(edges, 2 * np, n), k1,
                               rng);
      if (k2 > 0)  // recollect: the first batch consumed some bulk edges
        detail::crossing_swaps(edges, ids_within(edges, np, 2 * np),
                               ids_within(edges, 2 * np, n), k2, rng);

      TwoPlanted out;
      out.inst.graph = RegularGraph::from_edges(n, d, edges);
      out.first = VertexSet::range(0, np);
      out.second = VertexSet::range(np, 2 * np);
      if (expansion(out.inst.graph, out.first).phi > eps1 + 1e-12) continue;
      if (expansion(out.inst.graph, out.second).phi > eps2 + 1e-12) continue;
      out.inst.planted = out.first;
      out.inst.kind = "two_planted";
      out.inst.delta = delta;
      out.inst.eps = std::max(eps1, eps2);
      out.inst.seed = seed;
      return out;
    } catch (const generation_failed&) {
      continue;
    }
  }
  throw generation_failed("two_planted_instance: no attempt met both expansion targets");
}

}  // namespace cutcloud::fixtures
