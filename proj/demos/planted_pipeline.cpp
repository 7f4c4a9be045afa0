// End-to-end walkthrough: plant a sparse cut, embed the graph, recover the
// cut spectrally, reduce to a robust mean-estimation instance, and run the
// decision rule on both an informed and a naive estimator.

#include <cstdio>
#include <cstdlib>

#include "cutcloud/graph.hpp"
#include "cutcloud/reductions.hpp"
#include "cutcloud/robuststats.hpp"
#include "cutcloud/rounding.hpp"
#include "cutcloud/spectral.hpp"

using namespace cutcloud;

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  GenParams params;
  params.n = 400;
  params.d = 16;
  params.delta = 0.05;
  params.eps = 0.05;
  PlantedInstance inst = generate("planted_sparse_cut", params, seed);
  std::printf("instance: n=%d d=%d planted |S|=%d (seed %llu)\n", inst.graph.n, inst.graph.d,
              inst.planted->size(), static_cast<unsigned long long>(seed));

  SpectralEmbedding e = embed(inst.graph);
  std::printf("embedding: %d coordinates above the walk threshold\n", e.k());

  RoundingTrace tr =
      round_analytically_sparse(inst.graph, e, e.b.col(1).normalized(), 0.1, 0.7, -1, 4.0, 1.0);
  int overlap = 0;
  for (int v : tr.chosen.set.indices)
    if (inst.planted->contains(v)) ++overlap;
  std::printf("rounded cut: |T|=%d phi=%.3f overlap with planted=%d after %d walk steps\n",
              tr.chosen.size, tr.chosen.phi, overlap, tr.walk_steps);

  RobustMeanInstance rm = reduce_graph_to_robust_mean(inst);
  std::printf("reduction: cloud of %d points in dim %d, corruption budget %.3f\n", rm.cloud.n(),
              rm.cloud.dim(), rm.corruption);

  std::vector<int> inliers;
  for (int v = 0; v < inst.graph.n; ++v)
    if (!inst.planted->contains(v)) inliers.push_back(v);
  EstimatorResult informed =
      estimate_mean(rm.cloud, rm.corruption, EstimatorStrategy::known_inliers, inliers);
  EstimatorResult naive = estimate_mean(rm.cloud, rm.corruption, EstimatorStrategy::sample_mean);
  bool informed_yes = sse_decision(informed.mu_hat, inst.delta, 0.05);
  bool naive_yes = sse_decision(naive.mu_hat, inst.delta, 0.05);
  std::printf("decision: known-inlier estimator says %s, sample mean says %s\n",
              informed_yes ? "sparse cut present" : "no sparse cut",
              naive_yes ? "sparse cut present" : "no sparse cut");
  return 0;
}
