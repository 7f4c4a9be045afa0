// Walk-mixing trace: start the lazy walk from a small vertex set on an
// expander and print the squared norm of the evolving indicator until it
// drops below the mixing threshold. Output is CSV, one row per step.

#include <cstdio>
#include <cstdlib>

#include "cutcloud/graph.hpp"
#include "cutcloud/spectral.hpp"

using namespace cutcloud;

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 400;
  int size = argc > 2 ? std::atoi(argv[2]) : 8;
  std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 42;
  const double eps = 0.05, delta = 0.05;

  GenParams params;
  params.n = n;
  params.d = 20;
  PlantedInstance inst = generate("random_regular", params, seed);
  SpectralEmbedding e = embed(inst.graph);

  VertexSet t = VertexSet::range(0, size);
  std::fprintf(stderr, "walking 1_T for |T|=%d on a %d-regular graph with n=%d\n", size,
               inst.graph.d, n);
  MixResult mix = walk_until_mixed(inst.graph, e, t, eps, delta,
                                   static_cast<int>(4.0 * std::log(double(n))) + 1);
  std::printf("step,norm_sq\n");
  for (std::size_t step = 0; step < mix.norms.size(); ++step)
    std::printf("%zu,%.12g\n", step, mix.norms[step]);
  std::fprintf(stderr, "mixed at t*=%d\n", mix.t_star);
  return 0;
}
