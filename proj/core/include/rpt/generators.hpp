#ifndef RPT_GENERATORS_HPP
#define RPT_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "rpt/certify.hpp"
#include "rpt/graph.hpp"

namespace rpt {

/// Two cliques K_{m+1} joined through an independent set A of size m (complete
/// to an independent B of size m-1), made m-regular by deleting a pairing of
/// the matched clique vertices. Non-Hamiltonian: G - A has |A|+1 components.
/// Requires m divisible by 4.
Graph gen_fig1i(int m);

/// Three cliques K_{3m} with matchings A_i-B_i removed and two apex vertices;
/// (3m-1)-regular, 2-connected, non-Hamiltonian. Requires m >= 1.
Graph gen_fig1ii(int m);

/// The circumference-extremal family: cut set X of size t, r-1 cliques
/// K_{D+1} with internal matchings replaced by edges into X. t-connected,
/// D-regular with D = 2k(r-1); any cycle meets at most t blocks.
Graph gen_bestposs(int t, int r, int k);

/// Configuration model with rejection; deterministic for a fixed seed.
Graph gen_random_regular(int n, int d, uint64_t seed);

struct PlantedSpec {
    std::vector<int> class_sizes;  // expander: vertices per class; bipartite: per side
    int bridge = 1;
    uint64_t seed = 0;
    bool bipartite = false;
};

struct PlantedInstance {
    Graph graph;
    RobustPartition truth;
};

/// Dense planted classes joined by width-`bridge` matchings, degrees
/// re-equalized by internal deletions (the Figure-1 trick). Bipartite mode
/// plants K_{s,s}-minus-perfect-matching classes instead.
PlantedInstance gen_planted(const PlantedSpec& spec);

}  // namespace rpt

#endif
