#ifndef RPT_PARTITION_HPP
#define RPT_PARTITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rpt/certify.hpp"
#include "rpt/graph.hpp"

namespace rpt {

/// Parameter schedule for the refinement engine: an explicit rational
/// cascade rho_1 <= nu_1 <= rho_2 <= ...; its fitness for a given graph is
/// established post-hoc by validation.
struct Schedule {
    Rat tau{1, 5};
    Rat rho1{1, 400};
    int max_levels = 0;  // 0: derive 3*ceil(2/alpha) from the minimum degree
    CertifyOptions certify;

    struct Level {
        Rat rho, nu;
    };
    /// Level parameters for a graph on n vertices with minimum degree delta.
    std::vector<Level> levels_for(int n, int delta) const;
};

struct RefineStep {
    enum class Kind { Split, MarkBipartite, BipartiteSplit, Certified, Terminal, ShuffleMove, RebalanceMove };
    Kind kind;
    int level;
    VertexSet target;
    std::vector<VertexSet> pieces;  // Split: the two pieces; MarkBipartite: {A, B}
    std::string note;
};

struct RefinementTrace {
    std::vector<Schedule::Level> levels;
    Rat tau{1, 5};
    int levels_used = 0;
    bool out_of_regime = false;
    std::vector<RefineStep> steps;
    std::vector<int> progress_measure;  // 2|U_i| + |W_i| per completed level
    ValidationReport validation;
};

/// Split of a component around a verified non-expanding set S: either two
/// smaller components or a close-to-bipartite certificate, by case analysis
/// on the robust neighbourhood of S.
/// params.rho is the target level rho' used to validate the output pieces.
struct SplitOutcome {
    enum class Kind { Split, CloseBipartite };
    Kind kind;
    VertexSet u1, u2;  // CloseBipartite: the bipartition (Y | U2, Z)
};
SplitOutcome split_component(const Graph& g, const VertexSet& u, const VertexSet& witness, const Params& params);

/// Computes a robust partition by iterative refinement, then shuffling and
/// per-class rebalancing. Classes that can neither certify nor split at desk
/// scale are kept with their current label and flagged in the trace; the
/// final validation report records the truth clause by clause.
std::pair<RobustPartition, RefinementTrace> refine_to_robust_partition(const Graph& g, const Schedule& sched = {});

/// Re-applies the recorded refinement steps; the result must equal the
/// engine's final classes (used to audit traces).
std::vector<VertexSet> replay_trace(const Graph& g, const RefinementTrace& trace);

/// Moves high-outside-degree vertices between classes until every vertex
/// weakly prefers its own class ((D4)); the total cut never increases.
std::vector<VertexSet> shuffle_partition(const Graph& g, const std::vector<VertexSet>& classes, const Rat& rho);

/// Side-swaps until every vertex weakly prefers the opposite side ((D5));
/// e(A') + e(B') never increases.
std::pair<VertexSet, VertexSet> bipartite_rebalance(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Two-copy regularization of an almost regular graph: returns the
/// (delta+B)-regular graph on 2n vertices and the copy mapping (v -> v, n+v).
struct Regularized {
    Graph graph;
    int added_degree;                           // B = beta*n
    std::vector<std::pair<int, int>> mapping;   // original -> (copy1, copy2)
};
Regularized regularize_almost_regular(const Graph& g, const Rat& gamma);

}  // namespace rpt

#endif
