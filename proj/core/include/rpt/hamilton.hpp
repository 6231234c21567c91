#ifndef RPT_HAMILTON_HPP
#define RPT_HAMILTON_HPP

#include <optional>
#include <vector>

#include "rpt/partition.hpp"
#include "rpt/path_system.hpp"

namespace rpt {

/// A cycle plus the edge set it was required to contain. `cycle` is stored in
/// canonical orientation: starts at its minimum id, second entry is the
/// smaller of the two cycle-neighbours of the start.
struct CycleResult {
    std::vector<int> cycle;
    std::vector<Edge> contains;

    void canonicalize();
    /// cyclic adjacency in g, no repeats, covers `must_cover`, contains all
    /// required edges; throws contract_error otherwise.
    void verify(const Graph& g, const VertexSet& must_cover) const;
};

struct OracleOptions {
    int bound = 64;  // capability limit on |V|
};

/// Exact Hamilton-cycle decision on the vertices of `host` by pruned
/// backtracking: required edges form vertex-disjoint paths and must appear;
/// forbidden edges must not. Returns nothing only after exhausting the search
/// space (a proof of non-Hamiltonicity).
std::optional<CycleResult> hamilton_oracle(const Graph& g, const VertexSet& host,
                                           const std::vector<Edge>& required = {},
                                           const std::vector<Edge>& forbidden = {},
                                           const OracleOptions& opt = {});

/// Digraph variant. `order` lists vertices that the directed cycle must visit
/// in the given cyclic order.
std::optional<std::vector<int>> hamilton_oracle_directed(const Digraph& d, const std::vector<int>& order = {},
                                                         const OracleOptions& opt = {});

/// Exact longest cycle (branch and bound over biconnected blocks); returns 0
/// for forests. Used to verify circumference bounds on extremal instances.
int longest_cycle(const Graph& g);

/// BFS path x -> y in a certified robust outexpander, asserting the 1/nu
/// length bound from the expansion hypothesis.
std::vector<int> short_path_directed(const Digraph& d, int x, int y, const Rat& nu);

/// BFS path in a certified bipartite robust expander with near-balanced
/// sides; asserts the 4/nu bound.
std::vector<int> short_path_bipartite(const Graph& g, const VertexSet& a, const VertexSet& b, int x, int y,
                                      const Rat& nu);

/// The M-auxiliary digraph on side b: with v' the M-partner of v, arc v->x
/// iff x is a g-neighbour of v' other than v.
Digraph m_auxiliary_digraph(const Graph& g, const VertexSet& a, const VertexSet& b, const std::vector<Edge>& m);

/// Lifts a Hamilton cycle of the M-auxiliary digraph back to a Hamilton cycle
/// of g alternating with M; verified edge by edge.
std::vector<int> lift_m_auxiliary_cycle(const Graph& g, const std::vector<Edge>& m, const std::vector<int>& aux_cycle);

struct LinkRequest {
    VertexSet host;
    std::vector<std::pair<int, int>> pairs;
    bool spanning = true;
    std::optional<std::pair<VertexSet, VertexSet>> bipartition;  // (A,B): side counts of terminals must agree
    Params params;
    bool override_p_guard = false;
};

/// Vertex-disjoint paths joining the requested pairs in order and covering
/// host exactly. nullopt is an exhaustive-search proof that no such linkage
/// exists.
std::optional<std::vector<std::vector<int>>> hamilton_p_linked(const Graph& g, const LinkRequest& req,
                                                               const OracleOptions& opt = {});

/// Cycle assembly: orders the tour paths along the Euler tour, links the
/// per-class endpoint pairs by Hamilton p-linkages, and splices the cycle.
CycleResult assemble_hamilton(const Graph& g, const WeakSubpartition& sub, const PathSystem& tour,
                              const OracleOptions& opt = {});

/// Balanced-bipartite Hamilton cycle through ps using only h-edges otherwise;
/// v0-vertices must be interior to ps and are contracted through.
CycleResult balanced_bipartite_hamilton(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& v0,
                                        const Graph& h, const PathSystem& ps, const Params& params,
                                        const OracleOptions& opt = {});

struct PipelineOptions {
    Schedule schedule;
    OracleOptions oracle;
};

/// Either a verified Hamilton cycle or the robust partition as a stability
/// witness, never both.
struct PipelineResult {
    std::optional<CycleResult> cycle;
    std::optional<RobustPartition> stability;
    RefinementTrace trace;
    std::string route;  // which (k,l) case ran
};

PipelineResult find_hamilton_pipeline(const Graph& g, const PipelineOptions& opt = {});

struct LongCycleResult {
    CycleResult cycle;
    int covered;             // vertices on the cycle
    int selected_classes;
    RobustPartition partition;
    Rat bound{0, 1};         // min{t/(r-1), 1-eps}*n when r supplied
};

LongCycleResult long_cycle_pipeline(const Graph& g, int t, const PipelineOptions& opt = {}, int r = 0,
                                    const Rat& epsilon = Rat(0, 1));

}  // namespace rpt

#endif
