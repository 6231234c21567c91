#ifndef RPT_PATH_SYSTEM_HPP
#define RPT_PATH_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "rpt/certify.hpp"
#include "rpt/graph.hpp"

namespace rpt {

/// Vertex-disjoint collection of paths, each a vertex sequence. Trivial
/// one-vertex paths are tolerated internally by the pruning machinery and
/// dropped on output.
class PathSystem {
  public:
    PathSystem() : n_(0) {}
    explicit PathSystem(int n) : n_(n) {}
    PathSystem(int n, std::vector<std::vector<int>> paths);

    static PathSystem from_edges(int n, const std::vector<Edge>& edges);

    int universe() const { return n_; }
    const std::vector<std::vector<int>>& paths() const { return paths_; }
    size_t size() const { return paths_.size(); }
    bool empty() const { return paths_.empty(); }

    void add_path(std::vector<int> p);

    VertexSet vertices() const;
    VertexSet endpoints() const;  // both ends of every nontrivial path
    VertexSet internals() const;
    long long edge_count() const;
    std::vector<Edge> edges() const;

    int degree_of(int v) const;  // 0, 1 or 2

    int end_count(const VertexSet& u) const;  // End_P(U)
    int int_count(const VertexSet& u) const;  // Int_P(U)

    /// Edges of the system inside a / between disjoint a and b.
    long long edges_within(const VertexSet& a) const;
    long long edges_between(const VertexSet& a, const VertexSet& b) const;

    /// Paths are pairwise vertex-disjoint and all consecutive pairs are edges
    /// of g. Throws input_error when violated.
    void validate_against(const Graph& g) const;

    /// Drop one-vertex paths.
    PathSystem without_trivial() const;

  private:
    int n_;
    std::vector<std::vector<int>> paths_;
};

/// Multigraph over a family of disjoint parts with one edge per path of the
/// generating system; loops allowed, contributing 2 to the degree.
struct ReducedMultigraph {
    std::vector<VertexSet> parts;
    std::vector<std::pair<int, int>> edges;  // part indices, loop when equal

    int degree(int part) const;
    bool connected_spanning() const;  // every part reached by the edge set
    bool all_even() const;
    /// Hierholzer; edge indices in tour order, or nothing if no Euler tour.
    std::optional<std::vector<int>> euler_tour() const;
};

/// Builds R and, when it exists, an Euler tour. ps must be anchored in the
/// union of parts.
std::pair<ReducedMultigraph, std::optional<std::vector<int>>> reduced_multigraph_euler(
    const std::vector<VertexSet>& parts, const PathSystem& ps);

/// Matching of size >= k between a and its complement in a k-connected graph.
PathSystem menger_matching(const Graph& g, const VertexSet& a, int k);

/// Maximum matching of the subgraph H given by `host_edges`; asserts the
/// Vizing bound ceil(e(H)/(Delta(H)+1)).
PathSystem bounded_matching(const Graph& g, const std::vector<Edge>& host_edges);

/// Both sides of 2(e(A)-e(B)) + e(A,V) - e(B,V) = (|A|-|B|)*D for a regular g
/// and a tripartition A,B,V.
std::pair<long long, long long> regular_partition_identity(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                           const VertexSet& v);

/// Path system with <= 4 crossing edges whose reduced multigraph over <= 3
/// parts is an Euler tour, satisfying the degree-count clause.
PathSystem three_part_connector(const Graph& g, const std::vector<VertexSet>& parts);

/// Extends ps inside U = a|b into an (A,B)-balanced system with footprint at
/// most 9*rho*n in U.
PathSystem path_cover_balance(const Graph& g, const VertexSet& a, const VertexSet& b, const PathSystem& ps,
                              const Rat& rho);

/// Weak robust subpartition: labelled classes, not required to cover V(G).
struct WeakSubpartition {
    std::vector<ComponentLabel> classes;
    Params params;
    Rat eta{1, 4};

    std::vector<VertexSet> parts() const;
    int k() const;
    int l() const;
};

/// Iterates path_cover_balance over the bipartite classes; the result is a
/// U-extension of ps and a U-tour with parameter 9*rho.
PathSystem balance_extend(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps, const Rat& rho);

/// Anchored path system whose reduced multigraph over t parts is the cycle
/// C_t (C_1 = loop, C_2 = double edge). Needs g t-connected, |U_i| >= 2t.
PathSystem cycle_connector(const Graph& g, const std::vector<VertexSet>& parts);

/// Per-path subpath deletion until every part meets the system in at most
/// 2*t vertices, preserving the Euler tour.
PathSystem prune_path_system(const std::vector<VertexSet>& parts, const PathSystem& ps);

/// cycle_connector + prune + per-class trimming + balance_extend; returns the
/// adjusted subpartition and a tour with parameter 54*rho.
std::pair<WeakSubpartition, PathSystem> subpartition_tour(const Graph& g, const WeakSubpartition& sub, int t);

/// Independent (T1)-(T4) validator; checks from scratch, never trusting
/// builder bookkeeping. Returns the list of violated clauses (empty = valid).
std::vector<std::string> tour_violations(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps,
                                         const Rat& gamma);
bool is_tour(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps, const Rat& gamma);

}  // namespace rpt

#endif
