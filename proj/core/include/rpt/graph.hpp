#ifndef RPT_GRAPH_HPP
#define RPT_GRAPH_HPP

#include <utility>
#include <vector>

#include "rpt/rational.hpp"
#include "rpt/vertex_set.hpp"

namespace rpt {

using Edge = std::pair<int, int>;  // stored with first < second

/// Undirected simple graph over {0..n-1}. Mutating calls are construction
/// phase only; all algorithms treat the graph as immutable.
class Graph {
  public:
    Graph() : n_(0), m_(0) {}
    explicit Graph(int n) : n_(n), m_(0), adj_(n, VertexSet(n)) {}

    int n() const { return n_; }
    long long edge_count() const { return m_; }

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return u >= 0 && u < n_ && adj_[u].contains(v); }

    const VertexSet& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].size(); }
    int degree_in(int v, const VertexSet& s) const { return adj_[v].intersection_size(s); }

    int min_degree() const;
    int max_degree() const;
    bool is_regular() const { return n_ == 0 || min_degree() == max_degree(); }

    std::vector<Edge> edges() const;  // ascending lexicographic

    /// Edges with both endpoints in a.
    long long edges_within(const VertexSet& a) const;
    /// e(A,B) per the convention e'(A,B) = sum_{x in A} d_B(x) = e(A,B) + e(A cap B):
    /// each edge writable as xy with x in A, y in B counts once.
    long long edges_between(const VertexSet& a, const VertexSet& b) const;

    struct EdgeCounts {
        long long e_ab;        // e(A,B)
        long long e_prime_ab;  // e'(A,B) = e(A,B) + e(A cap B)
        long long e_a;         // e(A)
    };
    EdgeCounts edge_counts(const VertexSet& a, const VertexSet& b) const;

    /// Induced subgraph keeping original vertex ids outside `keep` isolated.
    Graph induced(const VertexSet& keep) const;

  private:
    int n_;
    long long m_;
    std::vector<VertexSet> adj_;
};

/// Simple digraph (no loops); used by the Hamilton machinery.
class Digraph {
  public:
    Digraph() : n_(0), m_(0) {}
    explicit Digraph(int n) : n_(n), m_(0), out_(n, VertexSet(n)), in_(n, VertexSet(n)) {}

    int n() const { return n_; }
    long long arc_count() const { return m_; }

    void add_arc(int u, int v);
    bool has_arc(int u, int v) const { return u >= 0 && u < n_ && out_[u].contains(v); }

    const VertexSet& out_neighbours(int v) const { return out_[v]; }
    const VertexSet& in_neighbours(int v) const { return in_[v]; }
    int out_degree(int v) const { return out_[v].size(); }
    int in_degree(int v) const { return in_[v].size(); }
    /// delta^0: minimum over all in- and out-degrees.
    int min_semi_degree() const;

  private:
    int n_;
    long long m_;
    std::vector<VertexSet> out_, in_;
};

/// Exact parameter tuple (rho, nu, tau and optional auxiliaries), all rational.
struct Params {
    Rat rho, nu, tau;
    Rat eta{0, 1}, gamma{0, 1}, epsilon{0, 1};  // optional; zero when unset

    Params() : rho(1, 100), nu(1, 10), tau(1, 5) {}
    Params(Rat r, Rat n, Rat t) : rho(r), nu(n), tau(t) { validate(); }

    void validate() const {
        Rat zero(0, 1), one(1, 1);
        if (!(zero < rho && rho <= nu && nu <= tau && tau < one))
            throw input_error("params must satisfy 0 < rho <= nu <= tau < 1, got rho=" + rho.str() +
                              " nu=" + nu.str() + " tau=" + tau.str());
    }
};

// ---- graph-core operations ----

/// kappa(G) via unit-capacity vertex max-flow over non-adjacent pairs;
/// complete graphs return n-1 by convention. Requires n >= 2.
int vertex_connectivity(const Graph& g);

/// Maximum matching of g[a,b] (bipartite augmenting paths; a,b disjoint) or of
/// g (general mode, a = b = V, blossom contraction). Edges come back with
/// first < second, sorted.
std::vector<Edge> max_matching(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Connected components of g - deleted; each component ascending, list sorted
/// by minimum element.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& deleted);

bool is_connected_within(const Graph& g, const VertexSet& host);

}  // namespace rpt

#endif
