#ifndef RPT_TEST_HELPERS_HPP
#define RPT_TEST_HELPERS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "rpt/graph.hpp"

namespace rpt::testing {

inline Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
    return g;
}

/// two disjoint copies of g
inline Graph disjoint_double(const Graph& g) {
    Graph h(2 * g.n());
    for (auto [u, v] : g.edges()) {
        h.add_edge(u, v);
        h.add_edge(g.n() + u, g.n() + v);
    }
    return h;
}

inline Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));  // outer cycle
        g.add_edge(i, i + 5);                                            // spokes
        g.add_edge(std::min(5 + i, 5 + (i + 2) % 5), std::max(5 + i, 5 + (i + 2) % 5));  // pentagram
    }
    return g;
}

inline VertexSet range_set(int n, int lo, int hi) {
    VertexSet s(n);
    for (int v = lo; v < hi; ++v) s.add(v);
    return s;
}

// ---- independent oracles (brute force; never call the code under test) ----

/// Hamiltonicity by permutation search.
inline bool brute_hamiltonian(const Graph& g) {
    int n = g.n();
    if (n < 3) return false;
    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = g.has_edge(0, perm.front()) && g.has_edge(perm.back(), 0);
        for (size_t i = 0; ok && i + 1 < perm.size(); ++i) ok = g.has_edge(perm[i], perm[i + 1]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Maximum matching size by recursion over the edge list.
inline int brute_max_matching(const Graph& g) {
    auto edges = g.edges();
    std::vector<char> used(g.n(), 0);
    std::function<int(size_t)> rec = [&](size_t i) -> int {
        if (i >= edges.size()) return 0;
        int best = rec(i + 1);
        auto [u, v] = edges[i];
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            best = std::max(best, 1 + rec(i + 1));
            used[u] = used[v] = 0;
        }
        return best;
    };
    return rec(0);
}

/// Direct-definition robust-expander check: enumerate subsets of host in the
/// window and test |RN| >= |S| + nu*|host| with rational arithmetic.
inline bool brute_robust_expander(const Graph& g, const VertexSet& host, const Rat& nu, const Rat& tau) {
    std::vector<int> ids = host.to_vector();
    int h = static_cast<int>(ids.size());
    long long total = 1LL << h;
    for (long long mask = 1; mask < total; ++mask) {
        int s = __builtin_popcountll(mask);
        if (!(tau.leq_times(s, h) && tau.leq_times(h - s, h))) continue;
        VertexSet sset(g.n());
        for (int i = 0; i < h; ++i)
            if (mask >> i & 1) sset.add(ids[i]);
        int rn = 0;
        for (int v : ids) {
            int d = g.neighbours(v).intersection_size(sset);
            if (nu.leq_times(d, h)) ++rn;
        }
        if (!nu.leq_times(rn - s, h)) return false;
    }
    return true;
}

/// Longest cycle by DFS over all simple cycles (tiny graphs only).
inline int brute_longest_cycle(const Graph& g) {
    int n = g.n();
    int best = 0;
    std::vector<char> vis(n, 0);
    std::function<void(int, int, int)> dfs = [&](int start, int cur, int len) {
        if (len >= 3 && g.has_edge(cur, start)) best = std::max(best, len);
        g.neighbours(cur).for_each([&](int w) {
            if (w > start && !vis[w]) {
                vis[w] = 1;
                dfs(start, w, len + 1);
                vis[w] = 0;
            }
        });
    };
    for (int s = 0; s < n; ++s) {
        vis[s] = 1;
        dfs(s, s, 1);
        vis[s] = 0;
    }
    return best;
}

/// Seeded Erdos-Renyi-ish graph for property tests.
inline Graph random_graph(int n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

}  // namespace rpt::testing

#endif
