#include "rpt/hamilton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace rpt {

namespace {

int part_of_helper(const std::vector<VertexSet>& parts, int v) {
    for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i].contains(v)) return static_cast<int>(i);
    return -1;
}

struct Compact {
    Graph graph;
    std::vector<int> to_orig;
    std::vector<int> from_orig;  // -1 outside host
};

Compact compact_host(const Graph& g, const VertexSet& host) {
    Compact c;
    c.to_orig = host.to_vector();
    c.from_orig.assign(g.n(), -1);
    for (size_t i = 0; i < c.to_orig.size(); ++i) c.from_orig[c.to_orig[i]] = static_cast<int>(i);
    c.graph = Graph(static_cast<int>(c.to_orig.size()));
    for (size_t i = 0; i < c.to_orig.size(); ++i) {
        (g.neighbours(c.to_orig[i]) & host).for_each([&](int w) {
            int j = c.from_orig[w];
            if (static_cast<int>(i) < j) c.graph.add_edge(static_cast<int>(i), j);
        });
    }
    return c;
}

}  // namespace

void CycleResult::canonicalize() {
    if (cycle.size() < 3) return;
    size_t n = cycle.size();
    size_t mi = 0;
    for (size_t i = 1; i < n; ++i)
        if (cycle[i] < cycle[mi]) mi = i;
    std::vector<int> rot(n);
    for (size_t i = 0; i < n; ++i) rot[i] = cycle[(mi + i) % n];
    if (rot[1] > rot[n - 1]) {
        std::reverse(rot.begin() + 1, rot.end());
    }
    cycle = rot;
}

void CycleResult::verify(const Graph& g, const VertexSet& must_cover) const {
    if (cycle.size() < 3) throw contract_error("cycle shorter than 3");
    VertexSet on(g.n());
    for (int v : cycle) {
        if (on.contains(v)) throw contract_error("cycle repeats vertex " + std::to_string(v));
        on.add(v);
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
        int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
        if (!g.has_edge(u, v)) throw contract_error("cycle uses non-edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    if (!must_cover.subset_of(on)) throw contract_error("cycle misses required vertices");
    for (auto [u, v] : contains) {
        bool found = false;
        for (size_t i = 0; i < cycle.size() && !found; ++i) {
            int x = cycle[i], y = cycle[(i + 1) % cycle.size()];
            found = (x == u && y == v) || (x == v && y == u);
        }
        if (!found) throw contract_error("cycle misses required edge " + std::to_string(u) + "-" + std::to_string(v));
    }
}

// ---- undirected Hamilton oracle ----

namespace {

// Backtracking over <= 64 vertices: single-word visited masks, degree-2
// forcing, connectivity pruning, deterministic ascending branch order.
struct UndirectedOracle {
    int n;
    std::vector<uint64_t> adj;
    std::vector<uint64_t> req;  // required adjacency (subset of adj)
    std::vector<int> req_deg;
    uint64_t full;

    bool infeasible = false;

    UndirectedOracle(const Graph& g, const std::vector<Edge>& required, const std::vector<Edge>& forbidden)
        : n(g.n()), adj(g.n(), 0), req(g.n(), 0), req_deg(g.n(), 0) {
        full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
        for (int v = 0; v < n; ++v)
            g.neighbours(v).for_each([&](int w) { adj[v] |= uint64_t{1} << w; });
        for (auto [u, v] : forbidden) {
            if (u < 0 || v < 0 || u >= n || v >= n) throw input_error("forbidden edge out of range");
            adj[u] &= ~(uint64_t{1} << v);
            adj[v] &= ~(uint64_t{1} << u);
        }
        for (auto [u, v] : required) {
            if (!g.has_edge(u, v)) throw input_error("required edge not in graph");
            if (!(adj[u] >> v & 1)) throw input_error("required edge is forbidden");
            add_required(u, v);
            if (infeasible) return;
        }
        if (!force_degree_two()) infeasible = true;
    }

    void add_required(int u, int v) {
        if (req[u] >> v & 1) return;
        req[u] |= uint64_t{1} << v;
        req[v] |= uint64_t{1} << u;
        ++req_deg[u];
        ++req_deg[v];
        if (req_deg[u] > 2 || req_deg[v] > 2) infeasible = true;
    }

    // every vertex with exactly two remaining edges must use both; a required
    // subcycle shorter than n kills the instance
    bool force_degree_two() {
        bool changed = true;
        while (changed && !infeasible) {
            changed = false;
            for (int v = 0; v < n; ++v) {
                int d = __builtin_popcountll(adj[v]);
                if (d < 2) return false;
                if (d == 2 && req_deg[v] < 2) {
                    uint64_t m = adj[v] & ~req[v];
                    while (m) {
                        int w = __builtin_ctzll(m);
                        m &= m - 1;
                        add_required(v, w);
                        changed = true;
                    }
                }
            }
        }
        if (infeasible) return false;
        // required edges must form disjoint paths (or one full cycle)
        std::vector<char> seen(n, 0);
        for (int v = 0; v < n; ++v) {
            if (seen[v] || req_deg[v] != 1) continue;
            int prev = -1, cur = v;
            seen[v] = 1;
            for (;;) {
                uint64_t m = req[cur];
                if (prev >= 0) m &= ~(uint64_t{1} << prev);
                if (!m) break;
                int nxt = __builtin_ctzll(m);
                prev = cur;
                cur = nxt;
                if (seen[cur]) return false;
                seen[cur] = 1;
            }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[v] && req_deg[v] == 2) {
                // component of required 2-regular vertices: a cycle; only a
                // spanning one is permissible and is handled by the search
                int count = 0;
                int cur = v, prev = -1;
                do {
                    seen[cur] = 1;
                    ++count;
                    uint64_t m = req[cur] & ~(prev >= 0 ? uint64_t{1} << prev : 0);
                    prev = cur;
                    cur = __builtin_ctzll(m);
                } while (cur != v);
                if (count < n) return false;
            }
        return true;
    }

    bool connected_through(uint64_t allowed) const {
        if (!allowed) return true;
        uint64_t start = allowed & (~allowed + 1);
        uint64_t comp = start, frontier = start;
        while (frontier) {
            uint64_t next = 0;
            uint64_t f = frontier;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                next |= adj[v] & allowed;
            }
            frontier = next & ~comp;
            comp |= frontier;
        }
        return comp == allowed;
    }

    std::vector<int> path;
    long long req_used = 0, req_total = 0;

    bool prune(int cur, uint64_t unvisited) const {
        if (!unvisited) return false;
        // every unvisited vertex keeps two usable slots; current and start
        // each keep one
        uint64_t avail_sets = unvisited | (uint64_t{1} << cur) | 1;  // start is vertex 0
        uint64_t m = unvisited;
        while (m) {
            int w = __builtin_ctzll(m);
            m &= m - 1;
            if (__builtin_popcountll(adj[w] & avail_sets) < 2) return true;
        }
        if (!(adj[cur] & unvisited)) return true;
        if (!(adj[0] & unvisited)) return true;
        if (!connected_through(unvisited | (uint64_t{1} << cur) | 1)) return true;
        return false;
    }

    bool dfs(int cur, uint64_t unvisited) {
        if (!unvisited) {
            // close the cycle
            if (!(adj[cur] >> 0 & 1)) return false;
            bool closing_required = req[cur] & 1;
            if (req_deg[cur] - (closing_required ? 1 : 0) >
                static_cast<int>(count_used_at(cur)))
                return false;
            if (!closing_required && unused_req_at(cur)) return false;
            if (!closing_required && unused_req_at(0)) return false;
            long long used = req_used + (closing_required ? 1 : 0);
            return used == req_total;
        }
        if (prune(cur, unvisited)) return false;
        uint64_t cands = adj[cur] & unvisited;
        if (unused_req_at(cur)) cands &= req[cur];
        while (cands) {
            int v = __builtin_ctzll(cands);
            cands &= cands - 1;
            bool is_req = req[cur] >> v & 1;
            // entering v on a plain edge while v needs both its slots for
            // required edges is a dead end
            if (!is_req && req_deg[v] >= 2) continue;
            path.push_back(v);
            if (is_req) ++req_used;
            if (dfs(v, unvisited & ~(uint64_t{1} << v))) return true;
            if (is_req) --req_used;
            path.pop_back();
        }
        return false;
    }

    size_t count_used_at(int v) const {
        size_t c = 0;
        for (size_t i = 0; i < path.size(); ++i) {
            if (path[i] != v) continue;
            if (i > 0 && (req[v] >> path[i - 1] & 1)) ++c;
            if (i + 1 < path.size() && (req[v] >> path[i + 1] & 1)) ++c;
        }
        return c;
    }

    bool unused_req_at(int v) const { return req_deg[v] > static_cast<int>(count_used_at(v)); }

    std::optional<std::vector<int>> solve() {
        if (infeasible) return std::nullopt;
        if (n < 3) return std::nullopt;
        for (int v = 0; v < n; ++v) req_total += req_deg[v];
        req_total /= 2;
        path = {0};
        if (dfs(0, full & ~uint64_t{1})) return path;
        return std::nullopt;
    }
};

}  // namespace

std::optional<CycleResult> hamilton_oracle(const Graph& g, const VertexSet& host, const std::vector<Edge>& required,
                                           const std::vector<Edge>& forbidden, const OracleOptions& opt) {
    int h = host.size();
    if (h > opt.bound)
        throw capability_error("hamilton oracle bound " + std::to_string(opt.bound) + " exceeded: host has " +
                               std::to_string(h) + " vertices");
    if (h < 3) return std::nullopt;
    Compact c = compact_host(g, host);
    auto remap = [&](const std::vector<Edge>& es) {
        std::vector<Edge> out;
        for (auto [u, v] : es) {
            if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || c.from_orig[u] < 0 || c.from_orig[v] < 0)
                throw input_error("constraint edge outside host");
            out.emplace_back(c.from_orig[u], c.from_orig[v]);
        }
        return out;
    };
    UndirectedOracle oracle(c.graph, remap(required), remap(forbidden));
    auto sol = oracle.solve();
    if (!sol) return std::nullopt;
    CycleResult res;
    for (int v : *sol) res.cycle.push_back(c.to_orig[v]);
    res.contains = required;
    res.canonicalize();
    res.verify(g, host);
    return res;
}

// ---- directed oracle ----

namespace {

struct DirectedOracle {
    int n;
    std::vector<uint64_t> out, in;
    std::vector<int> order_pos;  // -1 unconstrained
    int order_count;
    uint64_t full;

    DirectedOracle(const Digraph& d, const std::vector<int>& order)
        : n(d.n()), out(d.n(), 0), in(d.n(), 0), order_pos(d.n(), -1), order_count(static_cast<int>(order.size())) {
        full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
        for (int v = 0; v < n; ++v) {
            d.out_neighbours(v).for_each([&](int w) { out[v] |= uint64_t{1} << w; });
            d.in_neighbours(v).for_each([&](int w) { in[v] |= uint64_t{1} << w; });
        }
        for (size_t i = 0; i < order.size(); ++i) {
            if (order[i] < 0 || order[i] >= n) throw input_error("order constraint vertex out of range");
            if (order_pos[order[i]] >= 0) throw input_error("duplicate order constraint vertex");
            order_pos[order[i]] = static_cast<int>(i);
        }
    }

    int start;
    std::vector<int> path;

    bool reach_all(uint64_t allowed, int from, const std::vector<uint64_t>& step) const {
        uint64_t comp = uint64_t{1} << from, frontier = comp;
        uint64_t target = allowed | comp;
        while (frontier) {
            uint64_t next = 0;
            uint64_t f = frontier;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                next |= step[v] & target;
            }
            frontier = next & ~comp;
            comp |= frontier;
        }
        return (comp & allowed) == allowed;
    }

    bool dfs(int cur, uint64_t unvisited, int next_order) {
        if (!unvisited) return (out[cur] >> start & 1) && next_order == order_count;
        uint64_t m = unvisited;
        while (m) {
            int w = __builtin_ctzll(m);
            m &= m - 1;
            if (!(out[w] & (unvisited | (uint64_t{1} << start)))) return false;
            if (!(in[w] & (unvisited | (uint64_t{1} << cur)))) return false;
        }
        if (!reach_all(unvisited, cur, out)) return false;
        if (!reach_all(unvisited, start, in)) return false;
        uint64_t cands = out[cur] & unvisited;
        while (cands) {
            int v = __builtin_ctzll(cands);
            cands &= cands - 1;
            int no = next_order;
            if (order_pos[v] >= 0) {
                if (order_pos[v] != next_order) continue;
                no = next_order + 1;
            }
            path.push_back(v);
            if (dfs(v, unvisited & ~(uint64_t{1} << v), no)) return true;
            path.pop_back();
        }
        return false;
    }

    std::optional<std::vector<int>> solve(const std::vector<int>& order) {
        if (n < 2) return std::nullopt;
        start = order.empty() ? 0 : order[0];
        path = {start};
        if (dfs(start, full & ~(uint64_t{1} << start), 1 <= order_count ? 1 : 0)) return path;
        return std::nullopt;
    }
};

}  // namespace

std::optional<std::vector<int>> hamilton_oracle_directed(const Digraph& d, const std::vector<int>& order,
                                                         const OracleOptions& opt) {
    if (d.n() > opt.bound)
        throw capability_error("hamilton oracle bound " + std::to_string(opt.bound) + " exceeded: digraph has " +
                               std::to_string(d.n()) + " vertices");
    DirectedOracle oracle(d, order);
    return oracle.solve(order);
}

// ---- longest cycle ----

namespace {

// biconnected components as vertex sets
std::vector<VertexSet> blocks_of(const Graph& g) {
    int n = g.n();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<int, int>> stack;
    std::vector<VertexSet> blocks;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent) {
        disc[u] = low[u] = timer++;
        g.neighbours(u).for_each([&](int v) {
            if (v == parent) return;
            if (disc[v] < 0) {
                stack.push_back({u, v});
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    VertexSet blk(n);
                    for (;;) {
                        auto [a, b] = stack.back();
                        stack.pop_back();
                        blk.add(a);
                        blk.add(b);
                        if (a == u && b == v) break;
                    }
                    blocks.push_back(blk);
                }
            } else if (disc[v] < disc[u]) {
                stack.push_back({u, v});
                low[u] = std::min(low[u], disc[v]);
            }
        });
    };
    for (int v = 0; v < n; ++v)
        if (disc[v] < 0 && g.degree(v) > 0) dfs(v, -1);
    return blocks;
}

struct LongestCycleSearch {
    const Graph& g;  // compacted block
    int n;
    std::vector<uint64_t> adj;
    int best = 0;

    explicit LongestCycleSearch(const Graph& block) : g(block), n(block.n()), adj(block.n(), 0) {
        for (int v = 0; v < n; ++v)
            block.neighbours(v).for_each([&](int w) { adj[v] |= uint64_t{1} << w; });
    }

    uint64_t reachable(int from, uint64_t allowed) const {
        uint64_t comp = 0, frontier = adj[from] & allowed;
        comp = frontier;
        while (frontier) {
            uint64_t next = 0;
            uint64_t f = frontier;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                next |= adj[v] & allowed;
            }
            frontier = next & ~comp;
            comp |= frontier;
        }
        return comp;
    }

    void dfs(int s, int cur, uint64_t unvisited, int len) {
        if ((adj[cur] >> s & 1) && len >= 3) best = std::max(best, len);
        uint64_t reach = reachable(cur, unvisited);
        if (len + __builtin_popcountll(reach) <= best) return;
        if (!((reach | (uint64_t{1} << cur)) & adj[s])) return;  // cannot close
        uint64_t cands = adj[cur] & unvisited;
        while (cands) {
            int v = __builtin_ctzll(cands);
            cands &= cands - 1;
            dfs(s, v, unvisited & ~(uint64_t{1} << v), len + 1);
        }
    }

    int run() {
        // cycles are canonicalized by their minimum vertex
        for (int s = 0; s < n; ++s) {
            uint64_t above = 0;
            for (int v = s + 1; v < n; ++v) above |= uint64_t{1} << v;
            dfs(s, s, above, 1);
        }
        return best;
    }
};

}  // namespace

int longest_cycle(const Graph& g) {
    int best = 0;
    for (const auto& blk : blocks_of(g)) {
        if (blk.size() < 3) continue;
        if (blk.size() > 64) throw capability_error("longest_cycle: block exceeds 64 vertices");
        Compact c = compact_host(g, blk);
        LongestCycleSearch search(c.graph);
        best = std::max(best, search.run());
    }
    return best;
}

// ---- short paths ----

std::vector<int> short_path_directed(const Digraph& d, int x, int y, const Rat& nu) {
    if (x == y) throw input_error("short_path: endpoints must be distinct");
    std::vector<int> parent(d.n(), -2);
    std::queue<int> q;
    parent[x] = -1;
    q.push(x);
    while (!q.empty() && parent[y] == -2) {
        int u = q.front();
        q.pop();
        d.out_neighbours(u).for_each([&](int w) {
            if (parent[w] == -2) {
                parent[w] = u;
                q.push(w);
            }
        });
    }
    if (parent[y] == -2) throw precondition_error("short_path: no directed path (expansion hypothesis violated?)");
    std::vector<int> path;
    for (int v = y; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (!nu.leq_times(1, static_cast<long long>(path.size())))
        throw contract_error("short_path: |V(P)| exceeds 1/nu; expansion precondition was wrong");
    return path;
}

std::vector<int> short_path_bipartite(const Graph& g, const VertexSet& a, const VertexSet& b, int x, int y,
                                      const Rat& nu) {
    if (x == y) throw input_error("short_path: endpoints must be distinct");
    VertexSet host = a | b;
    if (!host.contains(x) || !host.contains(y)) throw input_error("short_path: endpoint outside host");
    long long nhost = host.size();
    long long diff = std::llabs(static_cast<long long>(a.size()) - b.size());
    if (!(nu * nu).geq_times(diff, nhost))
        throw precondition_error("short_path: ||A|-|B|| > nu^2*n");
    std::vector<int> parent(g.n(), -2);
    std::queue<int> q;
    parent[x] = -1;
    q.push(x);
    while (!q.empty() && parent[y] == -2) {
        int u = q.front();
        q.pop();
        (g.neighbours(u) & host).for_each([&](int w) {
            if (parent[w] == -2) {
                parent[w] = u;
                q.push(w);
            }
        });
    }
    if (parent[y] == -2) throw precondition_error("short_path: no path (expansion hypothesis violated?)");
    std::vector<int> path;
    for (int v = y; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (!nu.leq_times(4, static_cast<long long>(path.size())))
        throw contract_error("short_path: |V(P)| exceeds 4/nu; expansion precondition was wrong");
    return path;
}

// ---- M-auxiliary digraph ----

Digraph m_auxiliary_digraph(const Graph& g, const VertexSet& a, const VertexSet& b, const std::vector<Edge>& m) {
    if (a.intersects(b)) throw input_error("m_auxiliary: sides overlap");
    if (a.size() != b.size()) throw input_error("m_auxiliary: sides not balanced");
    std::vector<int> partner(g.n(), -1);
    for (auto [u, v] : m) {
        if (!g.has_edge(u, v)) throw input_error("m_auxiliary: matching edge not in graph");
        int av = a.contains(u) ? u : v;
        int bv = b.contains(u) ? u : v;
        if (!a.contains(av) || !b.contains(bv)) throw input_error("m_auxiliary: matching edge not crossing");
        if (partner[av] >= 0 || partner[bv] >= 0) throw input_error("m_auxiliary: matching not vertex-disjoint");
        partner[av] = bv;
        partner[bv] = av;
    }
    bool perfect = true;
    a.for_each([&](int v) { perfect &= partner[v] >= 0; });
    b.for_each([&](int v) { perfect &= partner[v] >= 0; });
    if (!perfect || static_cast<int>(m.size()) != a.size()) throw input_error("m_auxiliary: matching not perfect");

    Digraph d(g.n());
    b.for_each([&](int v) {
        int vp = partner[v];  // in a
        (g.neighbours(vp) & b).for_each([&](int x) {
            if (x != v) d.add_arc(v, x);
        });
    });
    return d;
}

std::vector<int> lift_m_auxiliary_cycle(const Graph& g, const std::vector<Edge>& m, const std::vector<int>& aux_cycle) {
    std::vector<int> partner(g.n(), -1);
    for (auto [u, v] : m) {
        partner[u] = v;
        partner[v] = u;
    }
    std::vector<int> lifted;
    for (int v : aux_cycle) {
        if (partner[v] < 0) throw input_error("lift: cycle vertex unmatched");
        lifted.push_back(v);
        lifted.push_back(partner[v]);
    }
    for (size_t i = 0; i < lifted.size(); ++i) {
        int u = lifted[i], w = lifted[(i + 1) % lifted.size()];
        if (!g.has_edge(u, w))
            throw contract_error("lift: edge " + std::to_string(u) + "-" + std::to_string(w) + " missing");
    }
    return lifted;
}

// ---- Hamilton p-linked ----

namespace {

// exact spanning-linkage via the merged digraph: pairs (y_{i+1}, y_i') become
// z_i and a Hamilton cycle through z_1..z_p in order unfolds into the paths
std::optional<std::vector<std::vector<int>>> linkage_by_oracle(const Graph& g, const LinkRequest& req,
                                                               const OracleOptions& opt) {
    int p = static_cast<int>(req.pairs.size());
    std::vector<int> terminals;
    for (auto [y, yp] : req.pairs) {
        terminals.push_back(y);
        terminals.push_back(yp);
    }
    // merged vertex list: non-terminals keep themselves; z_i out-rep y_{i+1},
    // in-rep y_i'
    std::vector<int> out_rep, in_rep;
    VertexSet term(g.n());
    for (int v : terminals) term.add(v);
    (req.host - term).for_each([&](int v) {
        out_rep.push_back(v);
        in_rep.push_back(v);
    });
    std::vector<int> z_ids;
    for (int i = 0; i < p; ++i) {
        z_ids.push_back(static_cast<int>(out_rep.size()));
        out_rep.push_back(req.pairs[(i + 1) % p].first);  // y_{i+1}
        in_rep.push_back(req.pairs[i].second);            // y_i'
    }
    int w = static_cast<int>(out_rep.size());
    if (w > opt.bound)
        throw capability_error("linkage oracle bound " + std::to_string(opt.bound) + " exceeded: merged digraph has " +
                               std::to_string(w) + " vertices");
    if (w < 2) {
        // degenerate: host is exactly the terminal pairs
        if (p == 1 && g.has_edge(req.pairs[0].first, req.pairs[0].second))
            return std::vector<std::vector<int>>{{req.pairs[0].first, req.pairs[0].second}};
        return std::nullopt;
    }
    Digraph d(w);
    for (int u = 0; u < w; ++u)
        for (int v = 0; v < w; ++v)
            if (u != v && g.has_edge(out_rep[u], in_rep[v])) d.add_arc(u, v);
    auto cyc = hamilton_oracle_directed(d, z_ids, opt);
    if (!cyc) return std::nullopt;
    // unfold: the cycle starts at z_0; the segment after z_j is the interior
    // of path (j+1) mod p, which runs from y_{j+1} to y_{j+1}'
    std::vector<std::vector<int>> paths(p);
    int zi = -1;
    for (int v : *cyc) {
        if (v >= w - p) {
            zi = v - (w - p);
            int pair_idx = (zi + 1) % p;
            paths[pair_idx].push_back(req.pairs[pair_idx].first);
        } else {
            paths[(zi + 1) % p].push_back(out_rep[v]);
        }
    }
    for (int i = 0; i < p; ++i) paths[i].push_back(req.pairs[i].second);
    return paths;
}

std::optional<std::vector<std::vector<int>>> linkage_bipartite_construct(const Graph& g, const LinkRequest& req,
                                                                         const OracleOptions& opt) {
    const auto& [A, B] = *req.bipartition;
    int p = static_cast<int>(req.pairs.size());
    VertexSet used(g.n());
    std::vector<std::vector<int>> paths;

    VertexSet future(g.n());
    for (int i = 0; i < p; ++i) {
        future.add(req.pairs[i].first);
        future.add(req.pairs[i].second);
    }

    for (int i = 0; i + 1 < p; ++i) {
        auto [x, y] = req.pairs[i];
        future.remove(x);
        future.remove(y);
        VertexSet allowed = req.host - used - future;
        // plain BFS; the caller's expansion certificate promises shortness
        std::vector<int> parent(g.n(), -2);
        std::queue<int> q;
        parent[x] = -1;
        q.push(x);
        while (!q.empty() && parent[y] == -2) {
            int u = q.front();
            q.pop();
            (g.neighbours(u) & allowed).for_each([&](int w) {
                if (parent[w] == -2) {
                    parent[w] = u;
                    q.push(w);
                }
            });
        }
        if (parent[y] == -2) return std::nullopt;
        std::vector<int> path;
        for (int v = y; v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        for (int v : path) used.add(v);
        paths.push_back(std::move(path));
    }

    // last pair spans the remainder via a perfect matching and the
    // M-auxiliary digraph
    auto [yp, ypp] = req.pairs[p - 1];
    VertexSet rest = req.host - used;
    bool p_in_a = A.contains(yp), pp_in_a = A.contains(ypp);
    int u_a, u_b;           // the designated A-side and B-side terminals
    std::vector<int> tail;  // suffix appended after u_b (same-side cases)
    VertexSet rest_work = rest;
    auto stand_in = [&](int v, const VertexSet& side) {
        int z = -1;
        ((g.neighbours(v) & side & rest) - VertexSet(g.n(), {yp})).for_each([&](int w) {
            if (z < 0) z = w;
        });
        return z;
    };
    if (p_in_a != pp_in_a) {
        u_a = p_in_a ? yp : ypp;
        u_b = p_in_a ? ypp : yp;
    } else if (p_in_a) {
        // both in A: walk to a fresh B-neighbour of y_p', then append y_p'
        int z = stand_in(ypp, B);
        if (z < 0) return std::nullopt;
        u_a = yp;
        u_b = z;
        tail = {ypp};
        rest_work.remove(ypp);
    } else {
        // both in B
        int z = stand_in(ypp, A);
        if (z < 0) return std::nullopt;
        u_a = z;
        u_b = yp;
        tail = {ypp};
        rest_work.remove(ypp);
    }

    VertexSet ra = rest_work & A, rb = rest_work & B;
    if (ra.size() != rb.size()) return std::nullopt;
    // perfect matching of the rest minus the terminal pair, then extend by
    // the (possibly fake) terminal edge
    VertexSet ga = ra - VertexSet(g.n(), {u_a});
    VertexSet gb = rb - VertexSet(g.n(), {u_b});
    Graph sub = g.induced(rest_work);
    auto match = max_matching(sub, ga, gb);
    if (static_cast<int>(match.size()) != ga.size()) return std::nullopt;
    bool fake = !g.has_edge(u_a, u_b);
    Graph gm(g.n());
    rest_work.for_each([&](int u) {
        (g.neighbours(u) & rest_work).for_each([&](int v) {
            if (u < v) gm.add_edge(u, v);
        });
    });
    if (fake) gm.add_edge(u_a, u_b);
    std::vector<Edge> mfull = match;
    mfull.emplace_back(std::min(u_a, u_b), std::max(u_a, u_b));
    Digraph aux = m_auxiliary_digraph(gm, ra, rb, mfull);
    // compact onto rb for the oracle
    std::vector<int> to_orig = rb.to_vector();
    std::vector<int> from_orig(g.n(), -1);
    for (size_t i = 0; i < to_orig.size(); ++i) from_orig[to_orig[i]] = static_cast<int>(i);
    Digraph daux(static_cast<int>(to_orig.size()));
    for (int u : to_orig)
        aux.out_neighbours(u).for_each([&](int w) { daux.add_arc(from_orig[u], from_orig[w]); });
    auto cyc = hamilton_oracle_directed(daux, {}, opt);
    if (!cyc) return std::nullopt;
    std::vector<int> aux_cycle;
    for (int v : *cyc) aux_cycle.push_back(to_orig[v]);
    std::vector<int> lifted = lift_m_auxiliary_cycle(gm, mfull, aux_cycle);
    // open the cycle at the terminal edge
    int pos = -1;
    int len = static_cast<int>(lifted.size());
    for (int i = 0; i < len; ++i) {
        int u = lifted[i], w = lifted[(i + 1) % len];
        if ((u == u_a && w == u_b) || (u == u_b && w == u_a)) pos = i;
    }
    if (pos < 0) throw std::logic_error("linkage: lifted cycle misses the terminal matching edge");
    std::vector<int> lastpath;
    for (int i = 0; i < len; ++i) lastpath.push_back(lifted[(pos + 1 + i) % len]);
    // orient the path to run from y_p, then append the same-side suffix
    if (lastpath.front() != yp) std::reverse(lastpath.begin(), lastpath.end());
    if (lastpath.front() != yp) return std::nullopt;
    for (int v : tail) lastpath.push_back(v);
    paths.push_back(std::move(lastpath));
    return paths;
}

void validate_linkage(const Graph& g, const LinkRequest& req, const std::vector<std::vector<int>>& paths) {
    if (paths.size() != req.pairs.size()) throw std::logic_error("linkage: wrong path count");
    PathSystem ps(g.n(), paths);
    ps.validate_against(g);
    VertexSet cover = ps.vertices();
    if (req.spanning && cover != req.host) throw std::logic_error("linkage: paths do not span the host");
    for (size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].front() != req.pairs[i].first || paths[i].back() != req.pairs[i].second)
            throw std::logic_error("linkage: path endpoints mismatch");
    }
}

}  // namespace

std::optional<std::vector<std::vector<int>>> hamilton_p_linked(const Graph& g, const LinkRequest& req,
                                                               const OracleOptions& opt) {
    int p = static_cast<int>(req.pairs.size());
    if (p == 0) throw input_error("hamilton_p_linked: no pairs");
    if (!req.spanning) throw capability_error("hamilton_p_linked: only spanning linkage is implemented");
    VertexSet seen(g.n());
    for (auto [x, y] : req.pairs) {
        if (!req.host.contains(x) || !req.host.contains(y)) throw input_error("linkage terminal outside host");
        if (seen.contains(x) || seen.contains(y) || x == y) throw input_error("linkage terminals not distinct");
        seen.add(x);
        seen.add(y);
    }
    if (req.bipartition) {
        const auto& [A, B] = *req.bipartition;
        if ((A | B) != req.host) throw input_error("linkage bipartition does not cover host");
        if (seen.intersection_size(A) != seen.intersection_size(B))
            throw input_error("linkage terminals unbalanced across the bipartition");
    }
    if (!req.override_p_guard) {
        Rat nu4 = req.params.nu * req.params.nu * req.params.nu * req.params.nu;
        long long cap = std::max<long long>(1, nu4.num() * req.host.size() / nu4.den());
        if (p > cap)
            throw capability_error("hamilton_p_linked: p exceeds nu^4*n guard (" + std::to_string(cap) +
                                   "); set the override to proceed");
    }

    std::optional<std::vector<std::vector<int>>> paths;
    if (req.bipartition) {
        paths = linkage_bipartite_construct(g, req, opt);
        if (paths) {
            try {
                validate_linkage(g, req, *paths);
                return paths;
            } catch (const std::logic_error&) {
                paths.reset();  // fall through to the exact route
            }
        }
    }
    paths = linkage_by_oracle(g, req, opt);
    if (!paths) return std::nullopt;  // exhaustive: honestly NOT_LINKED
    validate_linkage(g, req, *paths);
    return paths;
}

// ---- assembly ----

CycleResult assemble_hamilton(const Graph& g, const WeakSubpartition& sub, const PathSystem& tour,
                              const OracleOptions& opt) {
    auto viol = tour_violations(g, sub, tour, Rat(1, 1));
    if (!viol.empty()) {
        std::string msg = "assemble_hamilton: tour invalid:";
        for (const auto& v : viol) msg += " " + v;
        throw precondition_error(msg);
    }
    auto parts = sub.parts();
    auto [r, touredges] = reduced_multigraph_euler(parts, tour);
    if (!touredges) throw precondition_error("assemble_hamilton: no Euler tour");

    // order and orient the paths along the tour; Hierholzer starts the
    // closed walk at part 0
    struct Oriented {
        std::vector<int> seq;
        int from_part, to_part;
    };
    std::vector<Oriented> ordered;
    int cur_part = 0;
    for (int ei : *touredges) {
        auto [pa, pb] = r.edges[ei];
        int nxt = pa == cur_part ? pb : pa;
        if (pa != cur_part && pb != cur_part) throw std::logic_error("assemble: tour not a walk");
        const auto& p = tour.paths()[ei];
        Oriented o;
        o.from_part = cur_part;
        o.to_part = nxt;
        o.seq = p;
        int front_part = part_of_helper(parts, p.front());
        if (front_part != cur_part) std::reverse(o.seq.begin(), o.seq.end());
        ordered.push_back(std::move(o));
        cur_part = nxt;
    }

    int q = static_cast<int>(ordered.size());
    // per-class ordered endpoint pairs (x_i^+, x_{i+1}^-)
    std::vector<std::vector<std::pair<int, int>>> class_pairs(parts.size());
    std::vector<std::vector<int>> pair_slot(parts.size());  // which gap i each pair closes
    for (int i = 0; i < q; ++i) {
        int xplus = ordered[i].seq.back();
        int xminus = ordered[(i + 1) % q].seq.front();
        int cls = ordered[i].to_part;
        if (part_of_helper(parts, xminus) != cls) throw std::logic_error("assemble: endpoint class mismatch");
        class_pairs[cls].push_back({xplus, xminus});
        pair_slot[cls].push_back(i);
    }

    VertexSet tour_internals = tour.internals();
    std::vector<std::vector<int>> gap_path(q);
    for (size_t cls = 0; cls < parts.size(); ++cls) {
        if (class_pairs[cls].empty()) throw precondition_error("assemble: class with no tour endpoints");
        VertexSet uprime = parts[cls] - tour_internals;
        LinkRequest req;
        req.host = uprime;
        req.pairs = class_pairs[cls];
        req.params = sub.params;
        req.override_p_guard = true;  // the oracle is the real guard at desk scale
        if (sub.classes[cls].kind == ComponentKind::BIPARTITE) {
            const auto& [A, B] = *sub.classes[cls].bipartition;
            req.bipartition = {{A - tour_internals, B - tour_internals}};
        }
        if (uprime.size() > opt.bound)
            throw capability_error("assemble: class #" + std::to_string(cls) + " exceeds the oracle bound");
        auto linked = hamilton_p_linked(g, req, opt);
        if (!linked)
            throw contract_error("assemble_hamilton: linkage failed in class #" + std::to_string(cls));
        for (size_t j = 0; j < linked->size(); ++j) gap_path[pair_slot[cls][j]] = (*linked)[j];
    }

    CycleResult res;
    for (int i = 0; i < q; ++i) {
        for (int v : ordered[i].seq) res.cycle.push_back(v);
        const auto& gp = gap_path[i];
        for (size_t j = 1; j + 1 < gp.size(); ++j) res.cycle.push_back(gp[j]);
    }
    res.contains = tour.edges();
    VertexSet cover = tour.vertices();
    for (const auto& p : parts) cover = cover | p;
    res.canonicalize();
    res.verify(g, cover);
    return res;
}

CycleResult balanced_bipartite_hamilton(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& v0,
                                        const Graph& h, const PathSystem& ps, const Params& params,
                                        const OracleOptions& opt) {
    long long asize = a.size();
    if (a.intersects(b) || a.intersects(v0) || b.intersects(v0) || (a | b | v0) != VertexSet::full(g.n()))
        throw input_error("balanced_bipartite_hamilton: A,B,V0 must partition V(G)");
    if (a.size() != b.size()) throw precondition_error("balanced_bipartite_hamilton: |A| != |B|");
    if (h.n() != g.n()) throw input_error("balanced_bipartite_hamilton: H on a different vertex set");
    for (auto [u, v] : h.edges()) {
        bool crossing = (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
        if (!crossing || !g.has_edge(u, v))
            throw input_error("balanced_bipartite_hamilton: H is not a subgraph of G[A,B]");
    }
    {
        Rat half_eta = Rat(1, 2) + params.eta;
        int hmin = g.n();
        (a | b).for_each([&](int u) { hmin = std::min(hmin, h.degree(u)); });
        if (!half_eta.leq_times(hmin, asize))
            throw precondition_error("balanced_bipartite_hamilton: delta(H) < (1/2+eta)|A|");
    }
    ps.validate_against(g);
    if (!params.gamma.geq_times(ps.vertices().intersection_size(a | b), asize))
        throw precondition_error("balanced_bipartite_hamilton: |V(P) cap (A|B)| > gamma*|A|");
    {
        int ea = ps.end_count(a), eb = ps.end_count(b);
        long long ia = ps.int_count(a), ib = ps.int_count(b);
        if (!(ea == eb && ea > 0 && a.size() - ia == b.size() - ib))
            throw precondition_error("balanced_bipartite_hamilton: P is not (A,B)-balanced");
    }
    {
        VertexSet interior = ps.internals();
        bool ok = true;
        v0.for_each([&](int v) { ok &= interior.contains(v); });
        if (!ok) throw precondition_error("balanced_bipartite_hamilton: a V0 vertex is not interior to P");
    }

    // contract V0 interiors: uvw -> uw, remembering the replaced vertex chains
    std::map<Edge, std::vector<int>> virt;
    std::vector<std::vector<int>> contracted;
    for (auto p : ps.paths()) {
        std::vector<int> np;
        std::vector<int> pending;
        for (int v : p) {
            if (v0.contains(v)) {
                pending.push_back(v);
            } else {
                if (!pending.empty() && !np.empty()) {
                    Edge e{std::min(np.back(), v), std::max(np.back(), v)};
                    std::vector<int> chain = pending;
                    if (np.back() > v) std::reverse(chain.begin(), chain.end());
                    virt[e] = chain;  // oriented min -> max
                    pending.clear();
                }
                np.push_back(v);
            }
        }
        if (!pending.empty()) throw precondition_error("balanced_bipartite_hamilton: V0 vertex at a path end");
        contracted.push_back(np);
    }

    Graph gprime(g.n());
    for (auto [u, v] : h.edges()) gprime.add_edge(u, v);
    PathSystem psprime(g.n(), contracted);
    for (auto [u, v] : psprime.edges())
        if (!gprime.has_edge(u, v)) gprime.add_edge(u, v);

    WeakSubpartition sub;
    sub.params = params;
    // the class's actual minimum internal degree governs the (D4') check
    {
        int mind = g.n();
        (a | b).for_each([&](int x) { mind = std::min(mind, gprime.degree_in(x, a | b)); });
        sub.eta = Rat(std::max(0, mind), std::max(1, g.n()));
    }
    ComponentLabel cl;
    cl.kind = ComponentKind::BIPARTITE;
    cl.vertices = a | b;
    cl.bipartition = {{a, b}};
    sub.classes.push_back(cl);

    CycleResult inner = assemble_hamilton(gprime, sub, psprime, opt);

    // lift the virtual edges back (required-edge containment guarantees each
    // contracted pair appears on the inner cycle exactly once)
    std::vector<int> lifted;
    int len = static_cast<int>(inner.cycle.size());
    for (int i = 0; i < len; ++i) {
        int u = inner.cycle[i], w = inner.cycle[(i + 1) % len];
        lifted.push_back(u);
        auto it = virt.find({std::min(u, w), std::max(u, w)});
        if (it != virt.end()) {
            std::vector<int> chain = it->second;
            if (u > w) std::reverse(chain.begin(), chain.end());
            for (int x : chain) lifted.push_back(x);
        }
    }
    CycleResult res;
    res.cycle = lifted;
    res.contains = ps.edges();
    res.canonicalize();
    res.verify(g, VertexSet::full(g.n()));
    // E(C) \ E(P) inside H
    {
        auto pse = ps.edges();
        for (size_t i = 0; i < res.cycle.size(); ++i) {
            int u = res.cycle[i], v = res.cycle[(i + 1) % res.cycle.size()];
            Edge e{std::min(u, v), std::max(u, v)};
            if (!std::binary_search(pse.begin(), pse.end(), e) && !h.has_edge(u, v))
                throw contract_error("balanced_bipartite_hamilton: cycle uses a non-H edge outside P");
        }
    }
    return res;
}

// ---- pipelines ----

namespace {

// reassemble a degree-<=2 edge union into a path system
PathSystem path_system_from_edge_union(const Graph& g, const std::vector<Edge>& edges) {
    std::map<int, std::vector<int>> adj;
    for (auto [u, v] : edges) {
        if (!g.has_edge(u, v)) throw input_error("edge union: non-edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [v, nb] : adj) {
        if (nb.size() > 2) throw input_error("edge union: vertex of degree > 2");
        std::sort(nb.begin(), nb.end());
    }
    PathSystem out(g.n());
    VertexSet taken(g.n());
    for (auto& [v, nb] : adj) {
        if (taken.contains(v) || nb.size() == 2) continue;
        std::vector<int> path{v};
        taken.add(v);
        int prev = -1, cur = v;
        for (;;) {
            int nxt = -1;
            for (int w : adj[cur])
                if (w != prev && !taken.contains(w)) {
                    nxt = w;
                    break;
                }
            if (nxt < 0) break;
            path.push_back(nxt);
            taken.add(nxt);
            prev = cur;
            cur = nxt;
        }
        out.add_path(std::move(path));
    }
    for (auto& [v, nb] : adj)
        if (!taken.contains(v)) throw input_error("edge union: contains a cycle");
    return out;
}

bool has_crossing_path(const PathSystem& ps, const VertexSet& v, const VertexSet& w) {
    for (const auto& p : ps.paths()) {
        bool a = v.contains(p.front()) && w.contains(p.back());
        bool b = w.contains(p.front()) && v.contains(p.back());
        if (a || b) return true;
    }
    return false;
}

Rat honest_eta(const Graph& g, const std::vector<ComponentLabel>& classes) {
    int n = g.n();
    int mind = n;
    for (const auto& cl : classes) {
        cl.vertices.for_each([&](int x) { mind = std::min(mind, g.degree_in(x, cl.vertices)); });
        if (cl.kind == ComponentKind::BIPARTITE && cl.bipartition) {
            const auto& [A, B] = *cl.bipartition;
            int cross = n;
            A.for_each([&](int x) { cross = std::min(cross, g.degree_in(x, B)); });
            B.for_each([&](int x) { cross = std::min(cross, g.degree_in(x, A)); });
            mind = std::min(mind, 2 * cross);
        }
    }
    return Rat(std::max(mind, 0), std::max(n, 1));
}

// balancing path system for the one-expander-one-bipartite case: matchings
// in G[A] and G[A,V] sized so the class balance equation comes out right
PathSystem one_one_path_system(const Graph& g, const VertexSet& V, const VertexSet& A_in, const VertexSet& B_in) {
    long long D = g.min_degree();
    const VertexSet& A = A_in.size() >= B_in.size() ? A_in : B_in;
    const VertexSet& B = A_in.size() >= B_in.size() ? B_in : A_in;
    VertexSet W = A | B;
    long long diff = static_cast<long long>(A.size()) - B.size();

    auto edges_in = [&](const VertexSet& s) { return g.induced(s).edges(); };
    auto crossing_edges = [&](const VertexSet& x, const VertexSet& y) {
        std::vector<Edge> out;
        x.for_each([&](int u) {
            (g.neighbours(u) & y).for_each([&](int v) { out.emplace_back(std::min(u, v), std::max(u, v)); });
        });
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    auto matching_of_size = [&](const std::vector<Edge>& host, long long size) -> std::optional<std::vector<Edge>> {
        if (size <= 0) return std::vector<Edge>{};
        Graph hg(g.n());
        for (auto [u, v] : host) hg.add_edge(u, v);
        auto m = max_matching(hg, VertexSet::full(g.n()), VertexSet::full(g.n()));
        if (static_cast<long long>(m.size()) < size) return std::nullopt;
        m.resize(size);
        return m;
    };

    if (diff == 0) {
        // one VW 2-matching on one side, plus one balancing edge
        auto ma = matching_of_size(crossing_edges(A, V), 2);
        auto mb = matching_of_size(crossing_edges(B, V), 2);
        for (int side = 0; side < 2; ++side) {
            const auto& m2 = side == 0 ? ma : mb;
            const VertexSet& far = side == 0 ? B : A;
            if (!m2) continue;
            auto far_edges = edges_in(far);
            if (!far_edges.empty()) {
                PathSystem ps(g.n());
                for (auto [u, v] : *m2) ps.add_path({u, v});
                ps.add_path({far_edges[0].first, far_edges[0].second});
                return ps;
            }
            // e(far) = 0: two disjoint crossing edges, one per side
            auto ecross_far = crossing_edges(far, V);
            for (auto e1 : *m2)
                for (auto e2 : ecross_far) {
                    if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
                        e1.second == e2.second)
                        continue;
                    PathSystem ps(g.n());
                    ps.add_path({e1.first, e1.second});
                    ps.add_path({e2.first, e2.second});
                    return ps;
                }
        }
        throw refinement_error("(1,1) route: no suitable balanced path system found");
    }

    auto av_edges = crossing_edges(A, V);
    if (5 * g.edges_within(A) < D) {
        auto m = matching_of_size(av_edges, 2 * diff);
        if (!m) throw refinement_error("(1,1) route: matching of size 2(|A|-|B|) missing in G[A,V]");
        return PathSystem::from_edges(g.n(), *m);
    }

    long long ell = std::min((2 * g.edges_within(A) + D + 1) / (D + 2), diff);  // ceil(e(A)/(D/2+1))
    auto a_edges = edges_in(A);

    if (ell == diff) {
        auto m = matching_of_size(a_edges, ell);
        if (!m) throw refinement_error("(1,1) route: matching of size l missing in G[A]");
        auto mav = matching_of_size(av_edges, 2);
        if (mav) {
            VertexSet ends(g.n());
            for (auto [u, v] : *mav) {
                ends.add(u);
                ends.add(v);
            }
            // drop the matching edge joining the two A-endpoints if present,
            // otherwise the lexicographically least edge
            std::vector<Edge> mprime;
            bool dropped = false;
            for (auto e : *m) {
                if (!dropped && ends.contains(e.first) && ends.contains(e.second)) {
                    dropped = true;
                    continue;
                }
                mprime.push_back(e);
            }
            if (!dropped && !mprime.empty()) mprime.erase(mprime.begin());
            std::vector<Edge> all = mprime;
            all.insert(all.end(), mav->begin(), mav->end());
            // edges may chain at shared vertices into longer paths
            return path_system_from_edge_union(g, all);
        }
        auto mbv = matching_of_size(crossing_edges(B, V), 2);
        if (!mbv) throw refinement_error("(1,1) route: no 2-matching into V from either side");
        VertexSet mv(g.n());
        for (auto [u, v] : *m) {
            mv.add(u);
            mv.add(v);
        }
        std::optional<Edge> extra;
        for (auto e : a_edges) {
            bool in_m = std::binary_search(m->begin(), m->end(), e);
            if (!in_m) {
                extra = e;
                break;
            }
        }
        if (!extra) throw refinement_error("(1,1) route: no spare edge in G[A]");
        std::vector<Edge> all = *m;
        all.push_back(*extra);
        all.insert(all.end(), mbv->begin(), mbv->end());
        return path_system_from_edge_union(g, all);
    }

    // case 2: ell < diff
    auto mav = matching_of_size(av_edges, 2 * (diff - ell));
    if (!mav) throw refinement_error("(1,1) route: matching of size 2(|A|-|B|-l) missing in G[A,V]");
    auto mplus = matching_of_size(a_edges, ell + 1);
    if (mplus) {
        std::vector<Edge> all = *mplus;
        all.insert(all.end(), mav->begin(), mav->end());
        // delete one M+ edge, keeping a VW-path
        for (size_t drop = 0; drop < mplus->size(); ++drop) {
            std::vector<Edge> trial;
            for (size_t i = 0; i < mplus->size(); ++i)
                if (i != drop) trial.push_back((*mplus)[i]);
            trial.insert(trial.end(), mav->begin(), mav->end());
            PathSystem ps = path_system_from_edge_union(g, trial);
            if (has_crossing_path(ps, V, W)) return ps;
        }
        throw refinement_error("(1,1) route: could not expose a VW-path");
    }
    // maximal matching of size l: some covered vertex has a spare neighbour
    // outside it, giving the path xyz
    auto m = matching_of_size(a_edges, ell);
    if (!m) throw refinement_error("(1,1) route: matching of size l missing in G[A]");
    VertexSet mv(g.n());
    for (auto [u, v] : *m) {
        mv.add(u);
        mv.add(v);
    }
    int x = -1, y = -1, z = -1;
    for (auto [u, v] : *m) {
        for (int cand : {u, v}) {
            ((g.neighbours(cand) & A) - mv).for_each([&](int w) {
                if (x < 0) {
                    y = cand;
                    x = w;
                    z = cand == u ? v : u;
                }
            });
            if (x >= 0) break;
        }
        if (x >= 0) break;
    }
    if (x < 0) throw refinement_error("(1,1) route: no high-degree matched vertex for the xyz path");
    std::vector<Edge> mminus;
    for (auto e : *m)
        if (!(e.first == std::min(y, z) && e.second == std::max(y, z))) mminus.push_back(e);
    // try M- + xy and M- + yz first
    for (int variant = 0; variant < 2; ++variant) {
        std::vector<Edge> trial = mminus;
        if (variant == 0)
            trial.emplace_back(std::min(x, y), std::max(x, y));
        else
            trial.emplace_back(std::min(y, z), std::max(y, z));
        trial.insert(trial.end(), mav->begin(), mav->end());
        PathSystem ps = path_system_from_edge_union(g, trial);
        if (has_crossing_path(ps, V, W)) return ps;
    }
    // fall back to the path xyz with one M- edge removed
    VertexSet mav_a(g.n());
    for (auto [u, v] : *mav) {
        if (A.contains(u)) mav_a.add(u);
        if (A.contains(v)) mav_a.add(v);
    }
    std::optional<Edge> drop;
    for (auto e : mminus)
        if (mav_a.contains(e.first) || mav_a.contains(e.second)) {
            drop = e;
            break;
        }
    if (!drop) throw refinement_error("(1,1) route: no droppable matching edge for the xyz fallback");
    std::vector<Edge> trial;
    for (auto e : mminus)
        if (e != *drop) trial.push_back(e);
    trial.emplace_back(std::min(x, y), std::max(x, y));
    trial.emplace_back(std::min(y, z), std::max(y, z));
    trial.insert(trial.end(), mav->begin(), mav->end());
    PathSystem ps = path_system_from_edge_union(g, trial);
    if (!has_crossing_path(ps, V, W)) throw refinement_error("(1,1) route: fallback still lacks a VW-path");
    return ps;
}

}  // namespace

PipelineResult find_hamilton_pipeline(const Graph& g, const PipelineOptions& opt) {
    PipelineResult result;
    if (g.n() < 3) throw input_error("find_hamilton_pipeline: graph too small");
    bool three_connected = vertex_connectivity(g) >= 3;

    auto [rp, trace] = refine_to_robust_partition(g, opt.schedule);
    result.trace = std::move(trace);
    if (!three_connected) {
        // the tour constructions need 3-connectivity; the structure result
        // stands on its own
        result.stability = rp;
        result.route = "stability(not-3-connected)";
        return result;
    }
    int k = rp.k(), l = rp.l();
    const Rat& rho = rp.params.rho;

    WeakSubpartition sub;
    sub.classes = rp.classes;
    sub.params = rp.params;
    sub.eta = honest_eta(g, rp.classes);

    // smallest rho satisfying the balancing hypotheses for this instance
    // (fixed multiples of the partition rho assume large n); the cross-degree
    // precondition inside balance_extend stays the honest gate
    auto rho_for = [&](const PathSystem& ps) {
        Rat rho_eff(1, g.n());
        VertexSet pv = ps.vertices();
        for (const auto& cl : sub.classes) {
            rho_eff = max(rho_eff, Rat(pv.intersection_size(cl.vertices), g.n()));
            if (cl.kind == ComponentKind::BIPARTITE && cl.bipartition) {
                const auto& [A, B] = *cl.bipartition;
                long long diff = std::llabs(static_cast<long long>(A.size()) - B.size());
                rho_eff = max(rho_eff, Rat(diff, g.n()));
            }
        }
        return rho_eff;
    };
    auto finish = [&](PathSystem ps, const std::string& route) {
        PathSystem tour = balance_extend(g, sub, ps, rho_for(ps));
        result.cycle = assemble_hamilton(g, sub, tour, opt.oracle);
        result.route = route;
        return result;
    };

    if (l == 0 && k >= 1 && k <= 3) {
        result.route = "(" + std::to_string(k) + ",0)";
        PathSystem ps = three_part_connector(g, sub.parts());
        result.cycle = assemble_hamilton(g, sub, ps, opt.oracle);
        return result;
    }
    if (k == 0 && l == 1) {
        const auto& [A, B] = *rp.classes[0].bipartition;
        const VertexSet& big = A.size() >= B.size() ? A : B;
        const VertexSet& small = A.size() >= B.size() ? B : A;
        long long diff = static_cast<long long>(big.size()) - small.size();
        PathSystem ps(g.n());
        if (diff == 0) {
            auto cross = g.edges();
            bool added = false;
            for (auto [u, v] : cross) {
                bool crossing = (A.contains(u) && B.contains(v)) || (A.contains(v) && B.contains(u));
                if (crossing) {
                    ps.add_path({u, v});
                    added = true;
                    break;
                }
            }
            if (!added) throw refinement_error("(0,1) route: no crossing edge");
        } else {
            auto inside = g.induced(big).edges();
            PathSystem matching = bounded_matching(g, inside);
            if (static_cast<long long>(matching.size()) < diff)
                throw refinement_error("(0,1) route: matching smaller than |A|-|B|");
            for (long long i = 0; i < diff; ++i) ps.add_path(matching.paths()[i]);
        }
        return finish(std::move(ps), "(0,1)");
    }
    if (k == 1 && l == 1) {
        const ComponentLabel* expander = nullptr;
        const ComponentLabel* bip = nullptr;
        for (const auto& cl : rp.classes)
            (cl.kind == ComponentKind::EXPANDER ? expander : bip) = &cl;
        const auto& [A, B] = *bip->bipartition;
        PathSystem ps = one_one_path_system(g, expander->vertices, A, B);
        if (!(Rat(2, 1) * rho).geq_times(ps.edge_count(), g.n()))
            throw refinement_error("(1,1) route: path system exceeds 2*rho*n edges");
        return finish(std::move(ps), "(1,1)");
    }

    result.stability = rp;
    result.route = "stability(" + std::to_string(k) + "," + std::to_string(l) + ")";
    return result;
}

LongCycleResult long_cycle_pipeline(const Graph& g, int t, const PipelineOptions& opt, int r, const Rat& epsilon) {
    if (t < 1) throw input_error("long_cycle_pipeline: t must be positive");
    if (vertex_connectivity(g) < t)
        throw precondition_error("long_cycle_pipeline: graph not " + std::to_string(t) + "-connected");

    auto [rp, trace] = refine_to_robust_partition(g, opt.schedule);

    std::vector<ComponentLabel> sorted = rp.classes;
    std::stable_sort(sorted.begin(), sorted.end(), [](const ComponentLabel& x, const ComponentLabel& y) {
        if (x.vertices.size() != y.vertices.size()) return x.vertices.size() > y.vertices.size();
        return x.vertices.min() < y.vertices.min();
    });
    if (static_cast<int>(sorted.size()) > t) sorted.resize(t);

    WeakSubpartition sub;
    sub.classes = sorted;
    sub.params = rp.params;
    sub.eta = honest_eta(g, sorted);

    auto [adjusted, tour] = subpartition_tour(g, sub, t);
    CycleResult cycle = assemble_hamilton(g, adjusted, tour, opt.oracle);

    LongCycleResult res{std::move(cycle), 0, static_cast<int>(sorted.size()), rp};
    res.covered = static_cast<int>(res.cycle.cycle.size());
    if (r > 1) {
        Rat frac = min(Rat(t, r - 1), Rat(1, 1) - epsilon);
        res.bound = frac * Rat(g.n(), 1);
    }
    return res;
}

}  // namespace rpt
