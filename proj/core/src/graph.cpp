#include "rpt/graph.hpp"

#include <algorithm>
#include <queue>

namespace rpt {

void Graph::add_edge(int u, int v) {
    if (u == v) throw input_error("self-loop " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw input_error("edge endpoint out of range");
    if (adj_[u].contains(v)) throw input_error("parallel edge " + std::to_string(u) + " " + std::to_string(v));
    adj_[u].add(v);
    adj_[v].add(u);
    ++m_;
}

void Graph::remove_edge(int u, int v) {
    if (!has_edge(u, v)) throw input_error("removing absent edge " + std::to_string(u) + " " + std::to_string(v));
    adj_[u].remove(v);
    adj_[v].remove(u);
    --m_;
}

int Graph::min_degree() const {
    int d = n_ > 0 ? degree(0) : 0;
    for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
    return d;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (u < v) out.emplace_back(u, v);
        });
    return out;
}

long long Graph::edges_within(const VertexSet& a) const {
    long long twice = 0;
    a.for_each([&](int u) { twice += adj_[u].intersection_size(a); });
    return twice / 2;
}

long long Graph::edges_between(const VertexSet& a, const VertexSet& b) const {
    long long incidences = 0;
    a.for_each([&](int u) { incidences += adj_[u].intersection_size(b); });
    return incidences - edges_within(a & b);
}

Graph::EdgeCounts Graph::edge_counts(const VertexSet& a, const VertexSet& b) const {
    if (a.universe() != n_ || b.universe() != n_) throw input_error("edge_counts: set universe mismatch");
    long long e_a = edges_within(a);
    long long e_overlap = edges_within(a & b);
    long long incidences = 0;
    a.for_each([&](int u) { incidences += adj_[u].intersection_size(b); });
    return EdgeCounts{incidences - e_overlap, incidences, e_a};
}

Graph Graph::induced(const VertexSet& keep) const {
    Graph h(n_);
    keep.for_each([&](int u) {
        (adj_[u] & keep).for_each([&](int v) {
            if (u < v) h.add_edge(u, v);
        });
    });
    return h;
}

void Digraph::add_arc(int u, int v) {
    if (u == v) throw input_error("loop arc " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw input_error("arc endpoint out of range");
    if (out_[u].contains(v)) throw input_error("parallel arc");
    out_[u].add(v);
    in_[v].add(u);
    ++m_;
}

int Digraph::min_semi_degree() const {
    if (n_ == 0) return 0;
    int d = std::min(out_degree(0), in_degree(0));
    for (int v = 1; v < n_; ++v) d = std::min({d, out_degree(v), in_degree(v)});
    return d;
}

// ---- vertex connectivity via vertex-split max flow ----

namespace {

// Small Dinic network on 2n nodes (v_in = 2v, v_out = 2v+1).
struct FlowNet {
    struct Arc {
        int to, rev, cap;
    };
    std::vector<std::vector<Arc>> g;
    std::vector<int> level, it;

    explicit FlowNet(int nodes) : g(nodes) {}

    void add(int u, int v, int cap) {
        g[u].push_back({v, (int)g[v].size(), cap});
        g[v].push_back({u, (int)g[u].size() - 1, 0});
    }

    bool bfs(int s, int t) {
        level.assign(g.size(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const Arc& a : g[u])
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[u] + 1;
                    q.push(a.to);
                }
        }
        return level[t] >= 0;
    }

    int dfs(int u, int t, int f) {
        if (u == t) return f;
        for (int& i = it[u]; i < (int)g[u].size(); ++i) {
            Arc& a = g[u][i];
            if (a.cap > 0 && level[a.to] == level[u] + 1) {
                int d = dfs(a.to, t, std::min(f, a.cap));
                if (d > 0) {
                    a.cap -= d;
                    g[a.to][a.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    int max_flow(int s, int t, int cap_limit) {
        int flow = 0;
        while (flow < cap_limit && bfs(s, t)) {
            it.assign(g.size(), 0);
            int f;
            while (flow < cap_limit && (f = dfs(s, t, cap_limit - flow)) > 0) flow += f;
        }
        return flow;
    }
};

int split_flow(const Graph& g, int s, int t, int limit) {
    int n = g.n();
    FlowNet net(2 * n);
    for (int v = 0; v < n; ++v) net.add(2 * v, 2 * v + 1, v == s || v == t ? n : 1);
    for (auto [u, v] : g.edges()) {
        net.add(2 * u + 1, 2 * v, n);
        net.add(2 * v + 1, 2 * u, n);
    }
    return net.max_flow(2 * s + 1, 2 * t, limit);
}

}  // namespace

int vertex_connectivity(const Graph& g) {
    int n = g.n();
    if (n < 2) throw input_error("vertex_connectivity requires n >= 2");
    bool complete = true;
    for (int v = 0; v < n && complete; ++v) complete = g.degree(v) == n - 1;
    if (complete) return n - 1;

    int kappa = g.min_degree();
    // A minimum separator has kappa vertices, so one of the first kappa+1
    // vertices avoids it; pairing that vertex with every non-neighbour finds
    // the cut.
    for (int u = 0; u < n && u <= kappa; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v == u || g.has_edge(u, v)) continue;
            kappa = std::min(kappa, split_flow(g, u, v, kappa + 1));
            if (kappa == 0) return 0;
        }
    }
    return kappa;
}

// ---- matchings ----

namespace {

std::vector<Edge> bipartite_matching(const Graph& g, const VertexSet& a, const VertexSet& b) {
    std::vector<int> left = a.to_vector();
    int n = g.n();
    std::vector<int> match_of(n, -1);  // over b-vertices -> a-vertex
    std::vector<char> seen(n);

    auto try_augment = [&](auto&& self, int u) -> bool {
        bool found = false;
        (g.neighbours(u) & b).for_each([&](int v) {
            if (found || seen[v]) return;
            seen[v] = 1;
            if (match_of[v] < 0 || self(self, match_of[v])) {
                match_of[v] = u;
                found = true;
            }
        });
        return found;
    };

    for (int u : left) {
        std::fill(seen.begin(), seen.end(), 0);
        try_augment(try_augment, u);
    }
    std::vector<Edge> out;
    for (int v = 0; v < n; ++v)
        if (match_of[v] >= 0) out.emplace_back(std::min(v, match_of[v]), std::max(v, match_of[v]));
    std::sort(out.begin(), out.end());
    return out;
}

// Classic blossom-contraction matching; deterministic, O(V^3).
std::vector<Edge> general_matching(const Graph& g, const VertexSet& host) {
    int n = g.n();
    std::vector<int> match(n, -1), p(n), base(n);
    std::vector<char> used(n), blossom(n);
    std::vector<int> verts = host.to_vector();

    auto lca = [&](int a, int b) {
        std::vector<char> mark(n, 0);
        for (;;) {
            a = base[a];
            mark[a] = 1;
            if (match[a] < 0) break;
            a = p[match[a]];
        }
        for (;;) {
            b = base[b];
            if (mark[b]) return b;
            b = p[match[b]];
        }
    };

    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    };

    auto find_path = [&](int root) -> int {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            int result = -1;
            (g.neighbours(v) & host).for_each([&](int to) {
                if (result >= 0) return;
                if (base[v] == base[to] || match[v] == to) return;
                if (to == root || (match[to] >= 0 && p[match[to]] >= 0)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (p[to] < 0) {
                    p[to] = v;
                    if (match[to] < 0) {
                        result = to;
                    } else {
                        used[match[to]] = 1;
                        q.push(match[to]);
                    }
                }
            });
            if (result >= 0) return result;
        }
        return -1;
    };

    for (int v : verts) {
        if (match[v] >= 0) continue;
        int u = find_path(v);
        while (u >= 0) {
            int pv = p[u], ppv = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = ppv;
        }
    }
    std::vector<Edge> out;
    for (int v : verts)
        if (match[v] > v) out.emplace_back(v, match[v]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Edge> max_matching(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a == b) return general_matching(g, a);
    if (a.intersects(b)) throw input_error("max_matching: sides overlap in bipartite mode");
    return bipartite_matching(g, a, b);
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& deleted) {
    int n = g.n();
    VertexSet remaining = VertexSet::full(n) - deleted;
    std::vector<VertexSet> comps;
    while (!remaining.empty()) {
        int start = remaining.min();
        VertexSet comp(n);
        VertexSet frontier(n);
        frontier.add(start);
        while (!frontier.empty()) {
            comp = comp | frontier;
            VertexSet next(n);
            frontier.for_each([&](int u) { next = next | (g.neighbours(u) & remaining); });
            frontier = next - comp;
        }
        comps.push_back(comp);
        remaining = remaining - comp;
    }
    // BFS from ascending minima already yields the required order
    return comps;
}

bool is_connected_within(const Graph& g, const VertexSet& host) {
    if (host.empty()) return true;
    auto comps = connected_components(g, host.complement());
    return comps.size() == 1;
}

}  // namespace rpt
