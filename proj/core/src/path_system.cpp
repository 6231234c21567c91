#include "rpt/path_system.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace rpt {

PathSystem::PathSystem(int n, std::vector<std::vector<int>> paths) : n_(n) {
    for (auto& p : paths) add_path(std::move(p));
}

PathSystem PathSystem::from_edges(int n, const std::vector<Edge>& edges) {
    PathSystem ps(n);
    for (auto [u, v] : edges) ps.add_path({u, v});
    return ps;
}

void PathSystem::add_path(std::vector<int> p) {
    if (p.empty()) throw input_error("empty path");
    for (int v : p)
        if (v < 0 || v >= n_) throw input_error("path vertex out of range");
    paths_.push_back(std::move(p));
}

VertexSet PathSystem::vertices() const {
    VertexSet s(n_);
    for (const auto& p : paths_)
        for (int v : p) s.add(v);
    return s;
}

VertexSet PathSystem::endpoints() const {
    VertexSet s(n_);
    for (const auto& p : paths_)
        if (p.size() >= 2) {
            s.add(p.front());
            s.add(p.back());
        }
    return s;
}

VertexSet PathSystem::internals() const {
    VertexSet s(n_);
    for (const auto& p : paths_)
        for (size_t i = 1; i + 1 < p.size(); ++i) s.add(p[i]);
    return s;
}

long long PathSystem::edge_count() const {
    long long c = 0;
    for (const auto& p : paths_) c += static_cast<long long>(p.size()) - 1;
    return c;
}

std::vector<Edge> PathSystem::edges() const {
    std::vector<Edge> out;
    for (const auto& p : paths_)
        for (size_t i = 0; i + 1 < p.size(); ++i)
            out.emplace_back(std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1]));
    std::sort(out.begin(), out.end());
    return out;
}

int PathSystem::degree_of(int v) const {
    for (const auto& p : paths_) {
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] == v) return p.size() == 1 ? 0 : ((i == 0 || i + 1 == p.size()) ? 1 : 2);
    }
    return 0;
}

int PathSystem::end_count(const VertexSet& u) const {
    int c = 0;
    for (const auto& p : paths_)
        if (p.size() >= 2) c += u.contains(p.front()) + u.contains(p.back());
    return c;
}

int PathSystem::int_count(const VertexSet& u) const {
    int c = 0;
    for (const auto& p : paths_)
        for (size_t i = 1; i + 1 < p.size(); ++i) c += u.contains(p[i]);
    return c;
}

long long PathSystem::edges_within(const VertexSet& a) const {
    long long c = 0;
    for (const auto& p : paths_)
        for (size_t i = 0; i + 1 < p.size(); ++i) c += a.contains(p[i]) && a.contains(p[i + 1]);
    return c;
}

long long PathSystem::edges_between(const VertexSet& a, const VertexSet& b) const {
    long long c = 0;
    for (const auto& p : paths_)
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            int u = p[i], v = p[i + 1];
            c += (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
        }
    return c;
}

void PathSystem::validate_against(const Graph& g) const {
    VertexSet seen(n_);
    for (const auto& p : paths_) {
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen.contains(p[i])) throw input_error("path system repeats vertex " + std::to_string(p[i]));
            seen.add(p[i]);
            if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1]))
                throw input_error("path uses non-edge " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]));
        }
    }
}

PathSystem PathSystem::without_trivial() const {
    PathSystem out(n_);
    for (const auto& p : paths_)
        if (p.size() >= 2) out.add_path(p);
    return out;
}

// ---- reduced multigraph ----

int ReducedMultigraph::degree(int part) const {
    int d = 0;
    for (auto [a, b] : edges) {
        if (a == part) ++d;
        if (b == part) ++d;  // loops count twice
    }
    return d;
}

bool ReducedMultigraph::all_even() const {
    for (size_t i = 0; i < parts.size(); ++i)
        if (degree(static_cast<int>(i)) % 2) return false;
    return true;
}

bool ReducedMultigraph::connected_spanning() const {
    size_t s = parts.size();
    if (s == 0) return false;
    if (edges.empty()) return false;
    std::vector<int> comp(s, -1);
    std::function<void(int, int)> dfs = [&](int u, int c) {
        comp[u] = c;
        for (auto [a, b] : edges) {
            if (a == u && comp[b] < 0) dfs(b, c);
            if (b == u && comp[a] < 0) dfs(a, c);
        }
    };
    dfs(0, 0);
    for (size_t i = 0; i < s; ++i)
        if (comp[i] < 0) return false;
    return true;
}

std::optional<std::vector<int>> ReducedMultigraph::euler_tour() const {
    if (!all_even() || !connected_spanning()) return std::nullopt;
    // Hierholzer over edge indices
    size_t s = parts.size();
    std::vector<std::vector<std::pair<int, int>>> inc(s);  // (other endpoint, edge index)
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        inc[a].push_back({b, (int)e});
        if (a != b) inc[b].push_back({a, (int)e});
    }
    std::vector<char> used(edges.size(), 0);
    std::vector<size_t> it(s, 0);
    std::vector<int> stack_v{0}, tour_edges;
    std::vector<int> edge_stack;
    while (!stack_v.empty()) {
        int v = stack_v.back();
        bool advanced = false;
        while (it[v] < inc[v].size()) {
            auto [w, e] = inc[v][it[v]++];
            if (used[e]) continue;
            used[e] = 1;
            stack_v.push_back(w);
            edge_stack.push_back(e);
            advanced = true;
            break;
        }
        if (!advanced) {
            stack_v.pop_back();
            if (!edge_stack.empty() && !stack_v.empty()) {
                tour_edges.push_back(edge_stack.back());
                edge_stack.pop_back();
            }
        }
    }
    if (tour_edges.size() != edges.size()) return std::nullopt;
    std::reverse(tour_edges.begin(), tour_edges.end());
    return tour_edges;
}

namespace {

int part_of(const std::vector<VertexSet>& parts, int v) {
    for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i].contains(v)) return static_cast<int>(i);
    return -1;
}

void check_disjoint(const std::vector<VertexSet>& parts) {
    if (parts.empty()) throw input_error("empty part family");
    VertexSet seen(parts[0].universe());
    for (const auto& p : parts) {
        if (seen.intersects(p)) throw input_error("parts overlap");
        seen = seen | p;
    }
}

}  // namespace

std::pair<ReducedMultigraph, std::optional<std::vector<int>>> reduced_multigraph_euler(
    const std::vector<VertexSet>& parts, const PathSystem& ps) {
    check_disjoint(parts);
    ReducedMultigraph r;
    r.parts = parts;
    for (const auto& p : ps.paths()) {
        int a = part_of(parts, p.front());
        int b = part_of(parts, p.back());
        if (a < 0 || b < 0)
            throw precondition_error("path system not anchored: endpoint outside every part");
        r.edges.push_back({a, b});
    }
    auto tour = r.euler_tour();
    return {r, tour};
}

// ---- matchings ----

PathSystem menger_matching(const Graph& g, const VertexSet& a, int k) {
    VertexSet comp = a.complement();
    if (a.size() < k || comp.size() < k)
        throw precondition_error("menger_matching: sides smaller than k");
    if (vertex_connectivity(g) < k)
        throw precondition_error("menger_matching: graph is not " + std::to_string(k) + "-connected");
    auto m = max_matching(g, a, comp);
    if (static_cast<int>(m.size()) < k)
        throw std::logic_error("Menger guarantee violated by matching code");
    return PathSystem::from_edges(g.n(), m);
}

PathSystem bounded_matching(const Graph& g, const std::vector<Edge>& host_edges) {
    Graph h(g.n());
    for (auto [u, v] : host_edges) {
        if (!g.has_edge(u, v)) throw input_error("bounded_matching: host edge not in graph");
        h.add_edge(u, v);
    }
    auto m = max_matching(h, VertexSet::full(g.n()), VertexSet::full(g.n()));
    long long e = h.edge_count();
    long long delta = h.max_degree();
    long long bound = (e + delta) / (delta + 1);  // ceil(e/(Delta+1))
    if (static_cast<long long>(m.size()) < bound)
        throw std::logic_error("matching below the Vizing bound");
    return PathSystem::from_edges(g.n(), m);
}

std::pair<long long, long long> regular_partition_identity(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                           const VertexSet& v) {
    if (!g.is_regular()) throw input_error("regular_partition_identity: graph not regular");
    if (a.intersects(b) || a.intersects(v) || b.intersects(v) || (a | b | v) != VertexSet::full(g.n()))
        throw input_error("regular_partition_identity: A,B,V must partition V(G)");
    long long D = g.n() > 0 ? g.degree(0) : 0;
    long long lhs = 2 * (g.edges_within(a) - g.edges_within(b)) + g.edges_between(a, v) - g.edges_between(b, v);
    long long rhs = (static_cast<long long>(a.size()) - b.size()) * D;
    return {lhs, rhs};
}

// ---- three-part connector (<= 3 parts, <= 4 crossing edges) ----

namespace {

bool connector_clauses_ok(const Graph& g, const std::vector<VertexSet>& parts, const PathSystem& ps) {
    if (ps.edge_count() > 4) return false;
    for (auto [u, v] : ps.edges()) {
        int pu = part_of(parts, u), pv = part_of(parts, v);
        if (pu < 0 || pv < 0) return false;
        if (parts.size() >= 2 && pu == pv) return false;  // crossing edges only
    }
    auto [r, tour] = reduced_multigraph_euler(parts, ps);
    if (!tour) return false;
    for (const auto& part : parts) {
        int c1 = 0, c2 = 0;
        part.for_each([&](int v) {
            int d = ps.degree_of(v);
            if (d == 1) ++c1;
            if (d == 2) ++c2;
        });
        if (c2 > 1) return false;
        int val = c1 + 2 * c2;
        if (val != 2 && val != 4) return false;
    }
    return true;
}

std::vector<Edge> submatching_into(const std::vector<Edge>& m, const VertexSet& side) {
    std::vector<Edge> out;
    for (auto [u, v] : m)
        if (side.contains(u) || side.contains(v)) out.emplace_back(u, v);
    return out;
}

// endpoint of e lying inside `side`
int end_in(Edge e, const VertexSet& side) { return side.contains(e.first) ? e.first : e.second; }

std::optional<PathSystem> try_three_labels(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                                           const VertexSet& v3) {
    int n = g.n();
    auto m_a = max_matching(g, v1, v2 | v3);
    auto m12_all = submatching_into(m_a, v2);
    if (m12_all.size() < 2) return std::nullopt;
    std::vector<Edge> m12(m12_all.begin(), m12_all.begin() + 2);

    auto m_b = max_matching(g, v3, v1 | v2);
    if (m_b.size() < 3) return std::nullopt;
    auto m13 = submatching_into(m_b, v1);
    auto m23 = submatching_into(m_b, v2);

    if (m13.size() >= 3) {
        m13.resize(3);
        VertexSet m12_v1(n);
        for (auto e : m12) m12_v1.add(end_in(e, v1));
        std::vector<Edge> disjoint, sharing;
        for (auto e : m13)
            (m12_v1.contains(end_in(e, v1)) ? sharing : disjoint).push_back(e);
        PathSystem ps(n);
        if (disjoint.size() >= 2) {
            ps.add_path({disjoint[0].first, disjoint[0].second});
            ps.add_path({disjoint[1].first, disjoint[1].second});
            for (auto e : m12) ps.add_path({e.first, e.second});
            return ps;
        }
        // exactly two sharing edges: u1u3, v1v3 share u1, v1 with m12
        int u1 = end_in(sharing[0], v1), u3 = end_in(sharing[0], v3);
        int w1 = end_in(sharing[1], v1), w3 = end_in(sharing[1], v3);
        // match them with their m12 partners
        int u2 = -1, w2 = -1;
        for (auto e : m12) {
            if (end_in(e, v1) == u1) u2 = end_in(e, v2);
            if (end_in(e, v1) == w1) w2 = end_in(e, v2);
        }
        if (u2 < 0 || w2 < 0 || disjoint.empty()) return std::nullopt;
        ps.add_path({u1, u2});
        ps.add_path({w2, w1, w3});
        (void)u3;
        ps.add_path({disjoint[0].first, disjoint[0].second});
        return ps;
    }

    if (m13.size() >= 2 && !m23.empty()) {
        m13.resize(2);
        Edge e23 = m23.front();
        int b2 = end_in(e23, v2), b3 = end_in(e23, v3);
        // pick w1w2 in m12 with w2 != b2, x1x3 in m13 with x1 != w1
        for (auto e12 : m12) {
            int w1 = end_in(e12, v1), w2 = end_in(e12, v2);
            if (w2 == b2) continue;
            for (auto e13 : m13) {
                int x1 = end_in(e13, v1), x3 = end_in(e13, v3);
                if (x1 == w1 || x3 == b3) continue;
                PathSystem ps(n);
                ps.add_path({w1, w2});
                ps.add_path({b2, b3});
                ps.add_path({x3, x1});
                return ps;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

PathSystem three_part_connector(const Graph& g, const std::vector<VertexSet>& parts) {
    check_disjoint(parts);
    if (parts.empty() || parts.size() > 3) throw precondition_error("three_part_connector: needs 1..3 parts");
    VertexSet all(g.n());
    for (const auto& p : parts) {
        if (p.size() < 3) throw precondition_error("three_part_connector: part smaller than 3");
        all = all | p;
    }
    if (all != VertexSet::full(g.n())) throw precondition_error("three_part_connector: parts must partition V(G)");
    if (vertex_connectivity(g) < 3) throw precondition_error("three_part_connector: graph not 3-connected");

    PathSystem result(g.n());
    if (parts.size() == 1) {
        auto es = g.edges();
        if (es.empty()) throw precondition_error("three_part_connector: no edge available");
        result.add_path({es[0].first, es[0].second});
    } else if (parts.size() == 2) {
        auto m = max_matching(g, parts[0], parts[1]);
        if (m.size() < 2) throw std::logic_error("matching of size two missing in 3-connected graph");
        result.add_path({m[0].first, m[0].second});
        result.add_path({m[1].first, m[1].second});
    } else {
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        std::optional<PathSystem> found;
        for (const auto& pm : perms) {
            found = try_three_labels(g, parts[pm[0]], parts[pm[1]], parts[pm[2]]);
            if (found && connector_clauses_ok(g, parts, *found)) break;
            found.reset();
        }
        if (!found) throw std::logic_error("three_part_connector: construction failed in 3-connected graph");
        result = *found;
    }
    result.validate_against(g);
    if (!connector_clauses_ok(g, parts, result))
        throw std::logic_error("three_part_connector: output violates its contract");
    return result;
}

// ---- balancing ----

namespace {

long long balance_lhs(const PathSystem& ps, const VertexSet& a, const VertexSet& b, const VertexSet& u_comp) {
    return 2 * ps.edges_within(a) - 2 * ps.edges_within(b) + ps.edges_between(a, u_comp) -
           ps.edges_between(b, u_comp);
}

}  // namespace

PathSystem path_cover_balance(const Graph& g, const VertexSet& a, const VertexSet& b, const PathSystem& ps,
                              const Rat& rho) {
    if (a.intersects(b)) throw input_error("path_cover_balance: sides overlap");
    long long n = g.n();
    VertexSet u = a | b;
    VertexSet u_comp = u.complement();

    // mirror so that |A| >= |B|
    const VertexSet& A = a.size() >= b.size() ? a : b;
    const VertexSet& B = a.size() >= b.size() ? b : a;

    long long diff = A.size() - B.size();
    if (!rho.geq_times(diff, n)) throw precondition_error("path_cover_balance: ||A|-|B|| > rho*n");

    Rat nine_rho = Rat(9, 1) * rho;
    int cross_min = g.n();
    A.for_each([&](int x) { cross_min = std::min(cross_min, g.degree_in(x, B)); });
    B.for_each([&](int x) { cross_min = std::min(cross_min, g.degree_in(x, A)); });
    if (nine_rho.geq_times(cross_min, n))
        throw precondition_error("path_cover_balance: delta(G[A,B]) <= 9*rho*n");

    VertexSet psv = ps.vertices();
    if (!rho.geq_times(psv.intersection_size(u), n))
        throw precondition_error("path_cover_balance: |V(P) cap U| > rho*n");
    if (!ps.endpoints().intersects(u))
        throw precondition_error("path_cover_balance: no endpoint of P in U");
    if (balance_lhs(ps, A, B, u_comp) != 2 * diff)
        throw precondition_error("path_cover_balance: balance equation fails");

    // A0, B0 minimal with V(P) cap U inside and |A0|-|B0| = |A|-|B|
    std::vector<int> a0 = (psv & A).to_vector();
    std::vector<int> b0 = (psv & B).to_vector();
    long long d0 = static_cast<long long>(a0.size()) - static_cast<long long>(b0.size());
    auto pad = [&](std::vector<int>& side_sel, const VertexSet& side, long long count) {
        (side - psv).for_each([&](int v) {
            if (count > 0) {
                side_sel.push_back(v);
                --count;
            }
        });
        if (count > 0) throw precondition_error("path_cover_balance: not enough free vertices to pad");
    };
    if (d0 < diff) pad(a0, A, diff - d0);
    if (d0 > diff) pad(b0, B, d0 - diff);

    VertexSet a0s(g.n()), b0s(g.n());
    for (int v : a0) a0s.add(v);
    for (int v : b0) b0s.add(v);

    // degree-completing neighbour sets, lowest ids first, avoiding V(P) and
    // one another
    VertexSet used = psv | a0s | b0s;
    std::vector<Edge> new_edges;
    auto complete = [&](const std::vector<int>& sel, const VertexSet& other_side, const VertexSet& other_sel) {
        for (int x : sel) {
            int need = 2 - ps.degree_of(x);
            ((g.neighbours(x) & other_side) - other_sel).for_each([&](int y) {
                if (need > 0 && !used.contains(y)) {
                    used.add(y);
                    new_edges.emplace_back(x, y);
                    --need;
                }
            });
            if (need > 0)
                throw precondition_error("path_cover_balance: cannot complete degrees (cross degree too small)");
        }
    };
    complete(a0, B, b0s);
    complete(b0, A, a0s);

    // rebuild the path system from old + new edges
    std::vector<Edge> all_edges = ps.edges();
    for (auto [x, y] : new_edges) all_edges.emplace_back(std::min(x, y), std::max(x, y));
    std::map<int, std::vector<int>> adj;
    for (auto [x, y] : all_edges) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    for (auto& [v, nb] : adj) {
        if (nb.size() > 2) throw std::logic_error("path_cover_balance: vertex degree exceeds 2");
        std::sort(nb.begin(), nb.end());
    }
    PathSystem out(g.n());
    VertexSet taken(g.n());
    for (auto& [v, nb] : adj) {
        if (taken.contains(v) || nb.size() == 2) continue;  // start from path ends
        std::vector<int> path{v};
        taken.add(v);
        int prev = -1, cur = v;
        for (;;) {
            int next = -1;
            for (int w : adj[cur])
                if (w != prev && !taken.contains(w)) {
                    next = w;
                    break;
                }
            if (next < 0) break;
            path.push_back(next);
            taken.add(next);
            prev = cur;
            cur = next;
        }
        out.add_path(std::move(path));
    }
    for (auto& [v, nb] : adj)
        if (!taken.contains(v)) throw std::logic_error("path_cover_balance: created a cycle");

    out.validate_against(g);
    // (beta): (A,B)-balanced
    int ea = out.end_count(A), eb = out.end_count(B);
    long long ia = out.int_count(A), ib = out.int_count(B);
    if (ea != eb || ea == 0 || A.size() - ia != B.size() - ib)
        throw std::logic_error("path_cover_balance: output not (A,B)-balanced");
    // (gamma)
    if (!nine_rho.geq_times(out.vertices().intersection_size(u), n))
        throw std::logic_error("path_cover_balance: footprint exceeds 9*rho*n");
    return out;
}

std::vector<VertexSet> WeakSubpartition::parts() const {
    std::vector<VertexSet> out;
    out.reserve(classes.size());
    for (const auto& c : classes) out.push_back(c.vertices);
    return out;
}

int WeakSubpartition::k() const {
    int c = 0;
    for (const auto& cl : classes) c += cl.kind == ComponentKind::EXPANDER;
    return c;
}

int WeakSubpartition::l() const {
    int c = 0;
    for (const auto& cl : classes) c += cl.kind == ComponentKind::BIPARTITE;
    return c;
}

PathSystem balance_extend(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps, const Rat& rho) {
    long long n = g.n();
    auto parts = sub.parts();
    check_disjoint(parts);

    // (D4') / (D5') with the subpartition's eta; the expansion clauses are the
    // caller's certificate and get revalidated by the tour checker's user.
    for (const auto& cl : sub.classes) {
        int mind = g.n();
        cl.vertices.for_each([&](int x) { mind = std::min(mind, g.degree_in(x, cl.vertices)); });
        if (!sub.eta.leq_times(mind, n)) throw precondition_error("balance_extend: (D4') fails");
        if (cl.kind == ComponentKind::BIPARTITE) {
            if (!cl.bipartition) throw precondition_error("balance_extend: bipartite class without bipartition");
            const auto& [A, B] = *cl.bipartition;
            int cross = g.n();
            A.for_each([&](int x) { cross = std::min(cross, g.degree_in(x, B)); });
            B.for_each([&](int x) { cross = std::min(cross, g.degree_in(x, A)); });
            if (!(sub.eta * Rat(1, 2)).leq_times(cross, n)) throw precondition_error("balance_extend: (D5') fails");
        }
    }

    auto [r, tour] = reduced_multigraph_euler(parts, ps);
    if (!tour || r.edges.empty())
        throw precondition_error("balance_extend: reduced multigraph is not a non-empty Euler tour");

    VertexSet psv = ps.vertices();
    for (const auto& cl : sub.classes)
        if (!rho.geq_times(psv.intersection_size(cl.vertices), n))
            throw precondition_error("balance_extend: |V(P) cap U| > rho*n for a class");

    for (const auto& cl : sub.classes) {
        if (cl.kind != ComponentKind::BIPARTITE) continue;
        const auto& [A, B] = *cl.bipartition;
        VertexSet w_comp = cl.vertices.complement();
        if (balance_lhs(ps, A, B, w_comp) != 2 * (static_cast<long long>(A.size()) - B.size()))
            throw precondition_error("balance_extend: class balance equation fails");
    }

    PathSystem cur = ps;
    for (const auto& cl : sub.classes) {
        if (cl.kind != ComponentKind::BIPARTITE) continue;
        const auto& [A, B] = *cl.bipartition;
        cur = path_cover_balance(g, A, B, cur, rho);
    }

    Rat gamma = Rat(9, 1) * rho;
    auto viol = tour_violations(g, sub, cur, gamma);
    if (!viol.empty()) {
        std::string msg = "balance_extend: output fails tour validation:";
        for (const auto& v : viol) msg += " " + v;
        throw contract_error(msg);
    }
    return cur;
}

// ---- cycle connector / pruning / subpartition tour ----

namespace {

// vertex-disjoint fan from V(P) to `sinks`; internal vertices avoid both sets
std::vector<std::vector<int>> disjoint_fan(const Graph& g, const VertexSet& sources, const VertexSet& sinks,
                                           int want) {
    int n = g.n();
    // flow nodes: 2v, 2v+1 (vertex split), plus super source S = 2n, sink T = 2n+1
    struct Arc {
        int to, rev, cap;
    };
    std::vector<std::vector<Arc>> net(2 * n + 2);
    auto add = [&](int u, int v, int cap) {
        net[u].push_back({v, (int)net[v].size(), cap});
        net[v].push_back({u, (int)net[u].size() - 1, 0});
    };
    int S = 2 * n, T = 2 * n + 1;
    for (int v = 0; v < n; ++v) add(2 * v, 2 * v + 1, 1);
    sources.for_each([&](int v) { add(S, 2 * v, 1); });
    sinks.for_each([&](int v) { add(2 * v + 1, T, 1); });
    for (auto [u, v] : g.edges()) {
        // arcs into sources are forbidden (no internal use); arcs out of
        // sinks only reach T
        if (!sinks.contains(u) && !sources.contains(v)) add(2 * u + 1, 2 * v, 1);
        if (!sinks.contains(v) && !sources.contains(u)) add(2 * v + 1, 2 * u, 1);
    }
    // BFS/DFS Dinic
    std::vector<int> level, it;
    auto bfs = [&]() {
        level.assign(net.size(), -1);
        std::queue<int> q;
        level[S] = 0;
        q.push(S);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto& a : net[u])
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[u] + 1;
                    q.push(a.to);
                }
        }
        return level[T] >= 0;
    };
    std::function<int(int, int)> dfs = [&](int u, int f) -> int {
        if (u == T) return f;
        for (int& i = it[u]; i < (int)net[u].size(); ++i) {
            auto& a = net[u][i];
            if (a.cap > 0 && level[a.to] == level[u] + 1) {
                int d = dfs(a.to, std::min(f, a.cap));
                if (d > 0) {
                    a.cap -= d;
                    net[a.to][a.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    };
    int flow = 0;
    while (flow < want && bfs()) {
        it.assign(net.size(), 0);
        int f;
        while (flow < want && (f = dfs(S, want - flow)) > 0) flow += f;
    }
    if (flow < want) return {};
    // decompose: walk saturated forward arcs from each used source; vertex
    // capacities make the walks vertex-disjoint
    std::vector<std::vector<int>> paths;
    sources.for_each([&](int s0) {
        // did the source get used
        for (auto& a : net[S])
            if (a.to == 2 * s0 && a.cap == 0) {
                std::vector<int> path{s0};
                int cur = s0;
                while (!sinks.contains(cur)) {
                    int next = -1;
                    for (auto& arc : net[2 * cur + 1]) {
                        if (arc.to == T) continue;
                        if (arc.to % 2 == 0 && arc.cap == 0 && arc.to / 2 != cur) {
                            // consumed forward arc; confirm vertex arc of target also used
                            int w = arc.to / 2;
                            // mark so we do not reuse
                            arc.cap = -1;
                            next = w;
                            break;
                        }
                    }
                    if (next < 0) break;
                    path.push_back(next);
                    cur = next;
                }
                if (sinks.contains(cur)) paths.push_back(path);
            }
    });
    if ((int)paths.size() < want) return {};
    paths.resize(want);
    return paths;
}

}  // namespace

PathSystem cycle_connector(const Graph& g, const std::vector<VertexSet>& parts) {
    check_disjoint(parts);
    int t = static_cast<int>(parts.size());
    int n = g.n();
    for (const auto& p : parts)
        if (p.size() < 2 * t) throw precondition_error("cycle_connector: part smaller than 2t");
    if (vertex_connectivity(g) < t) throw precondition_error("cycle_connector: graph not t-connected");

    // ordered paths: path i runs from order[i] to order[i+1 mod size]
    std::vector<std::vector<int>> paths;
    std::vector<int> order;

    // first part: nontrivial path with both endpoints in parts[0]
    {
        const VertexSet& u0 = parts[0];
        auto internal = g.induced(u0).edges();
        if (!internal.empty()) {
            paths.push_back({internal[0].first, internal[0].second});
        } else {
            // BFS from min(u0), stopping at any other u0 vertex; internal
            // vertices stay outside u0
            int src = u0.min();
            std::vector<int> parent(n, -2);
            std::queue<int> q;
            parent[src] = -1;
            q.push(src);
            int goal = -1;
            while (!q.empty() && goal < 0) {
                int v = q.front();
                q.pop();
                bool expandable = v == src || !u0.contains(v);
                if (!expandable) continue;
                g.neighbours(v).for_each([&](int w) {
                    if (goal >= 0 || parent[w] != -2) return;
                    parent[w] = v;
                    if (u0.contains(w) && w != src)
                        goal = w;
                    else
                        q.push(w);
                });
            }
            if (goal < 0) throw precondition_error("cycle_connector: no return path inside first part");
            std::vector<int> path;
            for (int v = goal; v != -1; v = parent[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            paths.push_back(path);
        }
        order.push_back(0);
    }

    for (int i = 1; i < t; ++i) {
        const VertexSet& x = parts[i];
        // case A: a path visits x twice
        int hit_path = -1;
        for (size_t pi = 0; pi < paths.size() && hit_path < 0; ++pi) {
            int cnt = 0;
            for (int v : paths[pi]) cnt += x.contains(v);
            if (cnt >= 2) hit_path = static_cast<int>(pi);
        }
        if (hit_path >= 0) {
            const auto& p = paths[hit_path];
            size_t first = p.size(), last = 0;
            for (size_t j = 0; j < p.size(); ++j)
                if (x.contains(p[j])) {
                    if (first == p.size()) first = j;
                    last = j;
                }
            std::vector<int> left(p.begin(), p.begin() + first + 1);
            std::vector<int> right(p.begin() + last, p.end());
            std::vector<std::vector<int>> np;
            std::vector<int> norder;
            for (size_t pi = 0; pi < paths.size(); ++pi) {
                if ((int)pi == hit_path) {
                    np.push_back(left);
                    np.push_back(right);
                    norder.push_back(order[pi]);
                    norder.push_back(i);
                } else {
                    np.push_back(paths[pi]);
                    norder.push_back(order[pi]);
                }
            }
            paths = np;
            order = norder;
            continue;
        }
        // case B: Menger fan of i+1 paths to x', pigeonhole two on one path
        VertexSet covered(n);
        for (const auto& p : paths)
            for (int v : p) covered.add(v);
        VertexSet sinks = x - covered;
        auto fan = disjoint_fan(g, covered, sinks, i + 1);
        if (fan.empty()) throw precondition_error("cycle_connector: Menger fan not found (connectivity violated?)");
        // locate starts on paths
        std::map<int, std::pair<int, int>> start_at;  // vertex -> (path, position)
        for (size_t pi = 0; pi < paths.size(); ++pi)
            for (size_t j = 0; j < paths[pi].size(); ++j) start_at[paths[pi][j]] = {(int)pi, (int)j};
        int pj = -1;
        std::vector<std::pair<int, int>> on_path(paths.size(), {-1, -1});  // fan indices per path
        for (size_t fi = 0; fi < fan.size(); ++fi) {
            auto [pidx, pos] = start_at[fan[fi].front()];
            if (on_path[pidx].first < 0)
                on_path[pidx] = {(int)fi, -1};
            else if (on_path[pidx].second < 0) {
                on_path[pidx].second = (int)fi;
                pj = pidx;
            }
        }
        if (pj < 0) throw std::logic_error("cycle_connector: pigeonhole failed");
        auto [f1, f2] = on_path[pj];
        const auto& p = paths[pj];
        int pos1 = start_at[fan[f1].front()].second;
        int pos2 = start_at[fan[f2].front()].second;
        if (pos1 > pos2) {
            std::swap(f1, f2);
            std::swap(pos1, pos2);
        }
        std::vector<int> left(p.begin(), p.begin() + pos1 + 1);
        left.insert(left.end(), fan[f1].begin() + 1, fan[f1].end());
        std::vector<int> right(fan[f2].rbegin(), fan[f2].rend());
        right.insert(right.end(), p.begin() + pos2 + 1, p.end());
        std::vector<std::vector<int>> np;
        std::vector<int> norder;
        for (size_t pi = 0; pi < paths.size(); ++pi) {
            if ((int)pi == pj) {
                np.push_back(left);
                np.push_back(right);
                norder.push_back(order[pi]);
                norder.push_back(i);
            } else {
                np.push_back(paths[pi]);
                norder.push_back(order[pi]);
            }
        }
        paths = np;
        order = norder;
    }

    PathSystem out(n, paths);
    out.validate_against(g);
    // reduced multigraph must be C_t
    auto [r, tour] = reduced_multigraph_euler(parts, out);
    if (!tour) throw std::logic_error("cycle_connector: output has no Euler tour");
    if (t >= 2) {
        for (int part = 0; part < t; ++part)
            if (r.degree(part) != 2) throw std::logic_error("cycle_connector: reduced multigraph is not C_t");
    } else if (r.edges.size() != 1 || r.edges[0].first != r.edges[0].second) {
        throw std::logic_error("cycle_connector: reduced multigraph is not a loop");
    }
    return out;
}

PathSystem prune_path_system(const std::vector<VertexSet>& parts, const PathSystem& ps) {
    check_disjoint(parts);
    int n = ps.universe();
    auto [r0, tour0] = reduced_multigraph_euler(parts, ps);
    if (!tour0) throw precondition_error("prune_path_system: input reduced multigraph is not an Euler tour");
    int t = static_cast<int>(ps.size());
    size_t s = parts.size();

    if (s == 1) {
        for (const auto& p : ps.paths())
            if (p.size() >= 2) {
                PathSystem out(n);
                out.add_path({p[0], p[1]});
                return out;
            }
        throw precondition_error("prune_path_system: no nontrivial path");
    }

    // drop paths with both endpoints in one part
    std::vector<std::vector<int>> kept;
    for (const auto& p : ps.paths()) {
        if (part_of(parts, p.front()) == part_of(parts, p.back()) && p.size() >= 1)
            continue;
        kept.push_back(p);
    }

    PathSystem out(n);
    for (const auto& p : kept) {
        // pieces as index ranges [lo, hi] of p
        std::vector<std::pair<int, int>> pieces{{0, (int)p.size() - 1}};
        auto visits = [&](const VertexSet& w) {
            int c = 0;
            for (auto [lo, hi] : pieces)
                for (int j = lo; j <= hi; ++j) c += w.contains(p[j]);
            return c;
        };
        for (;;) {
            int wi = -1;
            for (size_t q = 0; q < parts.size(); ++q)
                if (visits(parts[q]) >= 3) {
                    wi = static_cast<int>(q);
                    break;
                }
            if (wi < 0) break;
            const VertexSet& w = parts[wi];
            // j: first piece meeting W, j': last piece meeting W
            int j = -1, jp = -1;
            for (size_t q = 0; q < pieces.size(); ++q) {
                bool meets = false;
                for (int idx = pieces[q].first; idx <= pieces[q].second; ++idx)
                    if (w.contains(p[idx])) meets = true;
                if (meets) {
                    if (j < 0) j = static_cast<int>(q);
                    jp = static_cast<int>(q);
                }
            }
            // w: W-vertex on piece j closest to its start; w': on piece j'
            // closest to its end
            int cut1 = -1, cut2 = -1;
            for (int idx = pieces[j].first; idx <= pieces[j].second; ++idx)
                if (w.contains(p[idx])) {
                    cut1 = idx;
                    break;
                }
            for (int idx = pieces[jp].second; idx >= pieces[jp].first; --idx)
                if (w.contains(p[idx])) {
                    cut2 = idx;
                    break;
                }
            std::vector<std::pair<int, int>> np(pieces.begin(), pieces.begin() + j);
            np.push_back({pieces[j].first, cut1});
            np.push_back({cut2, pieces[jp].second});
            np.insert(np.end(), pieces.begin() + jp + 1, pieces.end());
            pieces = np;
        }
        for (auto [lo, hi] : pieces)
            if (hi > lo) out.add_path(std::vector<int>(p.begin() + lo, p.begin() + hi + 1));
    }

    auto [r1, tour1] = reduced_multigraph_euler(parts, out);
    if (!tour1) throw std::logic_error("prune_path_system: Euler tour lost");
    VertexSet ov = out.vertices();
    for (const auto& part : parts)
        if (ov.intersection_size(part) > 2 * t)
            throw std::logic_error("prune_path_system: footprint bound 2t violated");
    return out;
}

std::pair<WeakSubpartition, PathSystem> subpartition_tour(const Graph& g, const WeakSubpartition& sub, int t) {
    long long n = g.n();
    if (sub.k() + sub.l() > t) throw precondition_error("subpartition_tour: k+l > t");
    if (!g.is_regular()) throw precondition_error("subpartition_tour: graph not regular");
    if (vertex_connectivity(g) < t) throw precondition_error("subpartition_tour: graph not t-connected");
    const Rat& rho = sub.params.rho;

    auto parts = sub.parts();
    PathSystem connected = cycle_connector(g, parts);
    PathSystem pruned = prune_path_system(parts, connected);

    WeakSubpartition adjusted = sub;
    adjusted.params = Params(min(Rat(6, 1) * rho, sub.params.nu * Rat(1, 2)), sub.params.nu * Rat(1, 2),
                             min(Rat(2, 1) * sub.params.tau, Rat(99, 100)));
    adjusted.eta = sub.eta * Rat(1, 2);

    VertexSet pv = pruned.vertices();
    long long removed_total = 0;
    for (auto& cl : adjusted.classes) {
        if (cl.kind != ComponentKind::BIPARTITE) continue;
        if (!cl.bipartition) throw precondition_error("subpartition_tour: bipartite class without bipartition");
        auto [A, B] = *cl.bipartition;
        VertexSet z_comp = cl.vertices.complement();
        long long lhs = balance_lhs(pruned, A, B, z_comp);
        if (lhs % 2) throw std::logic_error("subpartition_tour: odd balance side despite Euler tour");
        long long target = lhs / 2;
        long long d = static_cast<long long>(A.size()) - B.size();
        long long removed = 0;
        auto trim = [&](VertexSet& side, long long count) {
            std::vector<int> free = (side - pv).to_vector();
            if (static_cast<long long>(free.size()) < count)
                throw precondition_error("subpartition_tour: not enough untouched vertices to trim");
            for (long long i = 0; i < count; ++i) side.remove(free[i]);
            removed += count;
        };
        if (d > target) trim(A, d - target);
        if (d < target) trim(B, target - d);
        if (!(Rat(2, 1) * rho).geq_times(removed, n))
            throw contract_error("subpartition_tour: trimming exceeded 2*rho*n");
        removed_total += removed;
        cl.bipartition = {A, B};
        cl.vertices = A | B;
    }
    (void)removed_total;

    PathSystem tour = balance_extend(g, adjusted, pruned, Rat(6, 1) * rho);

    long long before = 0, after = 0;
    for (const auto& cl : sub.classes) before += cl.vertices.size();
    for (const auto& cl : adjusted.classes) after += cl.vertices.size();
    if (!(Rat(2, 1) * rho * Rat(sub.l(), 1)).geq_times(before - after, n))
        throw contract_error("subpartition_tour: size loss exceeds 2*rho*l*n");

    return {adjusted, tour};
}

std::vector<std::string> tour_violations(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps,
                                         const Rat& gamma) {
    std::vector<std::string> viol;
    long long n = g.n();
    try {
        ps.validate_against(g);
    } catch (const input_error& e) {
        viol.push_back(std::string("paths: ") + e.what());
        return viol;
    }
    for (const auto& p : ps.paths())
        if (p.size() < 2) {
            viol.push_back("trivial path present");
            return viol;
        }
    auto parts = sub.parts();
    VertexSet all(g.n());
    for (const auto& p : parts) all = all | p;
    // T1
    bool anchored = true;
    for (const auto& p : ps.paths())
        if (!all.contains(p.front()) || !all.contains(p.back())) anchored = false;
    if (!anchored) {
        viol.push_back("T1: not anchored");
        return viol;
    }
    // T2
    auto [r, tour] = reduced_multigraph_euler(parts, ps);
    if (!tour) viol.push_back("T2: no Euler tour");
    // T3
    VertexSet pv = ps.vertices();
    for (size_t i = 0; i < parts.size(); ++i)
        if (!gamma.geq_times(pv.intersection_size(parts[i]), n))
            viol.push_back("T3: footprint of class #" + std::to_string(i) + " exceeds gamma*n");
    // T4
    for (size_t i = 0; i < sub.classes.size(); ++i) {
        const auto& cl = sub.classes[i];
        if (cl.kind != ComponentKind::BIPARTITE) continue;
        if (!cl.bipartition) {
            viol.push_back("T4: class #" + std::to_string(i) + " lacks a bipartition");
            continue;
        }
        const auto& [A, B] = *cl.bipartition;
        int ea = ps.end_count(A), eb = ps.end_count(B);
        long long ia = ps.int_count(A), ib = ps.int_count(B);
        if (!(ea == eb && ea > 0 && A.size() - ia == B.size() - ib))
            viol.push_back("T4: class #" + std::to_string(i) + " not (A,B)-balanced");
    }
    return viol;
}

bool is_tour(const Graph& g, const WeakSubpartition& sub, const PathSystem& ps, const Rat& gamma) {
    return tour_violations(g, sub, ps, gamma).empty();
}

}  // namespace rpt
