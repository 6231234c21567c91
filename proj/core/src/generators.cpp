#include "rpt/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace rpt {

namespace {

void add_clique(Graph& g, int lo, int hi) {
    for (int u = lo; u < hi; ++u)
        for (int v = u + 1; v < hi; ++v) g.add_edge(u, v);
}

void check_regular(const Graph& g, int d, const char* what) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) != d)
            throw std::logic_error(std::string(what) + ": vertex " + std::to_string(v) + " has degree " +
                                   std::to_string(g.degree(v)) + ", expected " + std::to_string(d));
}

}  // namespace

Graph gen_fig1i(int m) {
    if (m <= 0 || m % 4 != 0) throw input_error("fig1i: m must be a positive multiple of 4");
    int n = 4 * m + 1;
    Graph g(n);
    int c1 = 0, c2 = m + 1, a0 = 2 * m + 2, b0 = 3 * m + 2;
    add_clique(g, c1, c1 + m + 1);
    add_clique(g, c2, c2 + m + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m - 1; ++j) g.add_edge(a0 + i, b0 + j);
    // m/2 matching edges from each clique into A, saturating A
    for (int j = 0; j < m / 2; ++j) g.add_edge(c1 + j, a0 + j);
    for (int j = 0; j < m / 2; ++j) g.add_edge(c2 + j, a0 + m / 2 + j);
    // pair up the matched clique vertices and delete those edges
    for (int j = 0; j + 1 < m / 2; j += 2) {
        g.remove_edge(c1 + j, c1 + j + 1);
        g.remove_edge(c2 + j, c2 + j + 1);
    }
    check_regular(g, m, "fig1i");
    return g;
}

Graph gen_fig1ii(int m) {
    if (m < 1) throw input_error("fig1ii: m must be at least 1");
    int n = 9 * m + 2;
    Graph g(n);
    int apex_a = 9 * m, apex_b = 9 * m + 1;
    int sizes[3] = {m, m - 1, m};
    for (int i = 0; i < 3; ++i) {
        int base = 3 * m * i;
        add_clique(g, base, base + 3 * m);
        int ai = sizes[i];
        for (int j = 0; j < ai; ++j) {
            g.remove_edge(base + j, base + ai + j);  // A_i - B_i matching removed
            g.add_edge(apex_a, base + j);
            g.add_edge(apex_b, base + ai + j);
        }
    }
    check_regular(g, 3 * m - 1, "fig1ii");
    return g;
}

Graph gen_bestposs(int t, int r, int k) {
    if (r < 2) throw input_error("bestposs: r must be at least 2");
    if (t < 1 || t > r - 1) throw input_error("bestposs: t must lie in [1, r-1]");
    if (k < 2 * t) throw input_error("bestposs: k must be at least 2t");
    long long D = 2LL * k * (r - 1);
    long long n = (r - 1) * (D + 1) + t;
    long long matched = t * D / (r - 1);  // = 2kt, even
    if (matched % 2 != 0) throw input_error("bestposs: matching-size parity violated");
    long long per_x = D / (r - 1);  // edges each cut vertex receives per block

    Graph g(static_cast<int>(n));
    for (int i = 0; i < r - 1; ++i) {
        int base = t + i * static_cast<int>(D + 1);
        add_clique(g, base, base + static_cast<int>(D + 1));
        for (long long j = 0; j < matched; ++j) {
            int y = base + static_cast<int>(j);
            int x = static_cast<int>(j / per_x);
            g.add_edge(y, x);
        }
        for (long long j = 0; j + 1 < matched; j += 2) g.remove_edge(base + static_cast<int>(j), base + static_cast<int>(j) + 1);
    }
    check_regular(g, static_cast<int>(D), "bestposs");
    return g;
}

Graph gen_random_regular(int n, int d, uint64_t seed) {
    if (n <= 0 || d < 0 || d >= n) throw input_error("random_regular: need 0 <= D < n");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw input_error("random_regular: n*D must be even");
    if (d == 0) return Graph(n);
    for (uint64_t attempt = 0; attempt < 64; ++attempt) {
        std::seed_seq ss{seed, attempt};
        std::mt19937_64 rng(ss);
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * d);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        for (size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng() % i]);

        // pairing as an edge list, then swap-repair loops and duplicates
        std::vector<Edge> pairs;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.push_back({stubs[i], stubs[i + 1]});
        auto key = [n](int u, int v) { return static_cast<long long>(std::min(u, v)) * n + std::max(u, v); };
        std::map<long long, int> count;
        auto bad = [&](const Edge& e) { return e.first == e.second || count[key(e.first, e.second)] > 1; };
        for (const auto& e : pairs)
            if (e.first != e.second) ++count[key(e.first, e.second)];

        bool repaired = true;
        for (long long step = 0; step < 40000; ++step) {
            size_t bi = pairs.size();
            for (size_t i = 0; i < pairs.size(); ++i)
                if (bad(pairs[i])) {
                    bi = i;
                    break;
                }
            if (bi == pairs.size()) break;
            size_t oj = rng() % pairs.size();
            if (oj == bi) continue;
            auto [u, v] = pairs[bi];
            auto [x, y] = pairs[oj];
            if (rng() % 2) std::swap(x, y);
            // proposed rewiring: (u,x), (v,y)
            if (u == x || v == y) continue;
            auto dec = [&](int a, int b) {
                if (a != b) --count[key(a, b)];
            };
            auto inc = [&](int a, int b) {
                if (a != b) ++count[key(a, b)];
            };
            dec(u, v);
            dec(pairs[oj].first, pairs[oj].second);
            if (count[key(u, x)] > 0 || count[key(v, y)] > 0) {
                inc(u, v);
                inc(pairs[oj].first, pairs[oj].second);
                continue;
            }
            inc(u, x);
            inc(v, y);
            pairs[bi] = {u, x};
            pairs[oj] = {v, y};
            if (step + 1 == 40000) repaired = false;
        }
        for (const auto& e : pairs)
            if (bad(e)) repaired = false;
        if (!repaired) continue;
        Graph g(n);
        for (auto [u, v] : pairs) g.add_edge(std::min(u, v), std::max(u, v));
        return g;
    }
    throw capability_error("random_regular: sampling failed; parameters too dense");
}

PlantedInstance gen_planted(const PlantedSpec& spec) {
    int c = static_cast<int>(spec.class_sizes.size());
    if (c == 0) throw input_error("planted: no classes");
    for (int s : spec.class_sizes)
        if (s < 8) throw input_error("planted: class size below 8");
    int w = spec.bridge;
    if (w < 0) throw input_error("planted: negative bridge width");

    if (!spec.bipartite) {
        for (int s : spec.class_sizes)
            if (s < 2 * w + 2) throw input_error("planted: class too small for the bridge width");
        int n = std::accumulate(spec.class_sizes.begin(), spec.class_sizes.end(), 0);
        Graph g(n);
        std::vector<int> base(c + 1, 0);
        for (int i = 0; i < c; ++i) base[i + 1] = base[i] + spec.class_sizes[i];

        for (int i = 0; i < c; ++i) {
            int s = spec.class_sizes[i];
            add_clique(g, base[i], base[i] + s);
            if (s % 2 == 0) {
                // delete a random perfect matching for instance variety
                std::seed_seq ss{spec.seed, static_cast<uint64_t>(i)};
                std::mt19937_64 rng(ss);
                std::vector<int> perm(s);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                for (int j = 0; j + 1 < s; j += 2) g.remove_edge(base[i] + perm[j], base[i] + perm[j + 1]);
            }
        }
        // bridges: class i's top-w vertices to class i+1's bottom-w vertices
        int links = c == 1 ? 0 : (c == 2 ? 1 : c);
        for (int li = 0; li < links; ++li) {
            int i = li, j = (li + 1) % c;
            int si = spec.class_sizes[i];
            for (int x = 0; x < w; ++x) g.add_edge(base[i] + si - w + x, base[j] + x);
        }
        // re-equalize: pair bridge endpoints within each class and delete a
        // present internal edge per pair
        for (int i = 0; i < c; ++i) {
            int s = spec.class_sizes[i];
            std::vector<int> ends;
            if (links > 0) {
                if (c == 2 && i == 1) {
                    for (int x = 0; x < w; ++x) ends.push_back(base[i] + x);
                } else if (c == 2) {
                    for (int x = 0; x < w; ++x) ends.push_back(base[i] + s - w + x);
                } else {
                    for (int x = 0; x < w; ++x) ends.push_back(base[i] + x);          // incoming
                    for (int x = 0; x < w; ++x) ends.push_back(base[i] + s - w + x);  // outgoing
                }
            }
            // greedy pairing among endpoints using still-present edges
            std::vector<char> done(ends.size(), 0);
            for (size_t p = 0; p < ends.size(); ++p) {
                if (done[p]) continue;
                for (size_t q = p + 1; q < ends.size(); ++q) {
                    if (done[q] || !g.has_edge(ends[p], ends[q])) continue;
                    g.remove_edge(ends[p], ends[q]);
                    done[p] = done[q] = 1;
                    break;
                }
            }
        }
        for (int i = 0; i < c; ++i) {
            int lo = g.n(), hi = 0;
            for (int v = base[i]; v < base[i + 1]; ++v) {
                lo = std::min(lo, g.degree(v));
                hi = std::max(hi, g.degree(v));
            }
            if (hi - lo > 1) throw std::logic_error("planted: class degree spread > 1 after equalization");
        }

        RobustPartition truth;
        truth.params = Params(Rat(1, 16), Rat(1, 16), Rat(1, 5));
        for (int i = 0; i < c; ++i) {
            ComponentLabel cl;
            cl.kind = ComponentKind::EXPANDER;
            cl.vertices = VertexSet(n);
            for (int v = base[i]; v < base[i + 1]; ++v) cl.vertices.add(v);
            truth.classes.push_back(cl);
        }
        return {std::move(g), std::move(truth)};
    }

    // bipartite: classes are K_{s,s} minus a random perfect matching
    for (int s : spec.class_sizes)
        if (s < 2 * w + 2) throw input_error("planted: side too small for the bridge width");
    int n = 0;
    std::vector<int> base(c + 1, 0);
    for (int i = 0; i < c; ++i) {
        base[i + 1] = base[i] + 2 * spec.class_sizes[i];
        n = base[i + 1];
    }
    Graph g(n);
    for (int i = 0; i < c; ++i) {
        int s = spec.class_sizes[i];
        std::seed_seq ss{spec.seed, static_cast<uint64_t>(i)};
        std::mt19937_64 rng(ss);
        std::vector<int> perm(s);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int x = 0; x < s; ++x)
            for (int y = 0; y < s; ++y)
                if (perm[x] != y) g.add_edge(base[i] + x, base[i] + s + y);  // skip the matching pair
    }
    int links = c == 1 ? 0 : (c == 2 ? 2 : c);
    for (int li = 0; li < links; ++li) {
        int i = li % c, j = (li + 1) % c;
        int si = spec.class_sizes[i];
        // B_i top vertices to A_j low vertices
        for (int x = 0; x < w; ++x) g.add_edge(base[i] + 2 * si - w + x, base[j] + x);
    }
    if (links > 0) {
        for (int i = 0; i < c; ++i) {
            int s = spec.class_sizes[i];
            // incoming endpoints in A_i (low w) and outgoing in B_i (top w)
            // each need exactly one internal deletion: match them up over
            // still-present cross edges (augmenting paths; the groups induce
            // K_{w,w} minus at most a matching)
            std::vector<int> avs, bvs;
            for (int x = 0; x < w; ++x) {
                avs.push_back(base[i] + x);
                bvs.push_back(base[i] + 2 * s - w + x);
            }
            std::vector<int> match_of(w, -1);
            auto augment = [&](auto&& self, int ai, std::vector<char>& seen) -> bool {
                for (int bj = 0; bj < w; ++bj) {
                    if (seen[bj] || !g.has_edge(avs[ai], bvs[bj])) continue;
                    seen[bj] = 1;
                    if (match_of[bj] < 0 || self(self, match_of[bj], seen)) {
                        match_of[bj] = ai;
                        return true;
                    }
                }
                return false;
            };
            for (int ai = 0; ai < w; ++ai) {
                std::vector<char> seen(w, 0);
                if (!augment(augment, ai, seen)) throw std::logic_error("planted: bipartite equalization failed");
            }
            for (int bj = 0; bj < w; ++bj) g.remove_edge(avs[match_of[bj]], bvs[bj]);
        }
    }
    for (int i = 0; i < c; ++i) {
        int lo = g.n(), hi = 0;
        for (int v = base[i]; v < base[i + 1]; ++v) {
            lo = std::min(lo, g.degree(v));
            hi = std::max(hi, g.degree(v));
        }
        if (hi - lo > 1) throw std::logic_error("planted: class degree spread > 1 after equalization");
    }

    RobustPartition truth;
    truth.params = Params(Rat(1, 16), Rat(1, 16), Rat(1, 5));
    for (int i = 0; i < c; ++i) {
        int s = spec.class_sizes[i];
        ComponentLabel cl;
        cl.kind = ComponentKind::BIPARTITE;
        cl.vertices = VertexSet(n);
        VertexSet A(n), B(n);
        for (int v = 0; v < s; ++v) {
            A.add(base[i] + v);
            B.add(base[i] + s + v);
        }
        cl.vertices = A | B;
        cl.bipartition = {{A, B}};
        truth.classes.push_back(cl);
    }
    return {std::move(g), std::move(truth)};
}

}  // namespace rpt
