#include "rpt/partition.hpp"

#include <algorithm>
#include <numeric>

namespace rpt {

std::vector<Schedule::Level> Schedule::levels_for(int n, int delta) const {
    int t = max_levels;
    if (t <= 0) {
        if (delta <= 0)
            t = 1;
        else
            t = 3 * static_cast<int>((2LL * n + delta - 1) / delta);  // 3*ceil(2/alpha)
    }
    std::vector<Level> out;
    // nu floor keeps the robust-neighbourhood threshold above one neighbour,
    // below which every connected graph expands vacuously; rho is capped at
    // (delta/n)^2 so that sqrt(rho)*n never exceeds the size of a component
    Rat nu_floor(3, 2LL * std::max(n, 2));
    Rat nu_cap = tau * Rat(1, 2);
    Rat rho_cap = min(Rat(std::max(delta, 1), n) * Rat(std::max(delta, 1), n), nu_cap);
    Rat rho = min(max(rho1, Rat(3, 16LL * std::max(n, 2))), rho_cap);
    for (int i = 0; i < t; ++i) {
        Rat nu = max(min(max(Rat(8, 1) * rho, nu_floor), nu_cap), rho);
        out.push_back({rho, nu});
        rho = min(min(rho.floor_sqrt(), Rat(2, 1) * nu), rho_cap);
    }
    return out;
}

namespace {

struct SplitCases {
    VertexSet s, rn, y, z;
    VertexSet case1_u1, case1_u2;  // S Cup N | rest
    VertexSet case2_u1, case2_u2;  // Y Cup Z | rest
    bool case1_applies;            // |Y|^2 <= nu*n^2
    bool case2_residue_large;      // 3|U2| >= rho'*n
};

// nu is the current level's expansion parameter; rho_prime the target
// level's component parameter. The hierarchy interleaves nu_i below
// rho_{i+1}, so the two may not form a valid same-level Params tuple.
SplitCases split_cases(const Graph& g, const VertexSet& u, const VertexSet& witness, const Rat& nu,
                       const Rat& rho_prime) {
    long long n = g.n();
    SplitCases sc;
    sc.s = witness;
    sc.rn = robust_neighbourhood(g, u, witness, nu);
    sc.y = sc.s - sc.rn;
    sc.z = sc.rn - sc.s;
    VertexSet sn = sc.s | sc.rn;
    sc.case1_u1 = sn;
    sc.case1_u2 = u - sn;
    sc.case2_u1 = sc.y | sc.z;
    sc.case2_u2 = u - sc.case2_u1;
    long long ysz = sc.y.size();
    sc.case1_applies = nu.geq_times(ysz * ysz, n * n);  // |Y|^2 <= nu n^2
    sc.case2_residue_large = rho_prime.leq_times(3LL * sc.case2_u2.size(), n);
    return sc;
}

void verify_witness(const Graph& g, const VertexSet& u, const VertexSet& witness, const Params& params) {
    if (!witness.subset_of(u)) throw contract_error("split witness not inside the component");
    if (!in_window(witness.size(), u.size(), params.tau))
        throw contract_error("split witness outside the tau-window");
    if (is_expanding(g, u, witness, params.nu)) throw contract_error("split witness re-verification failed: S expands");
}

}  // namespace

SplitOutcome split_component(const Graph& g, const VertexSet& u, const VertexSet& witness, const Params& params) {
    verify_witness(g, u, witness, params);
    SplitCases sc = split_cases(g, u, witness, params.nu, params.rho);

    auto fail = [](const std::string& what, const VertexSet& offender) {
        throw refinement_error("split_component: " + what + " (offending set of size " +
                               std::to_string(offender.size()) + ")");
    };

    if (sc.case1_applies) {
        if (!check_rho_component(g, sc.case1_u1, params.rho)) fail("case 1 piece S|N is not a rho'-component", sc.case1_u1);
        if (!check_rho_component(g, sc.case1_u2, params.rho)) fail("case 1 residue is not a rho'-component", sc.case1_u2);
        return {SplitOutcome::Kind::Split, sc.case1_u1, sc.case1_u2};
    }
    if (sc.case2_residue_large) {
        if (!check_rho_component(g, sc.case2_u1, params.rho)) fail("case 2 piece Y|Z is not a rho'-component", sc.case2_u1);
        if (!check_rho_component(g, sc.case2_u2, params.rho)) fail("case 2 residue is not a rho'-component", sc.case2_u2);
        return {SplitOutcome::Kind::Split, sc.case2_u1, sc.case2_u2};
    }
    VertexSet yp = sc.y | sc.case2_u2;
    if (!check_rho_close_bipartite(g, yp, sc.z, params.rho)) fail("close-to-bipartite validation failed", yp | sc.z);
    return {SplitOutcome::Kind::CloseBipartite, yp, sc.z};
}

// ---- shuffle / rebalance ----

std::vector<VertexSet> shuffle_partition(const Graph& g, const std::vector<VertexSet>& classes, const Rat& rho) {
    long long n = g.n();
    {
        VertexSet seen(g.n());
        for (const auto& c : classes) {
            if (seen.intersects(c)) throw input_error("shuffle_partition: classes overlap");
            seen = seen | c;
        }
        if (seen != VertexSet::full(g.n())) throw input_error("shuffle_partition: classes do not cover V(G)");
    }
    if (classes.size() <= 1) return classes;

    std::vector<VertexSet> cur = classes;
    std::vector<int> cls_of(g.n(), -1);
    for (size_t i = 0; i < cur.size(); ++i) cur[i].for_each([&](int v) { cls_of[v] = static_cast<int>(i); });

    // movable set: the X_i of the proof; extended on demand so that (D4)
    // holds for every vertex on exit
    std::vector<char> movable(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
        long long dout = g.degree(v) - g.degree_in(v, cur[cls_of[v]]);
        if (rho.leq_times(dout * dout, n * n)) movable[v] = 1;  // d_out >= sqrt(rho)*n
    }

    for (;;) {
        bool moved = false;
        for (int v = 0; v < g.n(); ++v) {
            if (!movable[v]) continue;
            int own = cls_of[v];
            int best = own, best_deg = g.degree_in(v, cur[own]);
            for (size_t j = 0; j < cur.size(); ++j) {
                int d = g.degree_in(v, cur[j]);
                if (d > best_deg) {
                    best_deg = d;
                    best = static_cast<int>(j);
                }
            }
            if (best != own) {
                cur[own].remove(v);
                cur[best].add(v);
                cls_of[v] = best;
                moved = true;
            }
        }
        if (moved) continue;
        // extend the movable set with any remaining (D4) violator
        bool extended = false;
        for (int v = 0; v < g.n() && !extended; ++v) {
            if (movable[v]) continue;
            int own_deg = g.degree_in(v, cur[cls_of[v]]);
            for (size_t j = 0; j < cur.size(); ++j)
                if (g.degree_in(v, cur[j]) > own_deg) {
                    movable[v] = 1;
                    extended = true;
                    break;
                }
        }
        if (!extended) break;
    }
    return cur;
}

std::pair<VertexSet, VertexSet> bipartite_rebalance(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.intersects(b)) throw input_error("bipartite_rebalance: sides overlap");
    VertexSet A = a, B = b;
    for (;;) {
        bool moved = false;
        for (int v = 0; v < g.n(); ++v) {
            if (A.contains(v)) {
                if (g.degree_in(v, B) < g.degree_in(v, A)) {
                    A.remove(v);
                    B.add(v);
                    moved = true;
                }
            } else if (B.contains(v)) {
                if (g.degree_in(v, A) < g.degree_in(v, B)) {
                    B.remove(v);
                    A.add(v);
                    moved = true;
                }
            }
        }
        if (!moved) break;
    }
    return {A, B};
}

// ---- refinement engine ----

namespace {

struct EngineClass {
    VertexSet verts;
    bool marked_bipartite = false;
    VertexSet side_a, side_b;
    bool terminal = false;
};

CertifyMode mode_for(int host, const CertifyOptions& opt) {
    return host <= opt.exhaustive_bound ? CertifyMode::Exact : CertifyMode::Heuristic;
}

// engine gate for marking a class close-to-bipartite: the crossing-violation
// edges inside the sides must be small relative to the class itself (the
// global (C3) bound is vacuous for classes much smaller than the graph, and
// (C1)/(C2) are unattainable on small extremal instances; both are recorded
// in the trace)
bool mark_gate(const Graph& g, const VertexSet& u1, const VertexSet& u2, const Rat& rho) {
    if (u1.empty() || u2.empty()) return false;
    long long usz = static_cast<long long>(u1.size()) + u2.size();
    long long viol = g.edges_within(u1) + g.edges_within(u2);
    return rho.geq_times(viol, usz * usz);
}

}  // namespace

std::pair<RobustPartition, RefinementTrace> refine_to_robust_partition(const Graph& g, const Schedule& sched) {
    int n = g.n();
    if (n == 0) throw input_error("refine_to_robust_partition: empty graph");
    int delta = g.min_degree();

    RefinementTrace trace;
    trace.tau = sched.tau;
    trace.levels = sched.levels_for(n, delta);
    trace.out_of_regime = n < 8 || 8LL * delta < n;

    std::vector<EngineClass> classes;
    {
        EngineClass whole;
        whole.verts = VertexSet::full(n);
        classes.push_back(whole);
    }

    CertifyOptions copt = sched.certify;

    auto order_classes = [&]() {
        std::stable_sort(classes.begin(), classes.end(),
                         [](const EngineClass& x, const EngineClass& y) { return x.verts.min() < y.verts.min(); });
    };

    // refinement rounds: levels until settled, then shuffle; when the shuffle
    // moves vertices, stale certificates and terminal verdicts are dropped
    // and the levels run again on the cleaned classes
    const int max_rounds = 3;
    int start_level = 0;  // later rounds resume at the level that settled
    for (int round = 0; round < max_rounds; ++round) {
        bool settled = false;
        for (int level = start_level; level < static_cast<int>(trace.levels.size()); ++level) {
            auto [rho, nu] = trace.levels[level];
            (void)rho;
            Rat rho_next = level + 1 < static_cast<int>(trace.levels.size()) ? trace.levels[level + 1].rho
                                                                             : trace.levels[level].rho;
            order_classes();

            // a level succeeds when every class simultaneously certifies at
            // its parameters (expansion is not monotone upward in nu, so
            // verdicts from earlier levels are stale)
            bool level_ok = true;
            std::vector<EngineClass> next;
            for (EngineClass& cl : classes) {
                if (cl.terminal) {
                    next.push_back(cl);
                    continue;
                }

                if (cl.marked_bipartite) {
                    Certificate cert = certify_bipartite_robust_expander(g, cl.side_a, cl.side_b, nu, sched.tau,
                                                                         mode_for(cl.side_a.size(), copt), copt);
                    if (cert.holds()) {
                        trace.steps.push_back(
                            {RefineStep::Kind::Certified, level + 1, cl.verts, {}, to_string(cert.verdict)});
                        next.push_back(cl);
                        continue;
                    }
                    level_ok = false;
                    // bipartite analogue of the split: U1 := S | (RN cap B)
                    VertexSet s = *cert.witness;
                    VertexSet rn = robust_neighbourhood(g, cl.verts, s, nu) & cl.side_b;
                    VertexSet u1 = s | rn;
                    VertexSet u2 = cl.verts - u1;
                    if (!u2.empty() && check_rho_component(g, u1, rho_next) && check_rho_component(g, u2, rho_next)) {
                        for (const VertexSet& piece : {u1, u2}) {
                            EngineClass nc;
                            nc.verts = piece;
                            VertexSet pa = piece & cl.side_a, pb = piece & cl.side_b;
                            if (mark_gate(g, pa, pb, rho_next)) {
                                nc.marked_bipartite = true;
                                nc.side_a = pa;
                                nc.side_b = pb;
                            }
                            next.push_back(nc);
                        }
                        trace.steps.push_back({RefineStep::Kind::BipartiteSplit, level + 1, cl.verts, {u1, u2}, ""});
                        continue;
                    }
                    // retry the search harder once before giving up on the class
                    CertifyOptions harder = copt;
                    harder.restarts *= 2;
                    Certificate retry = certify_bipartite_robust_expander(g, cl.side_a, cl.side_b, nu, sched.tau,
                                                                          mode_for(cl.side_a.size(), copt), harder);
                    if (retry.holds()) {
                        trace.steps.push_back(
                            {RefineStep::Kind::Certified, level + 1, cl.verts, {}, to_string(retry.verdict)});
                    } else {
                        cl.terminal = true;
                        trace.steps.push_back({RefineStep::Kind::Terminal, level + 1, cl.verts, {},
                                               "bipartite class unsplittable; B2 " + to_string(retry.verdict)});
                    }
                    next.push_back(cl);
                    continue;
                }

                Certificate cert =
                    certify_robust_expander(g, cl.verts, nu, sched.tau, mode_for(cl.verts.size(), copt), copt);
                if (cert.holds()) {
                    // growing rho should keep certified classes components;
                    // record when the finite schedule breaks that
                    std::string note = to_string(cert.verdict);
                    if (!check_rho_component(g, cl.verts, trace.levels[level].rho)) note += "; E1 fails at this level";
                    trace.steps.push_back({RefineStep::Kind::Certified, level + 1, cl.verts, {}, note});
                    next.push_back(cl);
                    continue;
                }
                level_ok = false;

                SplitCases sc = split_cases(g, cl.verts, *cert.witness, nu, rho_next);
                auto valid_split = [&](const VertexSet& u1, const VertexSet& u2) {
                    return !u1.empty() && !u2.empty() && check_rho_component(g, u1, rho_next) &&
                           check_rho_component(g, u2, rho_next);
                };

                bool done = false;
                // the two canonical split shapes first, then the
                // junk-tolerant variants N|rest and S|rest (heuristic
                // witnesses may carry vertices outside the robust
                // neighbourhood)
                for (auto [u1, u2] : {std::pair{sc.case1_u1, sc.case1_u2}, std::pair{sc.case2_u1, sc.case2_u2},
                                      std::pair{sc.rn, cl.verts - sc.rn}, std::pair{sc.s, cl.verts - sc.s}}) {
                    if (valid_split(u1, u2)) {
                        EngineClass c1, c2;
                        c1.verts = u1;
                        c2.verts = u2;
                        next.push_back(c1);
                        next.push_back(c2);
                        trace.steps.push_back({RefineStep::Kind::Split, level + 1, cl.verts, {u1, u2}, ""});
                        done = true;
                        break;
                    }
                }
                if (done) continue;
                // close-to-bipartite marking, gated on (C3); (C1)/(C2) are
                // recorded but not required (they are unattainable on small
                // extremal instances)
                VertexSet yp = sc.y | sc.case2_u2;
                if (mark_gate(g, yp, sc.z, rho_next)) {
                    auto c = check_rho_close_bipartite_detail(g, yp, sc.z, rho_next);
                    cl.marked_bipartite = true;
                    cl.side_a = yp;
                    cl.side_b = sc.z;
                    std::string note;
                    if (!c.c1) note += "C1 fails; ";
                    if (!c.c2) note += "C2 fails; ";
                    if (!c.c3) note += "C3 fails; ";
                    trace.steps.push_back({RefineStep::Kind::MarkBipartite, level + 1, cl.verts, {yp, sc.z}, note});
                    next.push_back(cl);
                    continue;
                }
                cl.terminal = true;
                trace.steps.push_back({RefineStep::Kind::Terminal, level + 1, cl.verts, {},
                                       "no valid refinement; E2 " + to_string(cert.verdict)});
                next.push_back(cl);
            }
            classes = std::move(next);

            int w = 0;
            for (const auto& cl : classes) w += cl.marked_bipartite;
            trace.progress_measure.push_back(2 * static_cast<int>(classes.size()) + w);
            trace.levels_used = level + 1;
            if (level_ok) {
                settled = true;
                break;
            }
        }
        if (!settled) {
            bool pending = false;
            for (const auto& cl : classes) pending |= !cl.terminal;
            if (pending) throw refinement_error("level budget exhausted with unsettled classes");
        }
        start_level = std::max(0, trace.levels_used - 1);

    // shuffle to establish (D4), preserving labels
    order_classes();
    bool moved = false;
    {
        Rat rho_shuffle = trace.levels[std::max(0, trace.levels_used - 1)].rho;
        std::vector<VertexSet> sets;
        for (const auto& cl : classes) sets.push_back(cl.verts);
        std::vector<VertexSet> shuffled = shuffle_partition(g, sets, rho_shuffle);
        for (size_t i = 0; i < classes.size(); ++i) {
            if (shuffled[i] != classes[i].verts) {
                trace.steps.push_back({RefineStep::Kind::ShuffleMove, trace.levels_used, classes[i].verts,
                                       {shuffled[i]}, "class adjusted by shuffle"});
                classes[i].terminal = false;  // verdict is stale after a move
                moved = true;
            }
            classes[i].verts = shuffled[i];
        }
        classes.erase(std::remove_if(classes.begin(), classes.end(),
                                     [](const EngineClass& c) { return c.verts.empty(); }),
                      classes.end());
    }

    // per-class bipartition upkeep: new vertices join side A, then rebalance
    for (auto& cl : classes) {
        if (!cl.marked_bipartite) continue;
        VertexSet a = (cl.side_a & cl.verts) | (cl.verts - (cl.side_a | cl.side_b));
        VertexSet b = cl.side_b & cl.verts;
        auto [ra, rb] = bipartite_rebalance(g, a, b);
        if (ra != cl.side_a || rb != cl.side_b)
            trace.steps.push_back(
                {RefineStep::Kind::RebalanceMove, trace.levels_used, cl.verts, {ra, rb}, "bipartition rebalanced"});
        cl.side_a = ra;
        cl.side_b = rb;
        if (cl.side_a.empty() || cl.side_b.empty()) {
            cl.marked_bipartite = false;  // degenerated to a plain class
            trace.steps.push_back({RefineStep::Kind::Terminal, trace.levels_used, cl.verts, {}, "bipartition degenerated"});
        }
    }

    if (!moved) break;  // otherwise re-run the levels on the cleaned classes
    }  // rounds

    int used_level = std::max(0, trace.levels_used - 1);
    Rat rho_final = trace.levels[used_level].rho;
    Rat nu_final = trace.levels[used_level].nu;

    RobustPartition rp;
    rp.params = Params(rho_final, nu_final, sched.tau);
    order_classes();
    for (const auto& cl : classes) {
        ComponentLabel lab;
        lab.kind = cl.marked_bipartite ? ComponentKind::BIPARTITE : ComponentKind::EXPANDER;
        lab.vertices = cl.verts;
        if (cl.marked_bipartite) lab.bipartition = {{cl.side_a, cl.side_b}};
        rp.classes.push_back(lab);
    }

    ValidateOptions vopt;
    vopt.certify = copt;
    trace.validation = validate_robust_partition(g, rp, vopt);
    return {rp, trace};
}

std::vector<VertexSet> replay_trace(const Graph& g, const RefinementTrace& trace) {
    std::vector<VertexSet> classes{VertexSet::full(g.n())};
    for (const auto& step : trace.steps) {
        switch (step.kind) {
            case RefineStep::Kind::Split:
            case RefineStep::Kind::BipartiteSplit: {
                auto it = std::find(classes.begin(), classes.end(), step.target);
                if (it == classes.end()) throw input_error("trace replay: split target missing");
                classes.erase(it);
                classes.push_back(step.pieces.at(0));
                classes.push_back(step.pieces.at(1));
                break;
            }
            case RefineStep::Kind::ShuffleMove: {
                auto it = std::find(classes.begin(), classes.end(), step.target);
                if (it == classes.end()) throw input_error("trace replay: shuffle target missing");
                *it = step.pieces.at(0);
                break;
            }
            default:
                break;
        }
    }
    std::sort(classes.begin(), classes.end(), [](const VertexSet& a, const VertexSet& b) { return a.min() < b.min(); });
    classes.erase(std::remove_if(classes.begin(), classes.end(), [](const VertexSet& c) { return c.empty(); }),
                  classes.end());
    return classes;
}

// ---- almost-regular regularization ----

Regularized regularize_almost_regular(const Graph& g, const Rat& gamma) {
    int n = g.n();
    if (n == 0) throw input_error("regularize: empty graph");
    int delta = g.min_degree(), Delta = g.max_degree();
    if (!gamma.geq_times(Delta - delta, n))
        throw input_error("regularize: Delta(G) - delta(G) exceeds gamma*n");

    // B = beta*n with gamma <= beta <= 2*gamma, beta*n integral, and all
    // cross-degrees positive when the graph is irregular
    long long b_low = (gamma.num() * n + gamma.den() - 1) / gamma.den();  // ceil(gamma*n)
    long long b_high = 2 * gamma.num() * n / gamma.den();                 // floor(2*gamma*n)
    long long B = std::max(b_low, static_cast<long long>(Delta - delta + (Delta > delta ? 1 : 0)));
    if (B > b_high && Delta > delta)
        throw capability_error("regularize: no integral beta*n in [gamma*n, 2*gamma*n] clears the degree spread");
    if (Delta == delta) B = std::max<long long>(b_low, 0);

    // demands c_v = delta + B - d(v); sorted they form the sequence d_1..d_n
    std::vector<long long> demand(n);
    for (int v = 0; v < n; ++v) demand[v] = delta + B - g.degree(v);
    std::vector<long long> sorted = demand;
    std::sort(sorted.begin(), sorted.end());
    long long d1 = sorted.front(), dn = sorted.back();
    if (dn > n) throw capability_error("regularize: cross degree demand exceeds n");
    if (B > 0) {
        if (d1 <= 0) throw capability_error("regularize: nonpositive demand in the bipartite sequence");
        if (4 * n * d1 < (d1 + dn) * (d1 + dn))
            throw capability_error("regularize: bipartite graphic condition n*d1 >= (d1+dn)^2/4 fails");
    }

    Graph out(2 * n);
    for (auto [u, v] : g.edges()) {
        out.add_edge(u, v);
        out.add_edge(n + u, n + v);
    }

    if (B > 0) {
        // Gale-Ryser greedy: largest residual left vertex connects to the
        // largest residual right vertices
        std::vector<long long> left = demand, right = demand;
        std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
        for (;;) {
            int u = -1;
            for (int v = 0; v < n; ++v)
                if (left[v] > 0 && (u < 0 || left[v] > left[u])) u = v;
            if (u < 0) break;
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return right[x] > right[y]; });
            long long need = left[u];
            left[u] = 0;
            for (int w : order) {
                if (need == 0) break;
                if (right[w] > 0 && !used[u][w]) {
                    used[u][w] = 1;
                    --right[w];
                    --need;
                    out.add_edge(u, n + w);
                }
            }
            if (need > 0) throw capability_error("regularize: greedy realization failed (sequence not graphic)");
        }
    }

    for (int v = 0; v < 2 * n; ++v)
        if (out.degree(v) != delta + B) throw std::logic_error("regularize: output not regular");

    Regularized r{std::move(out), static_cast<int>(B), {}};
    for (int v = 0; v < n; ++v) r.mapping.push_back({v, n + v});
    return r;
}

}  // namespace rpt
