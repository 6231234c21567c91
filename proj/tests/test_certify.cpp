#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "rpt/certify.hpp"
#include "rpt/generators.hpp"

using namespace rpt;
using namespace rpt::testing;

TEST_CASE("robust neighbourhood on K4") {
    Graph g = complete(4);
    VertexSet host = VertexSet::full(4);
    // S = {0,1}, nu = 1/2: vertices need >= 2 neighbours in S; 0 and 1 have
    // only one each
    VertexSet rn = robust_neighbourhood(g, host, VertexSet(4, {0, 1}), Rat(1, 2));
    CHECK(rn == VertexSet(4, {2, 3}));
    CHECK(robust_neighbourhood(g, host, VertexSet(4), Rat(1, 2)).empty());
    // S = V, nu <= (n-1)/n: everyone qualifies
    CHECK(robust_neighbourhood(g, host, host, Rat(3, 4)) == host);
    CHECK_THROWS_AS(robust_neighbourhood(g, VertexSet(4, {0, 1}), VertexSet(4, {2}), Rat(1, 2)), input_error);
}

TEST_CASE("certify: K16 is a robust expander, two K8s are not") {
    Graph k16 = complete(16);
    auto cert = certify_robust_expander(k16, VertexSet::full(16), Rat(1, 10), Rat(1, 4), CertifyMode::Exact);
    CHECK(cert.verdict == Verdict::HOLDS_EXHAUSTIVE);
    CHECK(brute_robust_expander(k16, VertexSet::full(16), Rat(1, 10), Rat(1, 4)));

    Graph twok8 = disjoint_double(complete(8));
    auto cert2 = certify_robust_expander(twok8, VertexSet::full(16), Rat(1, 10), Rat(1, 4), CertifyMode::Exact);
    REQUIRE(cert2.verdict == Verdict::FAILS);
    REQUIRE(cert2.witness.has_value());
    // a witness must replay as non-expanding
    CHECK_FALSE(is_expanding(twok8, VertexSet::full(16), *cert2.witness, Rat(1, 10)));
    // the lexicographically least violator: 7 vertices of the first clique
    // already have RN = that clique (8 < 7 + 1.6), reached in preorder before
    // the full side
    CHECK(*cert2.witness == range_set(16, 0, 7));
}

TEST_CASE("certify: C8 fails with an arc witness") {
    Graph c8 = cycle(8);
    auto cert = certify_robust_expander(c8, VertexSet::full(8), Rat(1, 8), Rat(1, 4), CertifyMode::Exact);
    REQUIRE(cert.verdict == Verdict::FAILS);
    CHECK_FALSE(is_expanding(c8, VertexSet::full(8), *cert.witness, Rat(1, 8)));
}

TEST_CASE("certify exact mode enforces the exhaustive bound") {
    Graph g = complete(30);
    CertifyOptions opt;
    opt.exhaustive_bound = 22;
    CHECK_THROWS_AS(certify_robust_expander(g, VertexSet::full(30), Rat(1, 10), Rat(1, 4), CertifyMode::Exact, opt),
                    capability_error);
}

TEST_CASE("bipartite certify: complete bipartite holds, split or sparse fail") {
    Graph k88 = complete_bipartite(8, 8);
    auto a = range_set(16, 0, 8), b = range_set(16, 8, 16);
    CHECK(certify_bipartite_robust_expander(k88, a, b, Rat(1, 16), Rat(1, 4), CertifyMode::Exact).verdict ==
          Verdict::HOLDS_EXHAUSTIVE);

    // two disjoint K_{4,4}: A = both left sides
    Graph two(16);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            two.add_edge(u, 8 + v);
            two.add_edge(4 + u, 12 + v);
        }
    VertexSet lefts = range_set(16, 0, 8), rights = range_set(16, 8, 16);
    auto cert = certify_bipartite_robust_expander(two, lefts, rights, Rat(1, 16), Rat(1, 4), CertifyMode::Exact);
    REQUIRE(cert.verdict == Verdict::FAILS);
    CHECK(cert.witness->subset_of(lefts));

    // a perfect matching on 4+4 has empty robust neighbourhoods at nu = 1/8
    Graph pm(8);
    for (int i = 0; i < 4; ++i) pm.add_edge(i, 4 + i);
    auto cert2 = certify_bipartite_robust_expander(pm, range_set(8, 0, 4), range_set(8, 4, 8), Rat(1, 8), Rat(1, 4),
                                                   CertifyMode::Exact);
    CHECK(cert2.verdict == Verdict::FAILS);
}

TEST_CASE("witness search: planted structure is found heuristically") {
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = 11;
    auto inst = gen_planted(spec);
    CertifyOptions opt;
    auto w = find_nonexpanding_witness(inst.graph, VertexSet::full(40), Rat(1, 20), Rat(1, 5), opt);
    REQUIRE(w.has_value());
    CHECK_FALSE(is_expanding(inst.graph, VertexSet::full(40), *w, Rat(1, 20)));
}

TEST_CASE("witness search: none on K16") {
    CHECK_FALSE(find_nonexpanding_witness(complete(16), VertexSet::full(16), Rat(1, 10), Rat(1, 4)).has_value());
    CHECK_FALSE(find_nonexpanding_witness(complete(16), VertexSet(16), Rat(1, 10), Rat(1, 4)).has_value());
}

TEST_CASE("rho-component checks") {
    Graph twok8 = disjoint_double(complete(8));
    CHECK(check_rho_component(twok8, range_set(16, 0, 8), Rat(1, 64)));
    CHECK(check_rho_component(twok8, VertexSet::full(16), Rat(1, 64)));
    CHECK_FALSE(check_rho_component(complete(16), VertexSet(16, {0}), Rat(1, 4)));
}

TEST_CASE("rho-close-to-bipartite checks") {
    Graph k88 = complete_bipartite(8, 8);
    CHECK(check_rho_close_bipartite(k88, range_set(16, 0, 8), range_set(16, 8, 16), Rat(1, 16)));

    // K16 split in half: violations are all internal edges, 2*C(8,2) = 56
    Graph k16 = complete(16);
    auto rep = check_rho_close_bipartite_detail(k16, range_set(16, 0, 8), range_set(16, 8, 16), Rat(1, 16));
    CHECK_FALSE(rep.c3);
    CHECK_FALSE(check_rho_close_bipartite(k16, range_set(16, 0, 8), range_set(16, 8, 16), Rat(1, 16)));

    // C9 near-balanced split: one intra-class edge, counted once per side sum
    Graph c9 = cycle(9);
    VertexSet odd(9, {0, 2, 4, 6, 8}), even(9, {1, 3, 5, 7});
    CHECK(c9.edges_between(odd, even.complement()) + c9.edges_between(even, odd.complement()) == 1);
    CHECK(check_rho_close_bipartite(c9, odd, even, Rat(1, 9)));
    CHECK_THROWS_AS(check_rho_close_bipartite(c9, odd, odd, Rat(1, 9)), input_error);
}

TEST_CASE("close-to-bipartite implies rho-component") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Graph g = random_graph(12, 0.5, 40 + seed);
        std::mt19937_64 rng(seed);
        VertexSet u1(12), u2(12);
        for (int v = 0; v < 12; ++v) {
            int r = rng() % 3;
            if (r == 0) u1.add(v);
            if (r == 1) u2.add(v);
        }
        Rat rho(1, 6);
        if (check_rho_close_bipartite(g, u1, u2, rho)) CHECK(check_rho_component(g, u1 | u2, rho));
    }
}

TEST_CASE("dense degree condition") {
    CHECK(dense_implies_expander(complete(16), Rat(1, 32), Rat(1, 4), Rat(1, 4)));
    CHECK_FALSE(dense_implies_expander(cycle(8), Rat(1, 32), Rat(1, 4), Rat(1, 4)));
    // K_{8,8} sits exactly at n/2, below the strict threshold
    CHECK_FALSE(dense_implies_expander(complete_bipartite(8, 8), Rat(1, 32), Rat(1, 4), Rat(1, 100)));
    // the arithmetic side condition epsilon >= 2 nu/tau
    CHECK_FALSE(dense_implies_expander(complete(16), Rat(1, 4), Rat(1, 4), Rat(1, 4)));
}

TEST_CASE("dense condition implies exact certification at small n") {
    for (int n = 8; n <= 14; ++n) {
        for (uint64_t seed = 0; seed < 6; ++seed) {
            Graph g = random_graph(n, 0.9, 900 + 31 * n + seed);
            Rat nu(1, 32), tau(1, 4), eps(1, 4);
            if (!dense_implies_expander(g, nu, tau, eps)) continue;
            auto cert = certify_robust_expander(g, VertexSet::full(n), nu, tau, CertifyMode::Exact);
            CHECK(cert.verdict == Verdict::HOLDS_EXHAUSTIVE);
        }
    }
}

TEST_CASE("heuristic and exact certification agree on small hosts") {
    int fails_seen = 0;
    for (uint64_t seed = 0; seed < 60; ++seed) {
        Graph g = random_graph(11, 0.35, 2000 + seed);
        Rat nu(1, 8), tau(1, 4);
        auto exact = certify_robust_expander(g, VertexSet::full(11), nu, tau, CertifyMode::Exact);
        CertifyOptions opt;
        opt.seed = seed;
        auto heur = certify_robust_expander(g, VertexSet::full(11), nu, tau, CertifyMode::Heuristic, opt);
        if (exact.verdict == Verdict::HOLDS_EXHAUSTIVE) {
            CHECK(heur.verdict != Verdict::FAILS);
        } else {
            ++fails_seen;
            // heuristic witnesses must replay even when they differ
            if (heur.verdict == Verdict::FAILS)
                CHECK_FALSE(is_expanding(g, VertexSet::full(11), *heur.witness, nu));
        }
    }
    CHECK(fails_seen > 0);
}

TEST_CASE("expansion monotonicity: nu' <= nu and tau' >= tau preserve HOLDS") {
    std::mt19937_64 rng(5);
    int held = 0;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = random_graph(10, 0.7, 3000 + seed);
        Rat nu(static_cast<long long>(1 + rng() % 3), 10);
        Rat tau = max(nu, Rat(static_cast<long long>(2 + rng() % 3), 10));
        auto cert = certify_robust_expander(g, VertexSet::full(10), nu, tau, CertifyMode::Exact);
        if (cert.verdict != Verdict::HOLDS_EXHAUSTIVE) continue;
        ++held;
        Rat nup = nu * Rat(1, 2);
        Rat taup = min(Rat(2, 1) * tau, Rat(9, 10));
        auto weaker = certify_robust_expander(g, VertexSet::full(10), nup, taup, CertifyMode::Exact);
        CHECK(weaker.verdict == Verdict::HOLDS_EXHAUSTIVE);
    }
    CHECK(held > 0);
}

TEST_CASE("validate_robust_partition on a planted instance and a corrupted one") {
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = 4;
    auto inst = gen_planted(spec);
    RobustPartition rp = inst.truth;
    rp.params = Params(Rat(1, 16), Rat(1, 16), Rat(1, 5));
    auto rep = validate_robust_partition(inst.graph, rp);
    CHECK(rep.k == 2);
    CHECK(rep.l == 0);
    for (const auto& c : rep.clauses)
        if (c.clause == "D4" || c.clause == "D1" || c.clause == "D6") CHECK(c.pass);

    // swapping one vertex across classes breaks (D4)
    RobustPartition bad = rp;
    bad.classes[0].vertices.remove(5);
    bad.classes[1].vertices.add(5);
    auto rep2 = validate_robust_partition(inst.graph, bad);
    CHECK_FALSE(rep2.find("D4")->pass);
}

TEST_CASE("single complete class validates as (1,0)") {
    Graph k16 = complete(16);
    RobustPartition rp;
    rp.params = Params(Rat(1, 10), Rat(1, 10), Rat(1, 4));
    rp.classes.push_back({ComponentKind::EXPANDER, VertexSet::full(16), std::nullopt});
    auto rep = validate_robust_partition(k16, rp);
    CHECK(rep.all_pass());
    CHECK(rep.k == 1);
    CHECK(rep.l == 0);
}

TEST_CASE("count bound k+2l <= r-1 is checked when r is supplied") {
    Graph k16 = complete(16);
    RobustPartition rp;
    rp.params = Params(Rat(1, 1000), Rat(1, 100), Rat(1, 4));
    rp.classes.push_back({ComponentKind::EXPANDER, VertexSet::full(16), std::nullopt});
    ValidateOptions opt;
    opt.r = 4;
    opt.epsilon = Rat(1, 2);
    auto rep = validate_robust_partition(k16, rp, opt);
    CHECK(rep.find("count-bound")->pass);  // 1 + 0 <= 3
}

TEST_CASE("certificate serialization fields") {
    Graph twok8 = disjoint_double(complete(8));
    CertifyOptions opt;
    opt.seed = 42;
    auto cert = certify_robust_expander(twok8, VertexSet::full(16), Rat(1, 10), Rat(1, 4), CertifyMode::Exact, opt);
    CHECK(cert.seed == 42);
    CHECK(cert.sets_examined > 0);
}
