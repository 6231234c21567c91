#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "rpt/generators.hpp"
#include "rpt/hamilton.hpp"

using namespace rpt;
using namespace rpt::testing;

TEST_CASE("fig1i: m=4 structure") {
    Graph g = gen_fig1i(4);
    CHECK(g.n() == 17);
    for (int v = 0; v < 17; ++v) CHECK(g.degree(v) == 4);
    CHECK(vertex_connectivity(g) >= 2);
    // G minus A falls into |A| + 1 = 5 components
    VertexSet a = range_set(17, 10, 14);
    CHECK(connected_components(g, a).size() == 5);
    CHECK_THROWS_AS(gen_fig1i(6), input_error);
    CHECK_THROWS_AS(gen_fig1i(0), input_error);
}

TEST_CASE("fig1i: m=4 is non-Hamiltonian (not 1-tough)") {
    Graph g = gen_fig1i(4);
    CHECK_FALSE(hamilton_oracle(g, VertexSet::full(17)).has_value());
}

TEST_CASE("fig1ii: m=2 structure and non-Hamiltonicity") {
    Graph g = gen_fig1ii(2);
    CHECK(g.n() == 20);
    for (int v = 0; v < 20; ++v) CHECK(g.degree(v) == 5);
    CHECK(vertex_connectivity(g) == 2);
    CHECK(connected_components(g, VertexSet(20, {18, 19})).size() == 3);
    CHECK_FALSE(hamilton_oracle(g, VertexSet::full(20)).has_value());
    CHECK_THROWS_AS(gen_fig1ii(0), input_error);
}

TEST_CASE("fig1ii: m=1 boundary still validates as regular") {
    Graph g = gen_fig1ii(1);
    CHECK(g.n() == 11);
    for (int v = 0; v < 11; ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("bestposs: (1,3,2) instance") {
    Graph g = gen_bestposs(1, 3, 2);
    CHECK(g.n() == 19);
    for (int v = 0; v < 19; ++v) CHECK(g.degree(v) == 8);
    CHECK(vertex_connectivity(g) >= 1);
    auto comps = connected_components(g, VertexSet(19, {0}));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 9);
    CHECK(comps[1].size() == 9);
    CHECK_THROWS_AS(gen_bestposs(2, 3, 2), input_error);  // k < 2t
    CHECK_THROWS_AS(gen_bestposs(1, 1, 2), input_error);
}

TEST_CASE("bestposs: circumference bound holds exactly") {
    Graph g = gen_bestposs(1, 3, 2);
    int c = longest_cycle(g);
    CHECK(c <= 10);  // t*n/(r-1) + t = 19/2 + 1 -> 10
    CHECK(c >= 9);   // one block plus the cut vertex gives a 10-cycle or near
}

TEST_CASE("random regular: degrees and determinism") {
    Graph g = gen_random_regular(16, 6, 1);
    for (int v = 0; v < 16; ++v) CHECK(g.degree(v) == 6);
    Graph h = gen_random_regular(16, 6, 1);
    CHECK(g.edges() == h.edges());
    Graph k = gen_random_regular(16, 6, 2);
    CHECK(g.edges() != k.edges());
    CHECK_THROWS_AS(gen_random_regular(5, 3, 0), input_error);
    CHECK_THROWS_AS(gen_random_regular(5, 5, 0), input_error);
}

TEST_CASE("planted expanders: ground truth and near-regularity") {
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = 1;
    auto inst = gen_planted(spec);
    CHECK(inst.graph.n() == 40);
    CHECK(inst.graph.max_degree() - inst.graph.min_degree() <= 1);
    CHECK(inst.truth.k() == 2);
    CHECK(inst.truth.classes[0].vertices == range_set(40, 0, 20));

    PlantedSpec tiny;
    tiny.class_sizes = {4};
    CHECK_THROWS_AS(gen_planted(tiny), input_error);
}

TEST_CASE("planted expanders: three classes in a cycle are exactly regular") {
    PlantedSpec spec;
    spec.class_sizes = {15, 15, 15};
    spec.bridge = 3;
    spec.seed = 3;
    auto inst = gen_planted(spec);
    CHECK(inst.graph.is_regular());
    CHECK(vertex_connectivity(inst.graph) >= 3);
}

TEST_CASE("planted bipartite: single class") {
    PlantedSpec spec;
    spec.class_sizes = {10};
    spec.bipartite = true;
    spec.seed = 6;
    auto inst = gen_planted(spec);
    CHECK(inst.graph.n() == 20);
    CHECK(inst.graph.is_regular());
    CHECK(inst.graph.min_degree() == 9);
    CHECK(inst.truth.l() == 1);
    const auto& [a, b] = *inst.truth.classes[0].bipartition;
    CHECK(a.size() == 10);
    CHECK(b.size() == 10);
    // no edges inside the sides
    CHECK(inst.graph.edges_within(a) == 0);
    CHECK(inst.graph.edges_within(b) == 0);
}

TEST_CASE("planted bipartite: two linked classes stay regular") {
    PlantedSpec spec;
    spec.class_sizes = {10, 10};
    spec.bipartite = true;
    spec.bridge = 2;
    spec.seed = 9;
    auto inst = gen_planted(spec);
    CHECK(inst.graph.n() == 40);
    CHECK(inst.graph.is_regular());
    CHECK(inst.truth.l() == 2);
}

TEST_CASE("planted instances differ across seeds but not within") {
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = 10;
    auto a = gen_planted(spec);
    auto b = gen_planted(spec);
    CHECK(a.graph.edges() == b.graph.edges());
    spec.seed = 11;
    auto c = gen_planted(spec);
    CHECK(a.graph.edges() != c.graph.edges());
}
