#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "rpt/generators.hpp"
#include "rpt/io.hpp"

using namespace rpt;
using namespace rpt::testing;

TEST_CASE("graph round trip") {
    Graph g = gen_fig1i(4);
    Graph h = parse_graph_string(serialize_graph(g));
    CHECK(h.n() == g.n());
    CHECK(h.edges() == g.edges());
}

TEST_CASE("graph parser rejects malformed input with line numbers") {
    CHECK_THROWS_WITH_AS(parse_graph_string(""), "line 1: empty input", input_error);
    CHECK_THROWS_AS(parse_graph_string("3 1\n1 0\n"), input_error);         // u >= v
    CHECK_THROWS_AS(parse_graph_string("3 2\n0 1\n0 1\n"), input_error);    // duplicate
    CHECK_THROWS_AS(parse_graph_string("3 2\n0 2\n0 1\n"), input_error);    // out of order
    CHECK_THROWS_AS(parse_graph_string("3 1\n0 3\n"), input_error);         // out of range
    CHECK_THROWS_AS(parse_graph_string("3 1\n0 1 9\n"), input_error);       // trailing tokens
    try {
        parse_graph_string("4 2\n0 1\n2 1\n");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("partition round trip") {
    RobustPartition rp;
    rp.params = Params(Rat(1, 16), Rat(1, 10), Rat(1, 5));
    rp.classes.push_back({ComponentKind::EXPANDER, range_set(12, 0, 5), std::nullopt});
    rp.classes.push_back({ComponentKind::BIPARTITE, range_set(12, 5, 12), {{range_set(12, 5, 9), range_set(12, 9, 12)}}});
    std::string text = serialize_partition(rp);
    RobustPartition back = parse_partition_string(text, 12);
    CHECK(serialize_partition(back) == text);
    CHECK(back.k() == 1);
    CHECK(back.l() == 1);
    CHECK(back.params.rho == rp.params.rho);

    CHECK_THROWS_AS(parse_partition_string("params rho=1/16 nu=1/10 tau=1/5\nexpander 3 1 2\n", 12), input_error);
    CHECK_THROWS_AS(parse_partition_string("nonsense\n", 12), input_error);
}

TEST_CASE("path system round trip with comments") {
    std::istringstream in("# a comment\n0 1 2\n5 6\n");
    PathSystem ps = parse_path_system(in, 8);
    CHECK(ps.size() == 2);
    CHECK(serialize_path_system(ps) == "0 1 2\n5 6\n");
}

TEST_CASE("cycle line format starts at the minimum with the smaller neighbour") {
    CHECK(serialize_cycle({0, 2, 5, 3}) == "0 2 5 3\n");
}

#ifdef RPT_CLI
namespace {

struct CliResult {
    int status;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(RPT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/rpt_cli_test_") + name;
}

}  // namespace

TEST_CASE("cli: generate writes a parsable graph and round-trips") {
    std::string path = tmp_path("fig1i.graph");
    auto r = run_cli("generate --family fig1i --m 4 --out " + path);
    CHECK(r.status == 0);
    Graph g = load_graph(path);
    CHECK(g.n() == 17);
    CHECK(g.edge_count() == 34);
    std::remove(path.c_str());
}

TEST_CASE("cli: hamilton on the Petersen graph exits 1 with the exhaustive verdict") {
    std::string path = tmp_path("petersen.graph");
    save_graph(petersen(), path);
    auto r = run_cli("hamilton --graph " + path);
    CHECK(r.status == 1);
    CHECK(r.out.find("NON-HAMILTONIAN (exhaustive)") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli: certify K16 exactly") {
    std::string path = tmp_path("k16.graph");
    save_graph(complete(16), path);
    auto r = run_cli("certify --graph " + path + " --nu 1/10 --tau 1/4 --mode exact");
    CHECK(r.status == 0);
    CHECK(r.out.find("verdict=HOLDS_EXHAUSTIVE") != std::string::npos);
    CHECK(r.out.find("seed=0") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli: certify a non-expander exits 1 with a witness") {
    std::string path = tmp_path("2k8.graph");
    save_graph(disjoint_double(complete(8)), path);
    auto r = run_cli("certify --graph " + path + " --nu 1/10 --tau 1/4 --mode exact");
    CHECK(r.status == 1);
    CHECK(r.out.find("verdict=FAILS") != std::string::npos);
    CHECK(r.out.find("witness=0 1 2 3 4 5 6\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli: partition then validate round-trips through files") {
    std::string gpath = tmp_path("planted.graph"), ppath = tmp_path("planted.partition");
    PlantedSpec spec;
    spec.class_sizes = {20, 20};
    spec.bridge = 3;
    spec.seed = 1;
    save_graph(gen_planted(spec).graph, gpath);
    auto r = run_cli("partition --graph " + gpath + " --out " + ppath);
    CHECK(r.status == 0);
    auto v = run_cli("validate --graph " + gpath + " --partition " + ppath);
    CHECK(v.status == 0);
    CHECK(v.out.find("k=2 l=0") != std::string::npos);
    std::remove(gpath.c_str());
    std::remove(ppath.c_str());
}

TEST_CASE("cli: determinism, identical invocations give identical bytes") {
    std::string path = tmp_path("det.graph");
    save_graph(gen_random_regular(16, 6, 3), path);
    auto a = run_cli("partition --graph " + path);
    auto b = run_cli("partition --graph " + path);
    CHECK(a.out == b.out);
    std::remove(path.c_str());
}

TEST_CASE("cli: errors map to the exit-code contract") {
    auto unknown_flag = run_cli("certify --graph /nonexistent --nu 1/10 --tau 1/4 --bogus 3");
    CHECK(unknown_flag.status == 2);
    auto missing = run_cli("hamilton --graph /nonexistent.graph");
    CHECK(missing.status == 2);
    std::string path = tmp_path("bad.graph");
    {
        std::ofstream f(path);
        f << "3 1\n0 1 extra\n";
    }
    auto malformed = run_cli("hamilton --graph " + path);
    CHECK(malformed.status == 2);
    auto unknown_family = run_cli("generate --family nosuch");
    CHECK(unknown_family.status == 2);
    auto refused = run_cli("generate --family bipbestposs");
    CHECK(refused.status == 3);
    std::remove(path.c_str());
}
#endif
