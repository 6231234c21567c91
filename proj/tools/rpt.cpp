// rpt: robust-partition toolkit command line
//
// verbs: generate | certify | partition | validate | hamilton | longcycle
// exit codes: 0 success, 1 negative mathematical result, 2 input error,
//             3 capability error

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rpt/generators.hpp"
#include "rpt/hamilton.hpp"
#include "rpt/io.hpp"

using namespace rpt;

namespace {

VertexSet ids_to_set(const std::string& spec, int n) {
    VertexSet s(n);
    std::istringstream iss(spec);
    long long v;
    while (iss >> v) {
        if (v < 0 || v >= n) throw input_error("vertex id out of range: " + std::to_string(v));
        s.add(static_cast<int>(v));
    }
    if (!iss.eof()) throw input_error("bad id list: " + spec);
    return s;
}

std::vector<int> parse_sizes(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

int run_generate(const std::string& family, int m, int t, int r, int k, int n, int d, const std::string& sizes,
                 int bridge, uint64_t seed, const std::string& out, const std::string& truth_out) {
    Graph g;
    std::string truth_text;
    if (family == "fig1i") {
        g = gen_fig1i(m);
    } else if (family == "fig1ii") {
        g = gen_fig1ii(m);
    } else if (family == "bestposs") {
        g = gen_bestposs(t, r, k);
    } else if (family == "random-regular") {
        g = gen_random_regular(n, d, seed);
    } else if (family == "planted-expanders" || family == "planted-bipartite") {
        PlantedSpec spec;
        spec.class_sizes = parse_sizes(sizes);
        spec.bridge = bridge;
        spec.seed = seed;
        spec.bipartite = family == "planted-bipartite";
        auto inst = gen_planted(spec);
        g = inst.graph;
        truth_text = serialize_partition(inst.truth);
    } else if (family == "bipbestposs") {
        throw capability_error("the bipartite extremal family has no published construction; not generated");
    } else {
        throw input_error("unknown family: " + family);
    }
    if (out.empty()) {
        std::cout << serialize_graph(g);
    } else {
        save_graph(g, out);
        std::cerr << "wrote " << g.n() << " vertices, " << g.edge_count() << " edges to " << out << "\n";
    }
    if (!truth_out.empty()) {
        std::ofstream f(truth_out);
        if (!f) throw input_error("cannot write " + truth_out);
        f << truth_text;
    }
    return 0;
}

int run_certify(const std::string& graph_path, const std::string& host_spec, const std::string& side_a,
                const std::string& side_b, const std::string& nu_s, const std::string& tau_s, const std::string& mode_s,
                uint64_t seed, int restarts) {
    Graph g = load_graph(graph_path);
    Rat nu = Rat::parse(nu_s), tau = Rat::parse(tau_s);
    CertifyMode mode = mode_s == "heuristic" ? CertifyMode::Heuristic : CertifyMode::Exact;
    CertifyOptions opt;
    opt.seed = seed;
    opt.restarts = restarts;
    Certificate cert;
    if (!side_a.empty() || !side_b.empty()) {
        if (side_a.empty() || side_b.empty()) throw input_error("both --side-a and --side-b are required");
        cert = certify_bipartite_robust_expander(g, ids_to_set(side_a, g.n()), ids_to_set(side_b, g.n()), nu, tau,
                                                 mode, opt);
    } else {
        VertexSet host = host_spec.empty() ? VertexSet::full(g.n()) : ids_to_set(host_spec, g.n());
        cert = certify_robust_expander(g, host, nu, tau, mode, opt);
    }
    std::cout << serialize_certificate(cert);
    return cert.holds() ? 0 : 1;
}

int run_partition(const std::string& graph_path, const std::string& rho1, const std::string& tau, uint64_t seed,
                  const std::string& out) {
    Graph g = load_graph(graph_path);
    Schedule sched;
    if (!rho1.empty()) sched.rho1 = Rat::parse(rho1);
    if (!tau.empty()) sched.tau = Rat::parse(tau);
    sched.certify.seed = seed;
    std::cerr << "seed=" << seed << "\n";
    auto [rp, trace] = refine_to_robust_partition(g, sched);
    std::string text = serialize_partition(rp);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw input_error("cannot write " + out);
        f << text;
    }
    std::cerr << "k=" << rp.k() << " l=" << rp.l() << " levels=" << trace.levels_used
              << (trace.out_of_regime ? " out-of-regime" : "") << "\n";
    for (const auto& cl : trace.validation.clauses)
        if (!cl.pass) std::cerr << "validation: " << cl.clause << " FAILS " << cl.detail << "\n";
    return 0;
}

int run_validate(const std::string& graph_path, const std::string& partition_path, const std::string& mode_s,
                 bool weak, const std::string& eta_s, int r, const std::string& eps_s, uint64_t seed) {
    Graph g = load_graph(graph_path);
    std::ifstream pin(partition_path);
    if (!pin) throw input_error("cannot open " + partition_path);
    RobustPartition rp = parse_partition(pin, g.n());
    ValidateOptions opt;
    opt.mode = mode_s == "heuristic" ? CertifyMode::Heuristic : CertifyMode::Exact;
    opt.certify.seed = seed;
    opt.weak_clauses = weak;
    if (!eta_s.empty()) opt.eta = Rat::parse(eta_s);
    if (r > 0) {
        opt.r = r;
        if (!eps_s.empty()) opt.epsilon = Rat::parse(eps_s);
    }
    ValidationReport rep = validate_robust_partition(g, rp, opt);
    for (const auto& cl : rep.clauses)
        std::cout << (cl.pass ? "PASS " : "FAIL ") << cl.clause << (cl.detail.empty() ? "" : "  " + cl.detail) << "\n";
    std::cout << "k=" << rep.k << " l=" << rep.l << "\n";
    return rep.all_pass() ? 0 : 1;
}

int run_hamilton(const std::string& graph_path, uint64_t seed) {
    Graph g = load_graph(graph_path);
    OracleOptions oracle;
    PipelineOptions popt;
    popt.schedule.certify.seed = seed;
    std::cerr << "seed=" << seed << "\n";

    std::optional<RobustPartition> stability;
    try {
        PipelineResult res = find_hamilton_pipeline(g, popt);
        if (res.cycle) {
            std::cout << "HAMILTONIAN route=" << res.route << "\n" << serialize_cycle(res.cycle->cycle);
            return 0;
        }
        stability = res.stability;
    } catch (const capability_error&) {
        throw;
    } catch (const std::exception& e) {
        std::cerr << "pipeline: " << e.what() << "\n";
    }
    if (g.n() <= oracle.bound) {
        auto cyc = hamilton_oracle(g, VertexSet::full(g.n()), {}, {}, oracle);
        if (cyc) {
            std::cout << "HAMILTONIAN route=oracle\n" << serialize_cycle(cyc->cycle);
            return 0;
        }
        std::cout << "NON-HAMILTONIAN (exhaustive)\n";
        if (stability) std::cout << serialize_partition(*stability);
        return 1;
    }
    if (stability) {
        std::cout << "STABILITY k=" << stability->k() << " l=" << stability->l() << "\n"
                  << serialize_partition(*stability);
        return 1;
    }
    throw capability_error("no Hamilton cycle found and the graph exceeds the exhaustive oracle bound");
}

int run_longcycle(const std::string& graph_path, int t, int r, const std::string& eps_s, uint64_t seed) {
    Graph g = load_graph(graph_path);
    PipelineOptions popt;
    popt.schedule.certify.seed = seed;
    std::cerr << "seed=" << seed << "\n";
    Rat eps = eps_s.empty() ? Rat(0, 1) : Rat::parse(eps_s);
    LongCycleResult res = long_cycle_pipeline(g, t, popt, r, eps);
    std::cout << serialize_cycle(res.cycle.cycle);
    std::cout << "length=" << res.covered << " classes=" << res.selected_classes;
    if (r > 1) std::cout << " bound=" << res.bound.str();
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust-partition toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "construct extremal and planted families");
    std::string family, sizes = "20,20", gen_out, truth_out;
    int m = 4, t = 1, r = 3, k = 2, n = 16, d = 6, bridge = 3;
    uint64_t seed = 0;
    gen->add_option("--family", family, "fig1i|fig1ii|bestposs|random-regular|planted-expanders|planted-bipartite")
        ->required();
    gen->add_option("--m", m, "fig1i/fig1ii parameter");
    gen->add_option("--t", t, "bestposs connectivity");
    gen->add_option("--r", r, "bestposs degree fraction denominator");
    gen->add_option("--k", k, "bestposs block scale");
    gen->add_option("--n", n, "random-regular vertex count");
    gen->add_option("--d", d, "random-regular degree");
    gen->add_option("--sizes", sizes, "planted class sizes, comma separated");
    gen->add_option("--bridge", bridge, "planted bridge width");
    gen->add_option("--seed", seed, "random seed (default 0)");
    gen->add_option("--out", gen_out, "output graph file (default: stdout)");
    gen->add_option("--truth-out", truth_out, "planted ground-truth partition file");

    // certify
    auto* cert = app.add_subcommand("certify", "certify (bipartite) robust expansion");
    std::string c_graph, c_host, c_side_a, c_side_b, c_nu, c_tau, c_mode = "exact";
    int restarts = 64;
    cert->add_option("--graph", c_graph)->required();
    cert->add_option("--host", c_host, "host vertex ids (default: all)");
    cert->add_option("--side-a", c_side_a, "bipartite side A ids");
    cert->add_option("--side-b", c_side_b, "bipartite side B ids");
    cert->add_option("--nu", c_nu, "nu as p/q")->required();
    cert->add_option("--tau", c_tau, "tau as p/q")->required();
    cert->add_option("--mode", c_mode, "exact|heuristic");
    cert->add_option("--seed", seed);
    cert->add_option("--restarts", restarts);

    // partition
    auto* part = app.add_subcommand("partition", "compute a robust partition by refinement");
    std::string p_graph, p_rho1, p_tau, p_out;
    part->add_option("--graph", p_graph)->required();
    part->add_option("--rho1", p_rho1, "initial rho as p/q");
    part->add_option("--tau", p_tau, "tau as p/q");
    part->add_option("--seed", seed);
    part->add_option("--out", p_out, "partition file (default: stdout)");

    // validate
    auto* val = app.add_subcommand("validate", "check (D1)-(D7) for a partition file");
    std::string v_graph, v_partition, v_mode = "exact", v_eta, v_eps;
    bool v_weak = false;
    int v_r = 0;
    val->add_option("--graph", v_graph)->required();
    val->add_option("--partition", v_partition)->required();
    val->add_option("--mode", v_mode, "exact|heuristic");
    val->add_flag("--weak", v_weak, "also check (D1')-(D5')");
    val->add_option("--eta", v_eta, "eta for the weak clauses");
    val->add_option("--r", v_r, "check k+2l <= r-1");
    val->add_option("--epsilon", v_eps, "epsilon for the r-check premise");
    val->add_option("--seed", seed);

    // hamilton
    auto* ham = app.add_subcommand("hamilton", "Hamilton cycle via robust partition, oracle fallback");
    std::string h_graph;
    ham->add_option("--graph", h_graph)->required();
    ham->add_option("--seed", seed);

    // longcycle
    auto* lc = app.add_subcommand("longcycle", "cycle through the t largest robust components");
    std::string l_graph, l_eps;
    int l_t = 2, l_r = 0;
    lc->add_option("--graph", l_graph)->required();
    lc->add_option("--t", l_t, "connectivity/compnent budget")->required();
    lc->add_option("--r", l_r, "report the circumference bound for this r");
    lc->add_option("--epsilon", l_eps, "epsilon for the bound");
    lc->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return run_generate(family, m, t, r, k, n, d, sizes, bridge, seed, gen_out, truth_out);
        if (cert->parsed())
            return run_certify(c_graph, c_host, c_side_a, c_side_b, c_nu, c_tau, c_mode, seed, restarts);
        if (part->parsed()) return run_partition(p_graph, p_rho1, p_tau, seed, p_out);
        if (val->parsed()) return run_validate(v_graph, v_partition, v_mode, v_weak, v_eta, v_r, v_eps, seed);
        if (ham->parsed()) return run_hamilton(h_graph, seed);
        if (lc->parsed()) return run_longcycle(l_graph, l_t, l_r, l_eps, seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const capability_error& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
