#include "rpt/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rpt {

namespace {

[[noreturn]] void bad_line(int line, const std::string& what) {
    throw input_error("line " + std::to_string(line) + ": " + what);
}

std::vector<int> parse_ids(const std::string& s, int line) {
    std::istringstream iss(s);
    std::vector<int> out;
    long long v;
    while (iss >> v) {
        if (v < 0) bad_line(line, "negative vertex id");
        out.push_back(static_cast<int>(v));
    }
    if (!iss.eof()) bad_line(line, "non-numeric token");
    return out;
}

}  // namespace

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw input_error("line 1: empty input");
    ++lineno;
    long long n, m;
    {
        std::istringstream iss(line);
        if (!(iss >> n >> m) || n < 0 || m < 0) bad_line(lineno, "expected header 'n m'");
        std::string rest;
        if (iss >> rest) bad_line(lineno, "trailing tokens after header");
    }
    if (n > 100000) throw input_error("graph too large");
    Graph g(static_cast<int>(n));
    Edge prev{-1, -1};
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) bad_line(lineno + 1, "unexpected end of input");
        ++lineno;
        std::istringstream iss(line);
        long long u, v;
        if (!(iss >> u >> v)) bad_line(lineno, "expected 'u v'");
        std::string rest;
        if (iss >> rest) bad_line(lineno, "trailing tokens");
        if (u < 0 || v < 0 || u >= n || v >= n) bad_line(lineno, "vertex id out of range");
        if (u >= v) bad_line(lineno, "edges must satisfy u < v");
        Edge e{static_cast<int>(u), static_cast<int>(v)};
        if (!(prev < e)) bad_line(lineno, "edges out of ascending order or duplicated");
        prev = e;
        g.add_edge(e.first, e.second);
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty()) bad_line(lineno, "trailing content after edge list");
    }
    return g;
}

Graph parse_graph_string(const std::string& text) {
    std::istringstream iss(text);
    return parse_graph(iss);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return parse_graph(in);
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << serialize_graph(g);
}

std::string serialize_partition(const RobustPartition& rp) {
    std::ostringstream out;
    out << "params rho=" << rp.params.rho.str() << " nu=" << rp.params.nu.str() << " tau=" << rp.params.tau.str()
        << "\n";
    // classes ordered by minimum id
    std::vector<const ComponentLabel*> order;
    for (const auto& cl : rp.classes) order.push_back(&cl);
    std::stable_sort(order.begin(), order.end(),
                     [](const ComponentLabel* a, const ComponentLabel* b) { return a->vertices.min() < b->vertices.min(); });
    for (const ComponentLabel* cl : order) {
        if (cl->kind == ComponentKind::EXPANDER) {
            out << "expander";
            cl->vertices.for_each([&](int v) { out << " " << v; });
        } else {
            out << "bipartite";
            const auto& [a, b] = *cl->bipartition;
            a.for_each([&](int v) { out << " " << v; });
            out << " |";
            b.for_each([&](int v) { out << " " << v; });
        }
        out << "\n";
    }
    return out.str();
}

RobustPartition parse_partition(std::istream& in, int n) {
    RobustPartition rp;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw input_error("line 1: missing params header");
    ++lineno;
    {
        std::istringstream iss(line);
        std::string word, r, nu, tau;
        if (!(iss >> word >> r >> nu >> tau) || word != "params" || r.rfind("rho=", 0) != 0 ||
            nu.rfind("nu=", 0) != 0 || tau.rfind("tau=", 0) != 0)
            bad_line(lineno, "expected 'params rho=p/q nu=p/q tau=p/q'");
        rp.params = Params(Rat::parse(r.substr(4)), Rat::parse(nu.substr(3)), Rat::parse(tau.substr(4)));
    }
    int prev_min = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream iss(line);
        std::string kind;
        iss >> kind;
        std::string rest;
        std::getline(iss, rest);
        ComponentLabel cl;
        if (kind == "expander") {
            cl.kind = ComponentKind::EXPANDER;
            auto ids = parse_ids(rest, lineno);
            if (ids.empty()) bad_line(lineno, "empty class");
            if (!std::is_sorted(ids.begin(), ids.end()) ||
                std::adjacent_find(ids.begin(), ids.end()) != ids.end())
                bad_line(lineno, "ids must be strictly ascending");
            cl.vertices = VertexSet(n);
            for (int v : ids) {
                if (v >= n) bad_line(lineno, "vertex id out of range");
                cl.vertices.add(v);
            }
        } else if (kind == "bipartite") {
            cl.kind = ComponentKind::BIPARTITE;
            auto bar = rest.find('|');
            if (bar == std::string::npos) bad_line(lineno, "bipartite class missing '|'");
            auto ids_a = parse_ids(rest.substr(0, bar), lineno);
            auto ids_b = parse_ids(rest.substr(bar + 1), lineno);
            if (ids_a.empty() || ids_b.empty()) bad_line(lineno, "empty side");
            for (auto* ids : {&ids_a, &ids_b})
                if (!std::is_sorted(ids->begin(), ids->end()) ||
                    std::adjacent_find(ids->begin(), ids->end()) != ids->end())
                    bad_line(lineno, "ids must be strictly ascending");
            VertexSet a(n), b(n);
            for (int v : ids_a) {
                if (v >= n) bad_line(lineno, "vertex id out of range");
                a.add(v);
            }
            for (int v : ids_b) {
                if (v >= n) bad_line(lineno, "vertex id out of range");
                b.add(v);
            }
            if (a.intersects(b)) bad_line(lineno, "sides overlap");
            cl.vertices = a | b;
            cl.bipartition = {{a, b}};
        } else {
            bad_line(lineno, "unknown class kind '" + kind + "'");
        }
        if (cl.vertices.min() <= prev_min) bad_line(lineno, "classes not ordered by minimum id");
        prev_min = cl.vertices.min();
        rp.classes.push_back(std::move(cl));
    }
    return rp;
}

RobustPartition parse_partition_string(const std::string& text, int n) {
    std::istringstream iss(text);
    return parse_partition(iss, n);
}

std::string serialize_path_system(const PathSystem& ps) {
    std::ostringstream out;
    for (const auto& p : ps.paths()) {
        for (size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << "\n";
    }
    return out.str();
}

PathSystem parse_path_system(std::istream& in, int n) {
    PathSystem ps(n);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto ids = parse_ids(line, lineno);
        if (ids.empty()) bad_line(lineno, "empty path");
        for (int v : ids)
            if (v >= n) bad_line(lineno, "vertex id out of range");
        ps.add_path(ids);
    }
    return ps;
}

std::string serialize_certificate(const Certificate& cert) {
    std::ostringstream out;
    out << "verdict=" << to_string(cert.verdict) << "\n";
    if (cert.witness) {
        out << "witness=";
        bool first = true;
        cert.witness->for_each([&](int v) {
            out << (first ? "" : " ") << v;
            first = false;
        });
        out << "\n";
    }
    out << "seed=" << cert.seed << "\n";
    return out.str();
}

std::string serialize_cycle(const std::vector<int>& cycle) {
    std::ostringstream out;
    for (size_t i = 0; i < cycle.size(); ++i) out << (i ? " " : "") << cycle[i];
    out << "\n";
    return out.str();
}

}  // namespace rpt
