#ifndef RPT_CERTIFY_HPP
#define RPT_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpt/graph.hpp"

namespace rpt {

enum class Verdict { HOLDS_EXHAUSTIVE, FAILS, HOLDS_HEURISTIC };
enum class CertifyMode { Exact, Heuristic };

std::string to_string(Verdict v);

/// Outcome of a certification run. A FAILS verdict always carries a witness
/// that re-verifies against the definition when replayed.
struct Certificate {
    Verdict verdict;
    std::optional<VertexSet> witness;
    long long sets_examined = 0;
    int restarts_used = 0;
    uint64_t seed = 0;

    bool holds() const { return verdict != Verdict::FAILS; }
};

enum class ComponentKind { EXPANDER, BIPARTITE };

struct ComponentLabel {
    ComponentKind kind;
    VertexSet vertices;
    std::optional<std::pair<VertexSet, VertexSet>> bipartition;  // required when BIPARTITE
};

struct RobustPartition {
    std::vector<ComponentLabel> classes;
    Params params;

    int k() const;  // EXPANDER classes
    int l() const;  // BIPARTITE classes
};

/// Tunables for exhaustive/heuristic certification. `exhaustive_bound` may be
/// overridden by the RPT_EXHAUSTIVE_BOUND environment variable.
struct CertifyOptions {
    int exhaustive_bound = default_exhaustive_bound();
    int restarts = 64;
    uint64_t seed = 0;

    static int default_exhaustive_bound();
};

/// RN_{nu,host}(S): vertices of host with at least nu*|host| neighbours in S,
/// computed inside g[host] with exact rational comparison.
VertexSet robust_neighbourhood(const Graph& g, const VertexSet& host, const VertexSet& s, const Rat& nu);

/// Exact deficiency sign test: is S nu-expanding inside host?
bool is_expanding(const Graph& g, const VertexSet& host, const VertexSet& s, const Rat& nu);

/// Is |S| within the tau-window [tau*|host|, (1-tau)*|host|]?
bool in_window(int s_size, int host_size, const Rat& tau);

Certificate certify_robust_expander(const Graph& g, const VertexSet& host, const Rat& nu, const Rat& tau,
                                    CertifyMode mode, const CertifyOptions& opt = {});

/// One-sided bipartite expansion: S ranges over subsets of a; the robust
/// neighbourhood is taken in g[a | b] and intersected with b. Order matters.
Certificate certify_bipartite_robust_expander(const Graph& g, const VertexSet& a, const VertexSet& b, const Rat& nu,
                                              const Rat& tau, CertifyMode mode, const CertifyOptions& opt = {});

/// Exhaustive below the bound, seeded local search above it. Any returned set
/// re-verifies as non-expanding before the call returns.
std::optional<VertexSet> find_nonexpanding_witness(const Graph& g, const VertexSet& host, const Rat& nu,
                                                   const Rat& tau, const CertifyOptions& opt = {});

/// Bipartite variant: witness S is a subset of `a` in the |a|-window failing
/// the one-sided expansion inequality.
std::optional<VertexSet> find_bipartite_nonexpanding_witness(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                             const Rat& nu, const Rat& tau,
                                                             const CertifyOptions& opt = {});

/// |U|^2 >= rho*n^2 and e(U, complement) <= rho*n^2, both exact.
bool check_rho_component(const Graph& g, const VertexSet& u, const Rat& rho);

/// (C1)-(C3) of rho-closeness to bipartite, exact. u1, u2 must be disjoint.
bool check_rho_close_bipartite(const Graph& g, const VertexSet& u1, const VertexSet& u2, const Rat& rho);
struct CloseBipartiteReport {
    bool c1, c2, c3;
    bool all() const { return c1 && c2 && c3; }
};
CloseBipartiteReport check_rho_close_bipartite_detail(const Graph& g, const VertexSet& u1, const VertexSet& u2,
                                                      const Rat& rho);

/// delta(g) >= (1/2+epsilon)n and epsilon >= 2nu/tau, both exact; a cheap
/// sufficient condition for robust expansion.
bool dense_implies_expander(const Graph& g, const Rat& nu, const Rat& tau, const Rat& epsilon);

struct ClauseResult {
    std::string clause;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ClauseResult> clauses;
    int k = 0, l = 0;
    bool all_pass() const;
    const ClauseResult* find(const std::string& clause) const;
};

struct ValidateOptions {
    CertifyMode mode = CertifyMode::Exact;  // per-class fallback to heuristic above the bound
    CertifyOptions certify;
    bool weak_clauses = false;  // also check (D1')-(D5')
    Rat eta{0, 1};              // used by (D4')/(D5') when weak_clauses
    int r = 0;                  // when > 0, also check the count bound k+2l <= r-1
    Rat epsilon{0, 1};
};

/// Checks (D1)-(D7) clause by clause; D plays delta(g) when g is irregular.
ValidationReport validate_robust_partition(const Graph& g, const RobustPartition& rp, const ValidateOptions& opt = {});

}  // namespace rpt

#endif
