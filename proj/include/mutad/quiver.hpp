#ifndef MUTAD_QUIVER_HPP
#define MUTAD_QUIVER_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mutad/errors.hpp"

namespace mutad {

// Node interval: r = N_j - N_i against the global sequence, N_0 = 0.
struct Interval {
    int lo = 0;  // i
    int hi = 0;  // j
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    bool operator<(const Interval& o) const { return std::tie(lo, hi) < std::tie(o.lo, o.hi); }
};

// Decorated quiver with potential. Nodes are 1..n+1; by construction the
// frozen node keeps one fixed id, gauge nodes keep theirs across mutations.
struct DecoratedQP {
    int n = 0;                                  // number of gauge nodes
    std::vector<long long> N;                   // N[1..n+1], N[0] = 0
    int frozen = 0;                             // frozen node id
    std::map<std::pair<int, int>, int> arrows;  // (u,v) -> multiplicity > 0
    std::set<std::array<int, 3>> cycles;        // oriented 3-cycles, canonical rotation
    std::map<int, Interval> interval;           // node -> (i,j)
    std::map<int, int> sign;                    // gauge node -> +-1

    long long N_of(int idx) const;              // N_idx with N_0 = 0
    long long r_of(int node) const;
    bool is_gauge(int node) const { return node != frozen; }
    std::vector<int> node_ids() const;
    std::vector<int> gauge_ids() const;
    int arrow_mult(int u, int v) const;
    std::vector<int> out_neighbors(int v) const;
    std::vector<int> in_neighbors(int v) const;
    int valence(int v) const;

    static std::array<int, 3> canon_cycle(std::array<int, 3> c);
    static DecoratedQP initial_linear(int n, const std::vector<long long>& N);

    void validate() const;  // structural invariants; throws internal_error
};

// (N_f, N_a): sums of decorations over arrow targets/sources at v.
std::pair<long long, long long> in_out_degree(const DecoratedQP& q, int v);

// Local shape of a gauge node. fig_a means N_f(v) > N_a(v); then
// r_v = N_k - N_l and the mutation sends the interval to (p+1, m).
// Otherwise r_v = N_m - N_{p+1} and the interval goes to (l, k).
struct LocalProfile {
    int m = 0, k = 0, p = 0, l = 0;
    bool fig_a = true;
    std::optional<int> v1, v2, v3, v4;  // role -> node id
};

LocalProfile local_profile(const DecoratedQP& q, int v);

DecoratedQP mutate_quiver(const DecoratedQP& q, int v);

struct OmegaReport {
    bool ok = true;
    std::vector<std::string> violations;
};
OmegaReport check_omega_membership(const DecoratedQP& q);

// Partial order towards the frozen root: parent = unique neighbor closer to
// the root, children = maximal nodes below.
struct PartialOrder {
    std::map<int, int> distance;
    std::map<int, int> parent;               // absent for root
    std::map<int, std::vector<int>> children;
    bool precedes(int v, int w) const;       // v < w strictly
};
PartialOrder partial_order(const DecoratedQP& q);

// Canonical encoding, minimal over gauge-node relabelings fixing the root.
std::string canonical_key(const DecoratedQP& q);

// All members of Omega_n with decorations, via the rooted recursion.
std::vector<DecoratedQP> enumerate_omega(int n, const std::vector<long long>& N);

// BFS closure of the initial linear quiver under gauge mutations.
std::vector<DecoratedQP> enumerate_omega_bfs(int n, const std::vector<long long>& N,
                                             size_t cap = 100000);

// Stability inequalities of the only valid phase, emitted as data: each entry
// is a list of gauge nodes whose sigma-sum must have the given sign.
struct PhaseInequality {
    std::vector<int> nodes;
    int sign = +1;  // sum > 0 or < 0
};
std::vector<PhaseInequality> phase_inequalities(const DecoratedQP& q);

} // namespace mutad

#endif
