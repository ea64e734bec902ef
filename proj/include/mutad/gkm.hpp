#ifndef MUTAD_GKM_HPP
#define MUTAD_GKM_HPP

#include <map>
#include <set>
#include <vector>

#include "mutad/mpoly.hpp"
#include "mutad/quiver.hpp"
#include "mutad/report.hpp"

namespace mutad {

// Index-set assignment per gauge node; the frozen node implicitly carries
// the full set {1..N_{n+1}}.
struct FixedPoint {
    std::map<int, std::set<int>> I;

    std::set<int> set_of(const DecoratedQP& q, int node) const;
    bool operator==(const FixedPoint& o) const { return I == o.I; }
    bool operator<(const FixedPoint& o) const { return I < o.I; }
    std::string key() const;
};

std::vector<FixedPoint> enumerate_fixed_points(const DecoratedQP& q);
void validate_fixed_point(const DecoratedQP& q, const FixedPoint& p);

// Mutation bijection on fixed points.
FixedPoint phi_fixed(const DecoratedQP& q, int v, const FixedPoint& p);

// Equivariant variables shared with callers: t and lambda_1..lambda_N.
struct EquivVars {
    RegistryPtr reg;
    int t = -1;
    std::vector<int> lam;  // lam[j-1]

    static EquivVars standalone(long long nlam);
    MPoly tpoly() const { return MPoly::variable(reg, t); }
    MPoly lpoly(int j) const { return MPoly::variable(reg, lam.at(j - 1)); }
};

// Chern polynomial restrictions at a fixed point.
MPoly restrict_taut(const EquivVars& ev, const DecoratedQP& q, const FixedPoint& p, int node,
                    bool dual = false);
MPoly restrict_star(const EquivVars& ev, const DecoratedQP& q, const FixedPoint& p, int node,
                    bool dual = false);
MPoly restrict_node_quotient(const EquivVars& ev, const DecoratedQP& q, const FixedPoint& p, int v);
// S_hi/S_lo on the flag variety, at a chain fixed point of the initial quiver.
MPoly restrict_flag_quotient(const EquivVars& ev, const DecoratedQP& q, const FixedPoint& p,
                             int lo, int hi);

// Integer vector of lambda-coefficients.
using LamForm = std::vector<long long>;

struct GkmEdge {
    int a = 0, b = 0;   // vertex indices
    int wi = 0, wj = 0; // weight at vertex a is lambda_wi - lambda_wj
};

struct GkmGraph {
    DecoratedQP q;
    std::vector<FixedPoint> vertices;
    std::vector<GkmEdge> edges;
    std::map<int, std::vector<int>> edges_at;  // vertex -> edge indices

    LamForm weight(int edge, int vertex) const;
    int other_end(int edge, int vertex) const;
};

GkmGraph build_gkm_graph(const DecoratedQP& q);

// All vertices of one graph share a common valence; throws otherwise.
int uniform_valence(const GkmGraph& g);

// For flag (edge tau, vertex sigma): for each edge tau_i at sigma the unique
// (tau_i' at sigma', a_i) with w(tau_i', sigma') = w(tau_i, sigma) - a_i w(tau, sigma).
struct ACoeff {
    int edge_at_sigma = 0;
    int matched_edge = 0;
    long long a = 0;
};
std::vector<ACoeff> a_coefficients(const GkmGraph& g, int edge, int vertex);

// Product of linear forms in lambda with integer exponents, times a rational.
struct FactoredRat {
    Rat scalar = 1;
    std::map<LamForm, long long> factors;  // primitive forms -> exponent

    static FactoredRat one() { return FactoredRat{}; }
    void mul_form(const LamForm& f, const Rat& premult, long long exp);  // (premult*f)^exp
    FactoredRat& operator*=(const FactoredRat& o);
    FactoredRat& operator*=(const Rat& c) { scalar *= c; return *this; }
    bool operator==(const FactoredRat& o) const;
    bool is_zero() const { return scalar == 0; }
    std::string to_string() const;
    // numerator/denominator over the given variables
    std::pair<MPoly, MPoly> to_fraction(const EquivVars& ev) const;
};

FactoredRat b_factor(const std::vector<Rat>& u, const std::vector<Rat>& w, long long a);
FactoredRat edge_factor_h(const GkmGraph& g, int edge, int vertex, long long d);

// Curve class in the basis dual to -sign(sigma_u) c_1(S_u).
using CurveClass = std::map<int, long long>;

CurveClass edge_curve_class(const GkmGraph& g, int edge);
CurveClass curve_class_transform(const CurveClass& beta, const DecoratedQP& q, int v);

// Genus-zero localization sum over single-edge graphs of total degree d with
// ordinary (no descendant) insertions given by per-vertex restrictions.
MPoly genus0_single_edge_invariant(const GkmGraph& g, const EquivVars& ev,
                                   const std::vector<std::vector<MPoly>>& insertions_at_vertex,
                                   long long d, const CurveClass& beta);

VerificationReport verify_seiberg_graph_level(const DecoratedQP& q, int v, long long max_degree = 3);

} // namespace mutad

#endif
