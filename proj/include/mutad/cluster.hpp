#ifndef MUTAD_CLUSTER_HPP
#define MUTAD_CLUSTER_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mutad/mpoly.hpp"
#include "mutad/quiver.hpp"

namespace mutad {

// Rational function with monomial denominator, kept in reduced normal form.
struct LaurentRat {
    MPoly num;
    Mono den;

    static LaurentRat from_poly(const MPoly& p);
    static LaurentRat variable(RegistryPtr reg, int var);

    void normalize();
    LaurentRat mul(const LaurentRat& o) const;
    LaurentRat pow(int k) const;
    LaurentRat add(const LaurentRat& o) const;
    // (*this) / o; the polynomial division must be exact.
    LaurentRat div(const LaurentRat& o) const;

    bool operator==(const LaurentRat& o) const { return num == o.num && den == o.den; }
    bool operator<(const LaurentRat& o) const { return key() < o.key(); }
    std::string key() const;

    std::vector<int> denominator_vector() const;
    bool positive_numerator() const;  // positive integer coefficients
};

struct Seed {
    DecoratedQP qp;
    std::map<int, LaurentRat> vars;

    static Seed initial(int n, const std::vector<long long>& N, RegistryPtr reg);
    std::string canonical_key() const;
};

// Cluster-variable registry: x_1..x_{n+1}.
RegistryPtr cluster_registry(int n);

Seed seed_mutate(const Seed& s, int v);

struct ClusterEnumeration {
    std::vector<Seed> seeds;                       // canonical representatives
    std::vector<LaurentRat> variables;             // deduplicated, sorted by key
    std::map<std::string, std::set<std::string>> seed_graph;  // canonical key adjacency
};

ClusterEnumeration enumerate_cluster_variables(const Seed& initial, size_t cap = 100000);

} // namespace mutad

#endif
