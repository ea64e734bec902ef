#ifndef MUTAD_PSI_HPP
#define MUTAD_PSI_HPP

#include <map>
#include <string>
#include <vector>

#include "mutad/cluster.hpp"
#include "mutad/flagqh.hpp"
#include "mutad/report.hpp"

namespace mutad {

// Image of a cluster variable: a sign, a xi-monomial and a quotient-bundle
// Chern polynomial. xi_0 is the constant 1 and never appears.
struct PsiImage {
    int sign = 1;
    std::map<int, int> xi;  // index -> exponent
    ChernSpec spec;

    bool operator==(const PsiImage& o) const {
        return sign == o.sign && xi == o.xi && spec == o.spec;
    }
    bool operator<(const PsiImage& o) const {
        return std::tie(sign, xi, spec) < std::tie(o.sign, o.xi, o.spec);
    }
    std::string to_string() const;
};

class PsiMap {
public:
    PsiMap(int n, const std::vector<long long>& N);

    long long N_of(int k) const;
    PsiImage image_of_interval(const Interval& iv) const;
    PsiImage psi_of(const LaurentRat& var, const Seed& context) const;

    // q_i -> (-1)^(N_i + N_{i+1}) xi_{i-1} xi_{i+1}^{-1}
    std::pair<int, std::map<int, int>> kahler_q_image(int i) const;

    // The relation instance the exchange at node v maps to, read off the
    // local profile of the seed quiver.
    RelationInstance exchange_instance(const DecoratedQP& q, int v) const;

    // Checks one exchange: xi/sign bookkeeping plus the quantum identity.
    VerificationReport verify_exchange(const Seed& s, int v, FlagQH& qh) const;
    // Walks a mutation path from the initial seed.
    VerificationReport verify_homomorphism_path(const std::vector<int>& path, FlagQH& qh) const;
    // Every exchange over the full seed graph.
    VerificationReport verify_homomorphism_all(FlagQH& qh, size_t cap = 100000) const;

    VerificationReport distinctness_probe(size_t cap = 100000) const;

    // variable key -> image, over the full enumeration
    std::map<std::string, PsiImage> image_table(size_t cap = 100000) const;

private:
    int n_;
    std::vector<long long> N_;  // N_[0] = 0
    RegistryPtr cluster_reg_;
};

} // namespace mutad

#endif
