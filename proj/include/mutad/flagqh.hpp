#ifndef MUTAD_FLAGQH_HPP
#define MUTAD_FLAGQH_HPP

#include <map>
#include <string>
#include <vector>

#include "mutad/abelian.hpp"
#include "mutad/gkm.hpp"
#include "mutad/report.hpp"

namespace mutad {

// S_hi / S_lo with 0 <= lo <= hi <= n+1. lo == hi is the scalar 1 and
// lo == 0 is the tautological bundle S_hi.
struct ChernSpec {
    int lo = 0, hi = 0;
    bool scalar() const { return lo == hi; }
    bool operator<(const ChernSpec& o) const { return std::tie(lo, hi) < std::tie(o.lo, o.hi); }
    bool operator==(const ChernSpec& o) const { return lo == o.lo && hi == o.hi; }
    std::string to_string() const;
};

struct RelationInstance {
    std::string id;           // special1, special2, node1, cluster1, node2a,
                              // node2b, node3a, node3b, node3c, node4, tautquot
    std::vector<int> idx;
};

// Verifier for the quantum cohomological exchange relations, working on
// omega-multiplied representatives in the abelianized ring.
class FlagQH {
public:
    explicit FlagQH(const std::vector<long long>& N);

    const FlagRing& ring() const { return ring_; }

    MPoly lift_tautological(int k) const;
    MPoly lift_quotient(int lo, int hi) const;
    MPoly lift_quotient_standard(int lo, int hi) const;  // checked against the reduce route
    MPoly lift(const ChernSpec& s) const;

    // R(spec): classical normal form of lift * omega, the canonical
    // omega-multiplied representative of the class itself.
    const MPoly& omega_form(const ChernSpec& s);

    // zeta(spec): a representative whose quantum product with omega equals
    // omega_form(spec). Certified on construction; quantum corrections of
    // zeta * omega must cancel exactly, otherwise the pair products below
    // would not compute the small quantum product of the flag variety.
    const MPoly& quantum_lift(const ChernSpec& s);

    // Normal form (with Novikov specialization) of the omega-multiplied
    // quantum product of the listed classes: zeta's for all factors but the
    // last, which enters through its classical omega-form.
    MPoly product_omega(const std::vector<ChernSpec>& factors);
    MPoly pair_product_omega(const ChernSpec& a, const ChernSpec& b);

    struct RelationTerm {
        Rat coeff = 1;
        std::vector<int> q_levels;  // flag Novikov factors q_k, with multiplicity
        ChernSpec a, b;
    };
    struct Relation {
        std::vector<RelationTerm> lhs, rhs;
        bool classical_only = false;
    };
    Relation build_relation(const RelationInstance& inst) const;

    VerificationReport verify_relation(const RelationInstance& inst);
    // q -> 0 limit, checked equivariantly at every fixed point of the flag
    // variety and against the abelian classical route.
    VerificationReport localization_cross_check(const RelationInstance& inst);

    // All valid index tuples of an identity on this shape.
    std::vector<RelationInstance> instances_of(const std::string& id) const;

private:
    MPoly side_value(const std::vector<RelationTerm>& terms);
    MPoly classical_side_value(const std::vector<RelationTerm>& terms) const;
    FlagRing ring_;
    EquivVars ev_;
    std::map<ChernSpec, MPoly> omega_forms_;
    std::map<ChernSpec, MPoly> zetas_;
};

} // namespace mutad

#endif
