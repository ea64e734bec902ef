#ifndef MUTAD_MPOLY_HPP
#define MUTAD_MPOLY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mutad/errors.hpp"

namespace mutad {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string rat_to_string(const Rat& r);
Rat rat_pow(const Rat& r, long e);

// Immutable list of variables. Every polynomial carries a pointer to the
// registry it was built against; mixing registries is an internal error.
class VarRegistry {
public:
    int add(const std::string& name, int degree = 1);
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    int degree(int i) const { return degrees_.at(i); }
    int index_of(const std::string& name) const;  // -1 if absent
    bool has(const std::string& name) const { return index_of(name) >= 0; }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::map<std::string, int> index_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

// Dense exponent vector with cached unweighted total degree.
struct Mono {
    std::vector<uint16_t> e;
    int deg = 0;

    static Mono one(int nvars) { return Mono{std::vector<uint16_t>(nvars, 0), 0}; }
    static Mono var(int nvars, int i, int exp = 1);
    static Mono mul(const Mono& a, const Mono& b);
    static bool divides(const Mono& a, const Mono& b);  // a | b
    static Mono div(const Mono& b, const Mono& a);      // b / a, requires divides
    static Mono pow(const Mono& a, long k);
    bool is_one() const { return deg == 0; }
    bool operator==(const Mono& o) const { return e == o.e; }
};

// Graded-lexicographic order, largest monomial first.
struct MonoGrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.deg != b.deg) return a.deg > b.deg;
        return a.e > b.e;
    }
};

class MPoly {
public:
    using TermMap = std::map<Mono, Rat, MonoGrlexDesc>;

    MPoly() = default;
    explicit MPoly(RegistryPtr reg) : reg_(std::move(reg)) {}

    static MPoly zero(RegistryPtr reg) { return MPoly(std::move(reg)); }
    static MPoly constant(RegistryPtr reg, const Rat& c);
    static MPoly variable(RegistryPtr reg, int var, int exp = 1);
    static MPoly term(RegistryPtr reg, const Rat& c, const Mono& m);

    const RegistryPtr& registry() const { return reg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant
    size_t term_count() const { return terms_.size(); }

    // Unweighted total degree of the largest term (-1 for zero).
    int total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.deg; }
    // Weighted by registry degrees; -1 for zero.
    long weighted_degree() const;
    bool is_weighted_homogeneous() const;
    int degree_in(int var) const;

    void add_term(const Mono& m, const Rat& c);

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator*=(const MPoly& o);
    MPoly operator*(const Rat& c) const;
    MPoly& operator*=(const Rat& c);
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(long k) const;
    MPoly mul_term(const Rat& c, const Mono& m) const;

    // Exact multivariate division. Returns false (and leaves q empty) if the
    // division leaves a remainder.
    bool try_divide(const MPoly& divisor, MPoly& quotient) const;
    MPoly divide_exact(const MPoly& divisor, const char* what = "polynomial division") const;

    // Replace `var` by c * m (monomial image). Used for Novikov specialization.
    MPoly substitute_monomial(int var, const Rat& c, const Mono& m) const;
    // Swap two variables in every monomial.
    MPoly swap_vars(int a, int b) const;
    // Keep only terms with zero exponent in all listed vars.
    MPoly drop_terms_with(const std::vector<int>& vars) const;
    // Coefficient polynomial of var^exp (var-exponent removed).
    MPoly coefficient_of(int var, int exp) const;

    Mono content_monomial() const;  // min exponent vector across terms
    std::string to_string() const;

private:
    void check_same(const MPoly& o) const;
    RegistryPtr reg_;
    TermMap terms_;
};

MPoly operator*(const Rat& c, const MPoly& p);

} // namespace mutad

#endif
