#ifndef MUTAD_ABELIAN_HPP
#define MUTAD_ABELIAN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mutad/mpoly.hpp"

namespace mutad {

// Presentation of the equivariant quantum cohomology of the toric
// abelianization of Fl(N_1,...,N_{n+1}) as a rewriting system: every
// exponent of x^(k)_i ends below N_{k+1} in normal form.
class FlagRing {
public:
    explicit FlagRing(const std::vector<long long>& N);

    int n() const { return n_; }
    long long N_of(int k) const;  // N_0 = 0
    const std::vector<long long>& shape() const { return N_; }
    const RegistryPtr& reg() const { return reg_; }

    int t_var() const { return t_; }
    int lambda_var(int j) const;
    int x_var(int k, int i) const;   // k = n+1 resolves to lambda_var(i)
    int qa_var(int k, int i) const;
    int qf_var(int k) const;
    std::vector<int> x_block(int k) const;
    std::vector<int> all_qa() const;
    std::vector<int> all_qf() const;

    MPoly t() const { return MPoly::variable(reg_, t_); }
    MPoly x(int k, int i) const { return MPoly::variable(reg_, x_var(k, i)); }
    MPoly lambda(int j) const { return MPoly::variable(reg_, lambda_var(j)); }
    MPoly qa(int k, int i) const { return MPoly::variable(reg_, qa_var(k, i)); }
    MPoly qf(int k) const { return MPoly::variable(reg_, qf_var(k)); }

    MPoly omega_k(int k) const;
    const MPoly& omega() const { return omega_; }

    enum class Strategy { Deterministic, Random };

    struct ReduceStats {
        size_t steps = 0;
    };

    MPoly classical_reduce(const MPoly& p, ReduceStats* stats = nullptr) const;
    MPoly quantum_reduce(const MPoly& p, ReduceStats* stats = nullptr) const;
    MPoly reduce(const MPoly& p, bool quantum, Strategy strategy, uint64_t rng_seed,
                 ReduceStats* stats = nullptr) const;

    MPoly quantum_product(const MPoly& a, const MPoly& b) const;
    MPoly specialize_novikov(const MPoly& p) const;
    bool in_normal_form(const MPoly& p) const;

    struct WeylCheck {
        bool invariant = false;
        bool anti_invariant = false;
    };
    // Acts by adjacent transpositions on each block (swapping the matching
    // abelian Novikov variables) and re-reduces.
    WeylCheck weyl_check(const MPoly& p) const;

    static size_t step_cap();  // MUTAD_STEP_CAP or a large default

private:
    struct Rule {
        int var;          // x^(k)_i registry index
        int bound;        // N_{k+1}
        MPoly classical;  // replacement for x^bound
        MPoly quantum;    // classical + q-correction
    };
    const Rule* rule_for(int var) const;

    int n_ = 0;
    std::vector<long long> N_;  // N_[0] = 0
    RegistryPtr reg_;
    int t_ = -1;
    std::vector<std::vector<int>> xv_, qav_;  // [k][i-1]
    std::vector<int> lamv_;
    std::vector<int> qfv_;
    std::vector<std::optional<Rule>> rules_;  // by registry index
    MPoly omega_;
};

} // namespace mutad

#endif
