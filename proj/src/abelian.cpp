#include "mutad/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "mutad/symfun.hpp"

namespace mutad {

FlagRing::FlagRing(const std::vector<long long>& N) {
    if (N.size() < 2) throw input_error("flag shape needs at least N_1 < N_2");
    for (size_t i = 0; i + 1 < N.size(); ++i)
        if (N[i] >= N[i + 1]) throw input_error("flag shape must be strictly increasing");
    if (N[0] <= 0) throw input_error("flag shape must be positive");
    n_ = static_cast<int>(N.size()) - 1;
    N_.assign(n_ + 2, 0);
    for (int k = 1; k <= n_ + 1; ++k) N_[k] = N[k - 1];

    auto reg = std::make_shared<VarRegistry>();
    t_ = reg->add("t", 1);
    xv_.assign(n_ + 1, {});
    for (int k = 1; k <= n_; ++k)
        for (int i = 1; i <= N_[k]; ++i)
            xv_[k].push_back(reg->add("x" + std::to_string(k) + "_" + std::to_string(i), 1));
    lamv_.clear();
    for (int j = 1; j <= N_[n_ + 1]; ++j) lamv_.push_back(reg->add("lam" + std::to_string(j), 1));
    qav_.assign(n_ + 1, {});
    qfv_.assign(n_ + 1, -1);
    for (int k = 1; k <= n_; ++k) {
        int qdeg = static_cast<int>(N_[k + 1] - N_[k - 1]);
        for (int i = 1; i <= N_[k]; ++i)
            qav_[k].push_back(reg->add("qa" + std::to_string(k) + "_" + std::to_string(i), qdeg));
        qfv_[k] = reg->add("q" + std::to_string(k), qdeg);
    }
    reg_ = reg;

    rules_.assign(reg_->size(), std::nullopt);
    for (int k = 1; k <= n_; ++k) {
        int bound = static_cast<int>(N_[k + 1]);
        for (int i = 1; i <= N_[k]; ++i) {
            int var = x_var(k, i);
            // x^bound - prod_j (x - x^(k+1)_j) collects the lower-order terms.
            MPoly prod = MPoly::constant(reg_, 1);
            for (int j = 1; j <= N_[k + 1]; ++j) prod *= x(k, i) - x(k + 1, j);
            MPoly classical = MPoly::variable(reg_, var, bound) - prod;
            MPoly corr = MPoly::constant(reg_, 1);
            for (int l = 1; l <= N_[k - 1]; ++l) corr *= x(k - 1, l) - x(k, i);
            MPoly quantum = classical + qa(k, i) * corr;
            // the Novikov degree must equal the gap between the two sides
            if (reg_->degree(qa_var(k, i)) != bound - corr.total_degree())
                throw internal_error("Novikov degree differs from the relation gap");
            rules_[var] = Rule{var, bound, std::move(classical), std::move(quantum)};
        }
    }

    omega_ = MPoly::constant(reg_, 1);
    for (int k = 1; k <= n_; ++k) omega_ *= omega_k(k);
}

long long FlagRing::N_of(int k) const {
    if (k < 0 || k > n_ + 1) throw internal_error("N index out of range");
    return N_[k];
}

int FlagRing::lambda_var(int j) const { return lamv_.at(j - 1); }

int FlagRing::x_var(int k, int i) const {
    if (k == n_ + 1) return lambda_var(i);
    return xv_.at(k).at(i - 1);
}

int FlagRing::qa_var(int k, int i) const { return qav_.at(k).at(i - 1); }
int FlagRing::qf_var(int k) const { return qfv_.at(k); }

std::vector<int> FlagRing::x_block(int k) const {
    std::vector<int> v;
    for (int i = 1; i <= N_[k]; ++i) v.push_back(x_var(k, i));
    return v;
}

std::vector<int> FlagRing::all_qa() const {
    std::vector<int> v;
    for (int k = 1; k <= n_; ++k)
        for (int x : qav_[k]) v.push_back(x);
    return v;
}

std::vector<int> FlagRing::all_qf() const {
    std::vector<int> v;
    for (int k = 1; k <= n_; ++k) v.push_back(qfv_[k]);
    return v;
}

MPoly FlagRing::omega_k(int k) const { return vandermonde(reg_, x_block(k)); }

const FlagRing::Rule* FlagRing::rule_for(int var) const {
    const auto& r = rules_.at(var);
    return r ? &*r : nullptr;
}

size_t FlagRing::step_cap() {
    if (const char* env = std::getenv("MUTAD_STEP_CAP")) {
        long long v = std::atoll(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 200'000'000;
}

namespace {

struct Violation {
    int excess;
    Mono mono;
};

} // namespace

MPoly FlagRing::reduce(const MPoly& p, bool quantum, Strategy strategy, uint64_t rng_seed,
                       ReduceStats* stats) const {
    if (p.is_zero()) return p;
    if (p.registry() != reg_) throw internal_error("polynomial from another registry");

    MPoly work = p;
    size_t steps = 0;
    const size_t cap = step_cap();
    std::mt19937_64 rng(rng_seed);

    auto find_violating_var = [&](const Mono& m) -> std::pair<int, int> {
        int best_var = -1, best_excess = 0;
        for (size_t v = 0; v < m.e.size(); ++v) {
            const Rule* r = rule_for(static_cast<int>(v));
            if (!r) continue;
            int ex = static_cast<int>(m.e[v]) - r->bound;
            if (ex >= 0 && (best_var < 0 || ex > best_excess)) {
                best_var = static_cast<int>(v);
                best_excess = ex;
            }
        }
        return {best_var, best_excess};
    };

    // Ordering note: with the registry laid out as t, x-blocks by level, then
    // lambda, then Novikov variables, every rewrite replaces a monomial by
    // strictly grlex-smaller ones, so a worklist never revisits settled terms.
    auto apply_rule = [&](const Mono& m) {
        auto it = work.terms().find(m);
        if (it == work.terms().end()) return std::vector<Mono>{};
        Rat coeff = it->second;
        auto [var, excess] = find_violating_var(m);
        if (var < 0) return std::vector<Mono>{};
        const Rule* r = rule_for(var);
        Mono cof = m;
        cof.e[var] = static_cast<uint16_t>(cof.e[var] - r->bound);
        cof.deg -= r->bound;
        const MPoly& rhs = quantum ? r->quantum : r->classical;

        work.add_term(m, -coeff);  // erase this term
        std::vector<Mono> touched;
        for (auto& [rm, rc] : rhs.terms()) {
            Mono nm = Mono::mul(cof, rm);
            work.add_term(nm, rc * coeff);
            touched.push_back(nm);
        }
        if (++steps > cap) throw input_error("non-termination: rewrite step cap exceeded");
        return touched;
    };

    if (strategy == Strategy::Deterministic) {
        // Highest over-degree excess first, then grlex-largest monomial.
        auto cmp = [](const Violation& a, const Violation& b) {
            if (a.excess != b.excess) return a.excess > b.excess;
            return MonoGrlexDesc{}(a.mono, b.mono);
        };
        std::set<Violation, decltype(cmp)> queue(cmp);
        auto enqueue = [&](const Mono& m) {
            auto [var, excess] = find_violating_var(m);
            if (var >= 0) queue.insert(Violation{excess, m});
        };
        for (auto& [m, c] : work.terms()) enqueue(m);
        while (!queue.empty()) {
            Violation v = *queue.begin();
            queue.erase(queue.begin());
            for (const Mono& nm : apply_rule(v.mono)) enqueue(nm);
        }
    } else {
        while (true) {
            std::vector<Mono> violating;
            for (auto& [m, c] : work.terms()) {
                auto [var, excess] = find_violating_var(m);
                if (var >= 0) violating.push_back(m);
            }
            if (violating.empty()) break;
            size_t pick = rng() % violating.size();
            apply_rule(violating[pick]);
        }
    }

    if (stats) stats->steps = steps;
    return work;
}

MPoly FlagRing::classical_reduce(const MPoly& p, ReduceStats* stats) const {
    return reduce(p, false, Strategy::Deterministic, 0, stats);
}

MPoly FlagRing::quantum_reduce(const MPoly& p, ReduceStats* stats) const {
    return reduce(p, true, Strategy::Deterministic, 0, stats);
}

MPoly FlagRing::quantum_product(const MPoly& a, const MPoly& b) const {
    return quantum_reduce(a * b);
}

MPoly FlagRing::specialize_novikov(const MPoly& p) const {
    MPoly r = p;
    int nv = reg_->size();
    for (int k = 1; k <= n_; ++k) {
        Rat sgn = (N_[k] - 1) % 2 ? Rat(-1) : Rat(1);
        for (int i = 1; i <= N_[k]; ++i)
            r = r.substitute_monomial(qa_var(k, i), sgn, Mono::var(nv, qf_var(k)));
    }
    return r;
}

bool FlagRing::in_normal_form(const MPoly& p) const {
    for (auto& [m, c] : p.terms())
        for (size_t v = 0; v < m.e.size(); ++v) {
            const Rule* r = rule_for(static_cast<int>(v));
            if (r && m.e[v] >= r->bound) return false;
        }
    return true;
}

FlagRing::WeylCheck FlagRing::weyl_check(const MPoly& p) const {
    MPoly nf = quantum_reduce(p);
    WeylCheck res{true, true};
    for (int k = 1; k <= n_; ++k)
        for (int i = 1; i + 1 <= N_[k]; ++i) {
            MPoly swapped = nf.swap_vars(x_var(k, i), x_var(k, i + 1))
                                .swap_vars(qa_var(k, i), qa_var(k, i + 1));
            MPoly back = quantum_reduce(swapped);
            if (back != nf) res.invariant = false;
            if (back != -nf) res.anti_invariant = false;
        }
    return res;
}

} // namespace mutad
