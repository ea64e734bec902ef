#include "mutad/flagqh.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "mutad/symfun.hpp"

namespace mutad {

std::string ChernSpec::to_string() const {
    if (scalar()) return "1";
    if (lo == 0) return "S" + std::to_string(hi);
    return "S" + std::to_string(hi) + "/S" + std::to_string(lo);
}

FlagQH::FlagQH(const std::vector<long long>& N) : ring_(N) {
    ev_.reg = ring_.reg();
    ev_.t = ring_.t_var();
    for (long long j = 1; j <= ring_.N_of(ring_.n() + 1); ++j)
        ev_.lam.push_back(ring_.lambda_var(static_cast<int>(j)));
}

MPoly FlagQH::lift_tautological(int k) const {
    if (k < 1 || k > ring_.n() + 1) throw input_error("tautological index out of range");
    MPoly r = MPoly::constant(ring_.reg(), 1);
    for (int j = 1; j <= ring_.N_of(k); ++j) r *= ring_.t() - ring_.x(k, j);
    return r;
}

MPoly FlagQH::lift_quotient(int lo, int hi) const {
    if (lo < 0 || hi > ring_.n() + 1 || lo > hi) throw input_error("quotient indices out of range");
    long long D = ring_.N_of(hi) - ring_.N_of(lo);
    std::vector<int> xhi = (hi >= 1) ? ring_.x_block(hi) : std::vector<int>{};
    std::vector<int> xlo = (lo >= 1) ? ring_.x_block(lo) : std::vector<int>{};
    MPoly r = MPoly::zero(ring_.reg());
    for (long long a = 0; a <= D; ++a)
        for (long long b = 0; b + a <= D; ++b) {
            MPoly term = MPoly::variable(ring_.reg(), ring_.t_var(), static_cast<int>(a));
            term *= elementary_sym_neg(ring_.reg(), static_cast<int>(b), xhi);
            term *= complete_sym(ring_.reg(), static_cast<int>(D - a - b), xlo);
            r += term;
        }
    return r;
}

MPoly FlagQH::lift(const ChernSpec& s) const {
    if (s.scalar()) return MPoly::constant(ring_.reg(), 1);
    return lift_quotient(s.lo, s.hi);
}

MPoly FlagQH::lift_quotient_standard(int lo, int hi) const {
    if (lo < 1 || hi > ring_.n() + 1 || lo >= hi)
        throw input_error("standard form needs 1 <= lo < hi <= n+1");
    const int n = ring_.n();
    long long D = ring_.N_of(hi) - ring_.N_of(lo);
    // The determinant chain absorbs the Weyl factors of blocks lo..chain_end;
    // the lambda block has no Weyl factor, so the chain stops at n.
    int chain_end = (hi <= n) ? hi : n;
    MPoly total = MPoly::zero(ring_.reg());
    for (long long a = 0; a <= D; ++a)
        for (long long b = 0; b + a <= D; ++b) {
            MPoly eb = elementary_sym_neg(ring_.reg(), static_cast<int>(b),
                                          (hi >= 1) ? ring_.x_block(hi) : std::vector<int>{});
            if (eb.is_zero()) continue;
            long long top = ring_.N_of(hi) - a - b - 1;
            // m_i choices for i = lo..chain_end-1
            std::vector<long long> m(std::max(0, chain_end - lo), 0);
            MPoly sum = MPoly::zero(ring_.reg());
            std::function<void(int, int, MPoly)> rec = [&](int i, int parity, MPoly acc) {
                if (acc.is_zero()) return;
                if (i == chain_end) {
                    // terminal determinant at block chain_end
                    std::vector<long> exps;
                    if (lo == chain_end) {
                        for (long long e = 0; e + 1 <= ring_.N_of(lo) - 1; ++e) exps.push_back(e);
                        exps.push_back(static_cast<long>(top));
                    } else {
                        long long prev = m[chain_end - lo - 1];
                        for (long long e = 0; e < ring_.N_of(chain_end); ++e)
                            if (e != prev) exps.push_back(e);
                        exps.push_back(static_cast<long>(top));
                    }
                    MPoly dd = power_det(ring_.reg(), exps, ring_.x_block(chain_end));
                    MPoly term = acc * dd;
                    if (parity % 2) term = -term;
                    sum += term;
                    return;
                }
                // block i contributes D^{(prefix, m_i)}(x^(i)) and links to i+1
                for (long long mi = 0; mi < ring_.N_of(i + 1); ++mi) {
                    m[i - lo] = mi;
                    std::vector<long> exps;
                    if (i == lo) {
                        for (long long e = 0; e + 2 <= ring_.N_of(lo); ++e) exps.push_back(e);
                        exps.push_back(mi);
                    } else {
                        long long prev = m[i - lo - 1];
                        for (long long e = 0; e < ring_.N_of(i); ++e)
                            if (e != prev) exps.push_back(e);
                        exps.push_back(mi);
                    }
                    MPoly dd = power_det(ring_.reg(), exps, ring_.x_block(i));
                    if (dd.is_zero()) continue;
                    int par = parity + static_cast<int>(ring_.N_of(i + 1) - mi - 1);
                    rec(i + 1, par, acc * dd);
                }
            };
            if (lo == chain_end) {
                rec(chain_end, 0, MPoly::constant(ring_.reg(), 1));
            } else {
                rec(lo, 0, MPoly::constant(ring_.reg(), 1));
            }
            MPoly tpow = MPoly::variable(ring_.reg(), ring_.t_var(), static_cast<int>(a));
            total += tpow * eb * sum;
        }
    // untouched Weyl factors
    for (int j = 1; j <= n; ++j) {
        if (j >= lo && j <= chain_end) continue;
        total *= ring_.omega_k(j);
    }
    if (total != ring_.classical_reduce(lift_quotient(lo, hi) * ring_.omega()))
        throw internal_error("standard quotient form disagrees with the reduce route");
    return total;
}

const MPoly& FlagQH::omega_form(const ChernSpec& s) {
    auto it = omega_forms_.find(s);
    if (it != omega_forms_.end()) return it->second;
    MPoly r = ring_.classical_reduce(lift(s) * ring_.omega());
    return omega_forms_.emplace(s, std::move(r)).first->second;
}

const MPoly& FlagQH::quantum_lift(const ChernSpec& s) {
    auto it = zetas_.find(s);
    if (it != zetas_.end()) return it->second;

    MPoly z(ring_.reg());
    if (s.scalar()) {
        z = MPoly::constant(ring_.reg(), 1);
    } else if (s.lo == 0 || s.hi == s.lo + 1) {
        z = lift(s);
    } else {
        // Quantum-corrected lift, built from short quotients:
        //   zeta(lo,hi) = zeta(lo,lo+1)*zeta(lo+1,hi) - (-1)^(N_{lo+1}+N_lo) q_{lo+1} zeta(lo+2,hi)
        const MPoly& a = quantum_lift(ChernSpec{s.lo, s.lo + 1});
        const MPoly& b = quantum_lift(ChernSpec{s.lo + 1, s.hi});
        const MPoly& c = quantum_lift(ChernSpec{s.lo + 2, s.hi});
        Rat sgn = ((ring_.N_of(s.lo + 1) + ring_.N_of(s.lo)) % 2) ? -1 : 1;
        z = a * b - sgn * ring_.qf(s.lo + 1) * c;
    }
    // Certification: the quantum product with omega must reproduce the
    // classical omega-form on the nose.
    MPoly check = ring_.specialize_novikov(ring_.quantum_reduce(z * ring_.omega()));
    if (check != omega_form(s))
        throw internal_error("quantum lift certification failed for " + s.to_string());
    return zetas_.emplace(s, std::move(z)).first->second;
}

MPoly FlagQH::product_omega(const std::vector<ChernSpec>& factors) {
    if (factors.empty()) return ring_.specialize_novikov(ring_.classical_reduce(ring_.omega()));
    MPoly acc = MPoly::constant(ring_.reg(), 1);
    for (size_t i = 0; i + 1 < factors.size(); ++i) acc *= quantum_lift(factors[i]);
    acc *= omega_form(factors.back());
    return ring_.specialize_novikov(ring_.quantum_reduce(acc));
}

MPoly FlagQH::pair_product_omega(const ChernSpec& a, const ChernSpec& b) {
    return product_omega({a, b});
}

namespace {

int pm(long long e) { return (e % 2) ? -1 : 1; }

} // namespace

FlagQH::Relation FlagQH::build_relation(const RelationInstance& inst) const {
    const int top = ring_.n() + 1;
    auto N = [&](int k) { return ring_.N_of(k); };
    auto q_range = [&](int from, int to) {  // prefactor prod_{a=from}^{to} (-1)^(N_a+N_{a-1}) q_a
        RelationTerm t;
        for (int a = from; a <= to; ++a) {
            t.coeff *= pm(N(a) + N(a - 1));
            t.q_levels.push_back(a);
        }
        return t;
    };
    auto need = [&](bool ok, const std::string& why) {
        if (!ok) throw input_error("invalid relation indices: " + why);
    };

    Relation r;
    const auto& ix = inst.idx;
    if (inst.id == "special1") {
        need(ix.size() == 2, "special1 takes (k,l)");
        int k = ix[0], l = ix[1];
        need(1 <= k && k < l && l <= top, "need 1 <= k < l <= n+1");
        r.lhs.push_back({Rat(1), {}, ChernSpec{0, k}, ChernSpec{k, l}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{0, l}, ChernSpec{0, 0}});
        RelationTerm t = q_range(k, k);
        t.a = ChernSpec{0, k - 1};
        t.b = ChernSpec{k + 1 > l ? l : k + 1, l};
        r.rhs.push_back(t);
    } else if (inst.id == "special2" || inst.id == "node2b") {
        need(ix.size() == 2, "special2 takes (m,k)");
        int m = ix[0], k = ix[1];
        need(1 <= k && k < m && m <= top, "need 1 <= k < m <= n+1");
        r.lhs.push_back({Rat(1), {}, ChernSpec{k - 1, k}, ChernSpec{k, m}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{k - 1, m}, ChernSpec{0, 0}});
        RelationTerm t = q_range(k, k);
        t.a = ChernSpec{k + 1, m};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "node1") {
        need(ix.size() == 1, "node1 takes (k)");
        int k = ix[0];
        need(1 <= k && k + 1 <= top, "need 1 <= k <= n");
        r.lhs.push_back({Rat(1), {}, ChernSpec{k - 1, k}, ChernSpec{k, k + 1}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{k - 1, k + 1}, ChernSpec{0, 0}});
        RelationTerm t = q_range(k, k);
        t.a = ChernSpec{0, 0};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "cluster1") {
        need(ix.size() == 2, "cluster1 takes (k,p)");
        int k = ix[0], p = ix[1];
        need(0 <= p && p < k && k + 1 <= top, "need 0 <= p < k <= n");
        r.lhs.push_back({Rat(1), {}, ChernSpec{p, k}, ChernSpec{p + 1, k + 1}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{p, k + 1}, ChernSpec{p + 1, k}});
        RelationTerm t = q_range(p + 1, k);
        t.a = ChernSpec{0, 0};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "node2a") {
        need(ix.size() == 2, "node2a takes (k,l)");
        int k = ix[0], l = ix[1];
        need(0 <= l && l < k && k + 1 <= top, "need 0 <= l < k <= n");
        r.lhs.push_back({Rat(1), {}, ChernSpec{l, k}, ChernSpec{k, k + 1}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{l, k + 1}, ChernSpec{0, 0}});
        RelationTerm t = q_range(k, k);
        t.a = ChernSpec{l, k - 1};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "node3a") {
        need(ix.size() == 3, "node3a takes (k,p,l)");
        int k = ix[0], p = ix[1], l = ix[2];
        need(0 <= l && l < p && p < k && k + 1 <= top, "need 0 <= l < p < k <= n");
        r.lhs.push_back({Rat(1), {}, ChernSpec{l, k}, ChernSpec{p + 1, k + 1}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{l, k + 1}, ChernSpec{p + 1, k}});
        RelationTerm t = q_range(p + 1, k);
        t.a = ChernSpec{l, p};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "node3b") {
        need(ix.size() == 3, "node3b takes (m,k,l)");
        int m = ix[0], k = ix[1], l = ix[2];
        need(0 <= l && l < k && k < m && m <= top, "need 0 <= l < k < m <= n+1");
        r.lhs.push_back({Rat(1), {}, ChernSpec{l, k}, ChernSpec{k, m}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{l, m}, ChernSpec{0, 0}});
        RelationTerm t = q_range(k, k);
        t.a = ChernSpec{k + 1, m};
        t.b = ChernSpec{l, k - 1};
        r.rhs.push_back(t);
    } else if (inst.id == "node3c") {
        need(ix.size() == 3, "node3c takes (m,k,l)");
        int m = ix[0], k = ix[1], l = ix[2];
        need(0 <= l && l < k && k < m && m <= top, "need 0 <= l < k < m <= n+1");
        r.lhs.push_back({Rat(1), {}, ChernSpec{l, k}, ChernSpec{l + 1, m}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{l, m}, ChernSpec{l + 1, k}});
        RelationTerm t = q_range(l + 1, k);
        t.a = ChernSpec{k + 1, m};
        t.b = ChernSpec{0, 0};
        r.rhs.push_back(t);
    } else if (inst.id == "node4") {
        need(ix.size() == 4, "node4 takes (m,k,p,l)");
        int m = ix[0], k = ix[1], p = ix[2], l = ix[3];
        need(0 <= l && l < p && p < k && k < m && m <= top, "need 0 <= l < p < k < m <= n+1");
        r.lhs.push_back({Rat(1), {}, ChernSpec{l, k}, ChernSpec{p + 1, m}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{l, m}, ChernSpec{p + 1, k}});
        RelationTerm t = q_range(p + 1, k);
        t.a = ChernSpec{k + 1, m};
        t.b = ChernSpec{l, p};
        r.rhs.push_back(t);
    } else if (inst.id == "tautquot") {
        need(ix.size() == 2, "tautquot takes (k,l)");
        int k = ix[0], l = ix[1];
        need(0 <= k && k < l && l <= top, "need 0 <= k < l <= n+1");
        r.classical_only = true;
        r.lhs.push_back({Rat(1), {}, ChernSpec{0, k}, ChernSpec{k, l}});
        r.rhs.push_back({Rat(1), {}, ChernSpec{0, l}, ChernSpec{0, 0}});
    } else {
        throw input_error("unknown relation id: " + inst.id);
    }
    return r;
}

MPoly FlagQH::side_value(const std::vector<RelationTerm>& terms) {
    MPoly acc = MPoly::zero(ring_.reg());
    for (const auto& t : terms) {
        MPoly val = pair_product_omega(t.a, t.b) * t.coeff;
        for (int lvl : t.q_levels) val *= ring_.qf(lvl);
        acc += val;
    }
    return acc;
}

MPoly FlagQH::classical_side_value(const std::vector<RelationTerm>& terms) const {
    MPoly acc = MPoly::zero(ring_.reg());
    for (const auto& t : terms) {
        if (!t.q_levels.empty()) continue;  // q -> 0
        acc += ring_.classical_reduce(lift(t.a) * lift(t.b) * ring_.omega()) * t.coeff;
    }
    return acc;
}

VerificationReport FlagQH::verify_relation(const RelationInstance& inst) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = inst.id;
    for (int i = 1; i <= ring_.n() + 1; ++i) rep.shape.push_back(ring_.N_of(i));
    rep.indices = inst.idx;

    {
        std::string blob = inst.id;
        for (long long x : rep.shape) blob += "," + std::to_string(x);
        for (int x : inst.idx) blob += ";" + std::to_string(x);
        rep.diagnostics["inputs_hash"] = std::to_string(std::hash<std::string>{}(blob));
    }
    Relation rel = build_relation(inst);
    MPoly L, R;
    if (rel.classical_only) {
        L = classical_side_value(rel.lhs);
        R = classical_side_value(rel.rhs);
    } else {
        L = side_value(rel.lhs);
        R = side_value(rel.rhs);
    }
    rep.status = (L == R) ? "equal" : "unequal";
    rep.diagnostics["lhs_terms"] = std::to_string(L.term_count());
    rep.diagnostics["rhs_terms"] = std::to_string(R.term_count());
    rep.diagnostics["lhs_degree"] = std::to_string(L.weighted_degree());
    rep.diagnostics["rhs_degree"] = std::to_string(R.weighted_degree());
    if (rep.status == "unequal")
        rep.diagnostics["difference_terms"] = std::to_string((L - R).term_count());
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport FlagQH::localization_cross_check(const RelationInstance& inst) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = inst.id + " (classical cross-route)";
    for (int i = 1; i <= ring_.n() + 1; ++i) rep.shape.push_back(ring_.N_of(i));
    rep.indices = inst.idx;

    Relation rel = build_relation(inst);
    bool abelian_equal = classical_side_value(rel.lhs) == classical_side_value(rel.rhs);

    std::vector<long long> shape;
    for (int i = 1; i <= ring_.n() + 1; ++i) shape.push_back(ring_.N_of(i));
    DecoratedQP flag = DecoratedQP::initial_linear(ring_.n(), shape);
    std::vector<FixedPoint> points = enumerate_fixed_points(flag);

    auto side_at = [&](const std::vector<RelationTerm>& terms, const FixedPoint& p) {
        MPoly acc = MPoly::zero(ring_.reg());
        for (const auto& t : terms) {
            if (!t.q_levels.empty()) continue;
            MPoly v = restrict_flag_quotient(ev_, flag, p, t.a.lo, t.a.hi) *
                      restrict_flag_quotient(ev_, flag, p, t.b.lo, t.b.hi);
            acc += v * t.coeff;
        }
        return acc;
    };
    bool local_equal = true;
    for (const FixedPoint& p : points)
        if (side_at(rel.lhs, p) != side_at(rel.rhs, p)) local_equal = false;

    bool consistent = (abelian_equal == local_equal);
    rep.status = (abelian_equal && local_equal && consistent) ? "equal" : "unequal";
    rep.diagnostics["abelian_route"] = abelian_equal ? "equal" : "unequal";
    rep.diagnostics["localization_route"] = local_equal ? "equal" : "unequal";
    rep.diagnostics["routes_consistent"] = consistent ? "yes" : "no";
    rep.diagnostics["fixed_points"] = std::to_string(points.size());
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<RelationInstance> FlagQH::instances_of(const std::string& id) const {
    const int top = ring_.n() + 1;
    std::vector<RelationInstance> out;
    if (id == "special1" || id == "tautquot") {
        for (int k = (id == "tautquot" ? 0 : 1); k <= top; ++k)
            for (int l = k + 1; l <= top; ++l) out.push_back({id, {k, l}});
    } else if (id == "special2" || id == "node2b") {
        for (int k = 1; k <= top; ++k)
            for (int m = k + 1; m <= top; ++m) out.push_back({id, {m, k}});
    } else if (id == "node1") {
        for (int k = 1; k <= top - 1; ++k) out.push_back({id, {k}});
    } else if (id == "cluster1") {
        for (int k = 1; k <= top - 1; ++k)
            for (int p = 0; p < k; ++p) out.push_back({id, {k, p}});
    } else if (id == "node2a") {
        for (int k = 1; k <= top - 1; ++k)
            for (int l = 0; l < k; ++l) out.push_back({id, {k, l}});
    } else if (id == "node3a") {
        for (int k = 1; k <= top - 1; ++k)
            for (int p = 1; p < k; ++p)
                for (int l = 0; l < p; ++l) out.push_back({id, {k, p, l}});
    } else if (id == "node3b" || id == "node3c") {
        for (int m = 1; m <= top; ++m)
            for (int k = 1; k < m; ++k)
                for (int l = 0; l < k; ++l) out.push_back({id, {m, k, l}});
    } else if (id == "node4") {
        for (int m = 1; m <= top; ++m)
            for (int k = 1; k < m; ++k)
                for (int p = 1; p < k; ++p)
                    for (int l = 0; l < p; ++l) out.push_back({id, {m, k, p, l}});
    } else {
        throw input_error("unknown relation id: " + id);
    }
    return out;
}

} // namespace mutad
