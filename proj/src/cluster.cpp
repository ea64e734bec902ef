#include "mutad/cluster.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace mutad {

LaurentRat LaurentRat::from_poly(const MPoly& p) {
    LaurentRat r{p, Mono::one(p.registry()->size())};
    r.normalize();
    return r;
}

LaurentRat LaurentRat::variable(RegistryPtr reg, int var) {
    return from_poly(MPoly::variable(reg, var));
}

void LaurentRat::normalize() {
    if (num.is_zero()) {
        den = Mono::one(num.registry() ? num.registry()->size() : den.e.size());
        return;
    }
    Mono content = num.content_monomial();
    Mono g = content;
    for (size_t i = 0; i < g.e.size(); ++i) g.e[i] = std::min(g.e[i], den.e[i]);
    g.deg = 0;
    for (auto v : g.e) g.deg += v;
    if (g.deg == 0) return;
    den = Mono::div(den, g);
    MPoly reduced(num.registry());
    for (auto& [m, c] : num.terms()) reduced.add_term(Mono::div(m, g), c);
    num = reduced;
}

LaurentRat LaurentRat::mul(const LaurentRat& o) const {
    LaurentRat r{num * o.num, Mono::mul(den, o.den)};
    r.normalize();
    return r;
}

LaurentRat LaurentRat::pow(int k) const {
    if (k < 0) throw internal_error("LaurentRat::pow negative exponent");
    LaurentRat acc = from_poly(MPoly::constant(num.registry(), 1));
    for (int i = 0; i < k; ++i) acc = acc.mul(*this);
    return acc;
}

LaurentRat LaurentRat::add(const LaurentRat& o) const {
    Mono lcm = den;
    for (size_t i = 0; i < lcm.e.size(); ++i) lcm.e[i] = std::max(lcm.e[i], o.den.e[i]);
    lcm.deg = 0;
    for (auto v : lcm.e) lcm.deg += v;
    MPoly n = num.mul_term(Rat(1), Mono::div(lcm, den)) + o.num.mul_term(Rat(1), Mono::div(lcm, o.den));
    LaurentRat r{n, lcm};
    r.normalize();
    return r;
}

LaurentRat LaurentRat::div(const LaurentRat& o) const {
    if (o.num.is_zero()) throw internal_error("LaurentRat division by zero");
    // (num/den) / (o.num/o.den): split o.num into its monomial content times a
    // content-free polynomial; the latter must divide exactly.
    Mono mc = o.num.content_monomial();
    MPoly opoly(num.registry());
    for (auto& [m, c] : o.num.terms()) opoly.add_term(Mono::div(m, mc), c);
    MPoly quot;
    if (!num.try_divide(opoly, quot))
        throw internal_error("cluster exchange produced a non-Laurent quotient");
    LaurentRat r{quot.mul_term(Rat(1), o.den), Mono::mul(den, mc)};
    r.normalize();
    return r;
}

std::string LaurentRat::key() const {
    std::ostringstream os;
    os << num.to_string() << " / ";
    bool any = false;
    for (size_t i = 0; i < den.e.size(); ++i) {
        if (den.e[i] == 0) continue;
        if (any) os << "*";
        any = true;
        os << num.registry()->name(static_cast<int>(i));
        if (den.e[i] > 1) os << "^" << static_cast<int>(den.e[i]);
    }
    if (!any) os << "1";
    return os.str();
}

std::vector<int> LaurentRat::denominator_vector() const {
    std::vector<int> v(den.e.begin(), den.e.end());
    return v;
}

bool LaurentRat::positive_numerator() const {
    for (auto& [m, c] : num.terms()) {
        if (c <= 0) return false;
        if (boost::multiprecision::denominator(c) != 1) return false;
    }
    return true;
}

RegistryPtr cluster_registry(int n) {
    auto reg = std::make_shared<VarRegistry>();
    for (int i = 1; i <= n + 1; ++i) reg->add("x" + std::to_string(i));
    return reg;
}

Seed Seed::initial(int n, const std::vector<long long>& N, RegistryPtr reg) {
    Seed s;
    s.qp = DecoratedQP::initial_linear(n, N);
    for (int i = 1; i <= n + 1; ++i) s.vars.emplace(i, LaurentRat::variable(reg, i - 1));
    return s;
}

std::string Seed::canonical_key() const {
    std::vector<int> gauge = qp.gauge_ids();
    std::sort(gauge.begin(), gauge.end());
    std::vector<int> perm(gauge.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::map<int, int> relabel;
        for (size_t i = 0; i < gauge.size(); ++i) relabel[gauge[perm[i]]] = static_cast<int>(i) + 1;
        relabel[qp.frozen] = qp.n + 1;
        std::ostringstream os;
        for (int i = 1; i <= qp.n + 1; ++i) {
            int orig = -1;
            for (auto& [o, nn] : relabel)
                if (nn == i) orig = o;
            const Interval& iv = qp.interval.at(orig);
            os << iv.lo << ":" << iv.hi << ":" << (orig == qp.frozen ? 0 : qp.sign.at(orig)) << ":"
               << vars.at(orig).key() << ";";
        }
        std::vector<std::array<int, 3>> arr;
        for (auto& [uv, m] : qp.arrows) arr.push_back({relabel.at(uv.first), relabel.at(uv.second), m});
        std::sort(arr.begin(), arr.end());
        for (auto& a : arr) os << a[0] << ">" << a[1] << "x" << a[2] << ";";
        std::string enc = os.str();
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Seed seed_mutate(const Seed& s, int v) {
    if (!s.qp.is_gauge(v)) throw input_error("frozen node");
    Seed r = s;
    r.qp = mutate_quiver(s.qp, v);

    RegistryPtr reg = s.vars.begin()->second.num.registry();
    LaurentRat in_term = LaurentRat::from_poly(MPoly::constant(reg, 1));
    LaurentRat out_term = in_term;
    for (auto& [uv, m] : s.qp.arrows) {
        if (uv.second == v) in_term = in_term.mul(s.vars.at(uv.first).pow(m));
        if (uv.first == v) out_term = out_term.mul(s.vars.at(uv.second).pow(m));
    }
    r.vars[v] = in_term.add(out_term).div(s.vars.at(v));
    return r;
}

ClusterEnumeration enumerate_cluster_variables(const Seed& initial, size_t cap) {
    ClusterEnumeration out;
    std::map<std::string, Seed> seen;
    std::deque<Seed> frontier{initial};
    seen.emplace(initial.canonical_key(), initial);

    std::map<std::string, LaurentRat> vars;
    for (auto& [node, var] : initial.vars) vars.emplace(var.key(), var);

    while (!frontier.empty()) {
        Seed s = frontier.front();
        frontier.pop_front();
        std::string skey = s.canonical_key();
        for (int v : s.qp.gauge_ids()) {
            Seed m = seed_mutate(s, v);
            std::string mkey = m.canonical_key();
            out.seed_graph[skey].insert(mkey);
            out.seed_graph[mkey].insert(skey);
            vars.emplace(m.vars.at(v).key(), m.vars.at(v));
            if (seen.count(mkey)) continue;
            if (seen.size() >= cap) throw input_error("not finite type within cap");
            seen.emplace(mkey, m);
            frontier.push_back(m);
        }
    }
    for (auto& [k, s] : seen) out.seeds.push_back(s);
    for (auto& [k, v] : vars) out.variables.push_back(v);
    return out;
}

} // namespace mutad
