#include "mutad/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace mutad {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rat rat_pow(const Rat& r, long e) {
    if (e < 0) {
        if (r == 0) throw internal_error("rat_pow: zero to negative power");
        return Rat(1) / rat_pow(r, -e);
    }
    Rat acc(1), base(r);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

int VarRegistry::add(const std::string& name, int degree) {
    if (index_.count(name)) throw internal_error("duplicate variable " + name);
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    degrees_.push_back(degree);
    index_[name] = id;
    return id;
}

int VarRegistry::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

Mono Mono::var(int nvars, int i, int exp) {
    Mono m = one(nvars);
    m.e.at(i) = static_cast<uint16_t>(exp);
    m.deg = exp;
    return m;
}

Mono Mono::mul(const Mono& a, const Mono& b) {
    Mono r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<uint16_t>(r.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
}

bool Mono::divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Mono Mono::div(const Mono& b, const Mono& a) {
    Mono r = b;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<uint16_t>(r.e[i] - a.e[i]);
    r.deg = b.deg - a.deg;
    return r;
}

Mono Mono::pow(const Mono& a, long k) {
    Mono r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<uint16_t>(r.e[i] * k);
    r.deg = static_cast<int>(a.deg * k);
    return r;
}

MPoly MPoly::constant(RegistryPtr reg, const Rat& c) {
    MPoly p(reg);
    if (c != 0) p.terms_.emplace(Mono::one(reg->size()), c);
    return p;
}

MPoly MPoly::variable(RegistryPtr reg, int var, int exp) {
    MPoly p(reg);
    if (exp == 0) return constant(reg, 1);
    p.terms_.emplace(Mono::var(reg->size(), var, exp), Rat(1));
    return p;
}

MPoly MPoly::term(RegistryPtr reg, const Rat& c, const Mono& m) {
    MPoly p(reg);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw internal_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

long MPoly::weighted_degree() const {
    long best = -1;
    for (auto& [m, c] : terms_) {
        long d = 0;
        for (size_t i = 0; i < m.e.size(); ++i) d += static_cast<long>(m.e[i]) * reg_->degree(static_cast<int>(i));
        best = std::max(best, d);
    }
    return best;
}

bool MPoly::is_weighted_homogeneous() const {
    long seen = -1;
    for (auto& [m, c] : terms_) {
        long d = 0;
        for (size_t i = 0; i < m.e.size(); ++i) d += static_cast<long>(m.e[i]) * reg_->degree(static_cast<int>(i));
        if (seen < 0) seen = d;
        else if (seen != d) return false;
    }
    return true;
}

int MPoly::degree_in(int var) const {
    int best = 0;
    for (auto& [m, c] : terms_) best = std::max(best, static_cast<int>(m.e.at(var)));
    return best;
}

void MPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MPoly::check_same(const MPoly& o) const {
    if (reg_ != o.reg_) throw internal_error("mixing polynomials from different registries");
}

MPoly& MPoly::operator+=(const MPoly& o) {
    check_same(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    check_same(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const { MPoly r = *this; r += o; return r; }
MPoly MPoly::operator-(const MPoly& o) const { MPoly r = *this; r -= o; return r; }

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_same(o);
    MPoly r(reg_);
    const MPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
    const MPoly& big = terms_.size() <= o.terms_.size() ? o : *this;
    for (auto& [ms, cs] : small.terms_)
        for (auto& [mb, cb] : big.terms_) r.add_term(Mono::mul(ms, mb), cs * cb);
    return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { *this = *this * o; return *this; }

MPoly MPoly::operator*(const Rat& c) const {
    MPoly r(reg_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, v] : r.terms_) v = v * c;
    return r;
}

MPoly& MPoly::operator*=(const Rat& c) { *this = *this * c; return *this; }

bool MPoly::operator==(const MPoly& o) const {
    if (reg_ != o.reg_ && !terms_.empty() && !o.terms_.empty()) check_same(o);
    return terms_ == o.terms_;
}

MPoly MPoly::pow(long k) const {
    if (k < 0) throw internal_error("MPoly::pow negative exponent");
    MPoly acc = constant(reg_, 1);
    MPoly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

MPoly MPoly::mul_term(const Rat& c, const Mono& m) const {
    MPoly r(reg_);
    if (c == 0) return r;
    for (auto& [mm, cc] : terms_) r.terms_.emplace(Mono::mul(mm, m), cc * c);
    return r;
}

bool MPoly::try_divide(const MPoly& divisor, MPoly& quotient) const {
    check_same(divisor);
    if (divisor.is_zero()) return false;
    quotient = MPoly(reg_);
    MPoly rem = *this;
    const auto& dlt = *divisor.terms_.begin();
    while (!rem.is_zero()) {
        const auto& rlt = *rem.terms_.begin();
        if (!Mono::divides(dlt.first, rlt.first)) return false;
        Mono qm = Mono::div(rlt.first, dlt.first);
        Rat qc = rlt.second / dlt.second;
        quotient.add_term(qm, qc);
        rem -= divisor.mul_term(qc, qm);
    }
    return true;
}

MPoly MPoly::divide_exact(const MPoly& divisor, const char* what) const {
    MPoly q;
    if (!try_divide(divisor, q))
        throw internal_error(std::string("inexact division in ") + what);
    return q;
}

MPoly MPoly::substitute_monomial(int var, const Rat& c, const Mono& m) const {
    MPoly r(reg_);
    for (auto& [mm, cc] : terms_) {
        int e = mm.e.at(var);
        if (e == 0) {
            r.add_term(mm, cc);
            continue;
        }
        Mono base = mm;
        base.e[var] = 0;
        base.deg -= e;
        r.add_term(Mono::mul(base, Mono::pow(m, e)), cc * rat_pow(c, e));
    }
    return r;
}

MPoly MPoly::swap_vars(int a, int b) const {
    MPoly r(reg_);
    for (auto& [m, c] : terms_) {
        Mono mm = m;
        std::swap(mm.e.at(a), mm.e.at(b));
        r.add_term(mm, c);
    }
    return r;
}

MPoly MPoly::drop_terms_with(const std::vector<int>& vars) const {
    MPoly r(reg_);
    for (auto& [m, c] : terms_) {
        bool keep = true;
        for (int v : vars)
            if (m.e.at(v) != 0) { keep = false; break; }
        if (keep) r.add_term(m, c);
    }
    return r;
}

MPoly MPoly::coefficient_of(int var, int exp) const {
    MPoly r(reg_);
    for (auto& [m, c] : terms_) {
        if (m.e.at(var) != exp) continue;
        Mono mm = m;
        mm.e[var] = 0;
        mm.deg -= exp;
        r.add_term(mm, c);
    }
    return r;
}

Mono MPoly::content_monomial() const {
    if (terms_.empty()) return Mono::one(reg_ ? reg_->size() : 0);
    Mono content = terms_.begin()->first;
    for (auto& [m, c] : terms_) {
        for (size_t i = 0; i < content.e.size(); ++i)
            content.e[i] = std::min(content.e[i], m.e[i]);
    }
    content.deg = 0;
    for (auto v : content.e) content.deg += v;
    return content;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rat cc = c;
        if (first) {
            if (cc < 0) { os << "-"; cc = -cc; }
        } else {
            os << (cc < 0 ? " - " : " + ");
            if (cc < 0) cc = -cc;
        }
        first = false;
        bool unit = (cc == 1);
        if (!unit || m.is_one()) os << rat_to_string(cc);
        bool any = !m.is_one();
        if (any && !unit) os << "*";
        bool started = false;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (started) os << "*";
            started = true;
            os << reg_->name(static_cast<int>(i));
            if (m.e[i] > 1) os << "^" << static_cast<int>(m.e[i]);
        }
    }
    return os.str();
}

MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

} // namespace mutad
