#include "mutad/psi.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace mutad {

namespace {
int pm(long long e) { return (e % 2) ? -1 : 1; }
} // namespace

std::string PsiImage::to_string() const {
    std::ostringstream os;
    os << (sign > 0 ? "+" : "-");
    for (auto& [i, e] : xi) {
        if (e == 0) continue;
        os << "xi" << i;
        if (e != 1) os << "^" << e;
    }
    os << " c_t(" << spec.to_string() << ")";
    return os.str();
}

PsiMap::PsiMap(int n, const std::vector<long long>& N) : n_(n) {
    if (static_cast<int>(N.size()) != n + 1) throw input_error("need n+1 decorations");
    N_.assign(n + 2, 0);
    for (int i = 1; i <= n + 1; ++i) N_[i] = N[i - 1];
    cluster_reg_ = cluster_registry(n);
}

long long PsiMap::N_of(int k) const {
    if (k < 0 || k > n_ + 1) throw internal_error("N index out of range");
    return N_[k];
}

PsiImage PsiMap::image_of_interval(const Interval& iv) const {
    PsiImage img;
    img.sign = pm(N_of(iv.hi) - N_of(iv.lo));
    if (iv.hi != 0) img.xi[iv.hi] += 1;
    if (iv.lo != 0) img.xi[iv.lo] -= 1;
    img.spec = ChernSpec{iv.lo, iv.hi};
    return img;
}

PsiImage PsiMap::psi_of(const LaurentRat& var, const Seed& context) const {
    for (auto& [node, v] : context.vars)
        if (v == var) return image_of_interval(context.qp.interval.at(node));
    throw input_error("variable not found in context seed");
}

std::pair<int, std::map<int, int>> PsiMap::kahler_q_image(int i) const {
    if (i < 1 || i > n_) throw input_error("Kahler index out of range");
    std::map<int, int> xi;
    if (i - 1 != 0) xi[i - 1] += 1;
    xi[i + 1] -= 1;
    return {pm(N_of(i) + N_of(i + 1)), xi};
}

RelationInstance PsiMap::exchange_instance(const DecoratedQP& q, int v) const {
    LocalProfile pr = local_profile(q, v);
    int m = pr.m, k = pr.k, p = pr.p, l = pr.l;
    bool no_v2 = (m == k + 1), no_v3 = (p == l), no_v4 = (p + 1 == k);
    if (!no_v2 && !no_v3 && !no_v4) return {"node4", {m, k, p, l}};
    if (no_v2 && !no_v3 && !no_v4) return {"node3a", {k, p, l}};
    if (!no_v2 && no_v3 && !no_v4) return {"node3c", {m, k, l}};
    if (!no_v2 && !no_v3 && no_v4) return {"node3b", {m, k, l}};
    if (no_v2 && no_v3 && !no_v4) return {"cluster1", {k, p}};
    if (no_v2 && !no_v3 && no_v4) return {"node2a", {k, l}};
    if (!no_v2 && no_v3 && no_v4) return {"special2", {m, k}};
    return {"node1", {k}};
}

namespace {

struct SignedXi {
    int sign = 1;
    std::map<int, int> xi;

    void mul(const PsiImage& img) {
        sign *= img.sign;
        for (auto& [i, e] : img.xi) xi[i] += e;
    }
    void mul_pair(int s, const std::map<int, int>& other) {
        sign *= s;
        for (auto& [i, e] : other) xi[i] += e;
    }
    void trim() {
        for (auto it = xi.begin(); it != xi.end();)
            it = (it->second == 0) ? xi.erase(it) : std::next(it);
    }
    bool operator==(const SignedXi& o) const { return sign == o.sign && xi == o.xi; }
    std::string to_string() const {
        std::ostringstream os;
        os << (sign > 0 ? "+" : "-");
        for (auto& [i, e] : xi)
            if (e != 0) os << "xi" << i << "^" << e;
        return os.str();
    }
};

} // namespace

VerificationReport PsiMap::verify_exchange(const Seed& s, int v, FlagQH& qh) const {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = "psi-exchange";
    for (int i = 1; i <= n_ + 1; ++i) rep.shape.push_back(N_[i]);
    rep.indices = {v};
    rep.status = "equal";

    LocalProfile pr = local_profile(s.qp, v);
    Seed s2 = seed_mutate(s, v);
    const int m = pr.m, k = pr.k, p = pr.p, l = pr.l;

    // Images of old and new variable at v.
    SignedXi lhs;
    lhs.mul(image_of_interval(s.qp.interval.at(v)));
    lhs.mul(image_of_interval(s2.qp.interval.at(v)));
    lhs.trim();

    // Exchange binomial terms.
    SignedXi out_term, in_term;
    std::multiset<ChernSpec> out_specs, in_specs;
    for (auto& [uv, mult] : s.qp.arrows) {
        for (int c = 0; c < mult; ++c) {
            if (uv.first == v) {
                PsiImage img = image_of_interval(s.qp.interval.at(uv.second));
                out_term.mul(img);
                out_specs.insert(img.spec);
            }
            if (uv.second == v) {
                PsiImage img = image_of_interval(s.qp.interval.at(uv.first));
                in_term.mul(img);
                in_specs.insert(img.spec);
            }
        }
    }
    out_term.trim();
    in_term.trim();

    // Against the profile, the plain term carries {S_m/S_l, S_k/S_{p+1}} and
    // the Kahler-prefactored term {S_m/S_{k+1}, S_p/S_l}.
    std::multiset<ChernSpec> plain_specs{ChernSpec{l, m}, ChernSpec{p + 1, k}};
    std::multiset<ChernSpec> qside_specs{ChernSpec{k + 1, m}, ChernSpec{l, p}};
    auto strip_scalars = [](std::multiset<ChernSpec> in) {
        std::multiset<ChernSpec> out;
        for (auto& c : in)
            if (!c.scalar()) out.insert(c);
        return out;
    };
    plain_specs = strip_scalars(plain_specs);
    qside_specs = strip_scalars(qside_specs);

    SignedXi plain, qside;
    if (strip_scalars(out_specs) == plain_specs && strip_scalars(in_specs) == qside_specs) {
        plain = out_term;
        qside = in_term;
    } else if (strip_scalars(in_specs) == plain_specs && strip_scalars(out_specs) == qside_specs) {
        plain = in_term;
        qside = out_term;
    } else {
        rep.status = "unequal";
        rep.diagnostics["mismatch"] = "exchange terms do not match the local profile";
        return rep;
    }

    // (1) the plain term must carry exactly the scaling of the left side
    if (!(plain == lhs)) {
        rep.status = "unequal";
        rep.diagnostics["mismatch"] = "plain term scaling " + plain.to_string() +
                                      " differs from " + lhs.to_string();
    }

    // (2) the other term must differ from the left side by the image of the
    // Kahler prefactor prod_{a=p+1}^{k} (-1)^{N_a+N_{a-1}} q_a
    SignedXi expect = lhs;
    for (int a = p + 1; a <= k; ++a) {
        expect.mul_pair(pm(N_of(a) + N_of(a - 1)), {});
        auto [qs, qx] = kahler_q_image(a);
        expect.mul_pair(qs, qx);
    }
    expect.trim();
    if (rep.status == "equal" && !(qside == expect)) {
        rep.status = "unequal";
        rep.diagnostics["mismatch"] = "Kahler term scaling " + qside.to_string() +
                                      " differs from " + expect.to_string();
    }

    // (3) the underlying quantum identity
    RelationInstance inst = exchange_instance(s.qp, v);
    rep.identity = "psi-exchange via " + inst.id;
    if (rep.status == "equal") {
        VerificationReport sub = qh.verify_relation(inst);
        rep.diagnostics["relation"] = inst.id;
        if (!sub.equal()) {
            rep.status = "unequal";
            rep.diagnostics["mismatch"] = "quantum identity failed";
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport PsiMap::verify_homomorphism_path(const std::vector<int>& path, FlagQH& qh) const {
    VerificationReport rep;
    rep.identity = "psi-homomorphism (path)";
    for (int i = 1; i <= n_ + 1; ++i) rep.shape.push_back(N_[i]);
    rep.indices = path;
    rep.status = "equal";

    std::vector<long long> N(N_.begin() + 1, N_.end());
    Seed s = Seed::initial(n_, N, cluster_reg_);
    int step = 0;
    for (int v : path) {
        VerificationReport sub = verify_exchange(s, v, qh);
        rep.diagnostics["step" + std::to_string(step) + "_at" + std::to_string(v)] = sub.status;
        if (!sub.equal()) {
            rep.status = "unequal";
            for (auto& [k2, v2] : sub.diagnostics) rep.diagnostics[k2] = v2;
        }
        s = seed_mutate(s, v);
        ++step;
    }
    return rep;
}

VerificationReport PsiMap::verify_homomorphism_all(FlagQH& qh, size_t cap) const {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = "psi-homomorphism (all exchanges)";
    for (int i = 1; i <= n_ + 1; ++i) rep.shape.push_back(N_[i]);
    rep.status = "equal";
    rep.diagnostics["conventions"] = "xi_0 = 1, N_0 = 0";

    std::vector<long long> N(N_.begin() + 1, N_.end());
    Seed initial = Seed::initial(n_, N, cluster_reg_);
    std::map<std::string, Seed> seen;
    std::vector<Seed> frontier{initial};
    seen.emplace(initial.canonical_key(), initial);
    size_t checked = 0, failed = 0;
    while (!frontier.empty()) {
        Seed s = frontier.back();
        frontier.pop_back();
        for (int v : s.qp.gauge_ids()) {
            VerificationReport sub = verify_exchange(s, v, qh);
            ++checked;
            if (!sub.equal()) {
                ++failed;
                rep.status = "unequal";
                rep.diagnostics["first_failure"] = sub.diagnostics.count("mismatch")
                                                       ? sub.diagnostics["mismatch"]
                                                       : sub.identity;
            }
            Seed nxt = seed_mutate(s, v);
            std::string key = nxt.canonical_key();
            if (!seen.count(key)) {
                if (seen.size() >= cap) throw input_error("not finite type within cap");
                seen.emplace(key, nxt);
                frontier.push_back(nxt);
            }
        }
    }
    rep.diagnostics["exchanges_checked"] = std::to_string(checked);
    rep.diagnostics["failures"] = std::to_string(failed);
    rep.diagnostics["seeds"] = std::to_string(seen.size());
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::map<std::string, PsiImage> PsiMap::image_table(size_t cap) const {
    std::vector<long long> N(N_.begin() + 1, N_.end());
    Seed initial = Seed::initial(n_, N, cluster_reg_);
    ClusterEnumeration en = enumerate_cluster_variables(initial, cap);

    std::map<std::string, PsiImage> table;
    for (const Seed& s : en.seeds)
        for (auto& [node, var] : s.vars) {
            PsiImage img = image_of_interval(s.qp.interval.at(node));
            auto [it, fresh] = table.emplace(var.key(), img);
            if (!fresh && !(it->second == img))
                throw internal_error("psi image depends on the witnessing seed");
        }
    return table;
}

VerificationReport PsiMap::distinctness_probe(size_t cap) const {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = "psi-distinctness";
    for (int i = 1; i <= n_ + 1; ++i) rep.shape.push_back(N_[i]);
    rep.status = "equal";

    std::map<std::string, PsiImage> table = image_table(cap);
    std::set<PsiImage> images;
    std::multiset<ChernSpec> specs;
    for (auto& [k, img] : table) {
        images.insert(img);
        specs.insert(img.spec);
    }
    if (images.size() != table.size()) {
        rep.status = "unequal";
        rep.diagnostics["mismatch"] = "two distinct variables share an image";
    }
    std::multiset<ChernSpec> expect;
    for (int i = 0; i <= n_ + 1; ++i)
        for (int j = i + 1; j <= n_ + 1; ++j) expect.insert(ChernSpec{i, j});
    if (specs != expect) {
        rep.status = "unequal";
        rep.diagnostics["mismatch"] = "image inventory differs from all S_j/S_i";
    }
    rep.diagnostics["variables"] = std::to_string(table.size());
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace mutad
