#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mutad/abelian.hpp"
#include "mutad/gkm.hpp"

using namespace mutad;

namespace {

FixedPoint chain_point(std::vector<std::set<int>> sets) {
    FixedPoint p;
    for (size_t i = 0; i < sets.size(); ++i) p.I[static_cast<int>(i) + 1] = sets[i];
    return p;
}

// c_k(E) read off a restriction polynomial sum (-1)^i c_i t^(r-i)
Rat chern_coeff(const MPoly& restr, const EquivVars& ev, int rank, int k,
                const std::map<int, Rat>& lam_values) {
    // evaluate coefficient of t^(r-k) at numeric lambda values
    MPoly coeff = restr.coefficient_of(ev.t, rank - k);
    Rat acc = 0;
    for (auto& [m, c] : coeff.terms()) {
        Rat term = c;
        for (size_t v = 0; v < m.e.size(); ++v)
            for (int rep = 0; rep < m.e[v]; ++rep) {
                int lam_index = -1;
                for (size_t j = 0; j < ev.lam.size(); ++j)
                    if (ev.lam[j] == static_cast<int>(v)) lam_index = static_cast<int>(j) + 1;
                if (lam_index < 0) return Rat(0);  // leftover t power: not expected
                term *= lam_values.at(lam_index);
            }
        acc += term;
    }
    return ((k % 2) ? -acc : acc);
}

} // namespace

TEST_CASE("fixed point counts") {
    DecoratedQP fl123 = DecoratedQP::initial_linear(2, {1, 2, 3});
    CHECK(enumerate_fixed_points(fl123).size() == 6);

    DecoratedQP gr12 = DecoratedQP::initial_linear(1, {1, 2});
    auto pts = enumerate_fixed_points(gr12);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].I.at(1) == std::set<int>{1});
    CHECK(pts[1].I.at(1) == std::set<int>{2});

    DecoratedQP a3cycle = mutate_quiver(DecoratedQP::initial_linear(3, {1, 2, 3, 4}), 2);
    CHECK(enumerate_fixed_points(a3cycle).size() == 24);

    // the count is the product of binomials for every member of the class
    for (const DecoratedQP& q : enumerate_omega(3, {1, 2, 3, 4}))
        CHECK(enumerate_fixed_points(q).size() == 24);
}

TEST_CASE("phi on the worked Fl(1,2,3) point") {
    DecoratedQP q = DecoratedQP::initial_linear(2, {1, 2, 3});
    FixedPoint p = chain_point({{1}, {1, 2}});
    FixedPoint img = phi_fixed(q, 2, p);
    CHECK(img.I.at(1) == std::set<int>{1});
    CHECK(img.I.at(2) == std::set<int>{3});

    // involution and bijection over the whole set
    DecoratedQP q2 = mutate_quiver(q, 2);
    std::set<std::string> images;
    for (const FixedPoint& pt : enumerate_fixed_points(q)) {
        FixedPoint fwd = phi_fixed(q, 2, pt);
        images.insert(fwd.key());
        FixedPoint back = phi_fixed(q2, 2, fwd);
        CHECK(back == pt);
    }
    CHECK(images.size() == 6);
}

TEST_CASE("restrictions at chain points") {
    DecoratedQP q = DecoratedQP::initial_linear(2, {1, 2, 3});
    EquivVars ev = EquivVars::standalone(3);
    FixedPoint p = chain_point({{1}, {1, 2}});
    MPoly t = ev.tpoly();
    CHECK(restrict_taut(ev, q, p, 2) == (t - ev.lpoly(1)) * (t - ev.lpoly(2)));
    CHECK(restrict_flag_quotient(ev, q, p, 2, 3) == t - ev.lpoly(3));
    CHECK(restrict_flag_quotient(ev, q, p, 0, 1) == t - ev.lpoly(1));
    CHECK(restrict_taut(ev, q, p, 1, true) == t + ev.lpoly(1));
    // the frozen node carries the trivial rank-N bundle
    CHECK(restrict_taut(ev, q, p, 3) ==
          (t - ev.lpoly(1)) * (t - ev.lpoly(2)) * (t - ev.lpoly(3)));
}

TEST_CASE("restriction duality for the node quotient under mutation") {
    // c_k(Q_v)|_P = (-1)^k c_k(S'_v)|_{phi(P)} for all k, P, v on both shapes
    std::map<int, Rat> lam{{1, Rat(3)}, {2, Rat(-5)}, {3, Rat(7)}, {4, Rat(11)}};
    for (int n : {2, 3}) {
        std::vector<long long> N;
        for (int i = 1; i <= n + 1; ++i) N.push_back(i);
        EquivVars ev = EquivVars::standalone(N.back());
        for (const DecoratedQP& q : enumerate_omega(n, N)) {
            for (int v : q.gauge_ids()) {
                DecoratedQP q2 = mutate_quiver(q, v);
                for (const FixedPoint& p : enumerate_fixed_points(q)) {
                    FixedPoint p2 = phi_fixed(q, v, p);
                    MPoly quot = restrict_node_quotient(ev, q, p, v);
                    MPoly taut2 = restrict_taut(ev, q2, p2, v);
                    int rank = quot.degree_in(ev.t);
                    REQUIRE(rank == taut2.degree_in(ev.t));
                    for (int k = 0; k <= rank; ++k) {
                        Rat a = chern_coeff(quot, ev, rank, k, lam);
                        Rat b = chern_coeff(taut2, ev, rank, k, lam);
                        CHECK(a == ((k % 2) ? -b : b));
                    }
                }
            }
        }
    }
}

TEST_CASE("gkm graph of the projective line and plane") {
    DecoratedQP gr12 = DecoratedQP::initial_linear(1, {1, 2});
    GkmGraph g = build_gkm_graph(gr12);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].wi == 1);
    CHECK(g.edges[0].wj == 2);
    LamForm w = g.weight(0, g.edges[0].a);
    CHECK(w == LamForm{1, -1});

    DecoratedQP fl123 = DecoratedQP::initial_linear(2, {1, 2, 3});
    GkmGraph g2 = build_gkm_graph(fl123);
    CHECK(g2.vertices.size() == 6);
    CHECK(uniform_valence(g2) == 3);  // dim Fl(1,2,3)

    // Gr(1,3): all three pairs of points are joined
    DecoratedQP gr13 = DecoratedQP::initial_linear(1, {1, 3});
    CHECK(build_gkm_graph(gr13).edges.size() == 3);

    // Gr(2,4): points sharing no index are not joined
    DecoratedQP gr24 = DecoratedQP::initial_linear(1, {2, 4});
    GkmGraph g3 = build_gkm_graph(gr24);
    for (auto& e : g3.edges) {
        std::set<int> I = g3.vertices[e.a].I.at(1), J = g3.vertices[e.b].I.at(1);
        std::set<int> inter;
        std::set_intersection(I.begin(), I.end(), J.begin(), J.end(),
                              std::inserter(inter, inter.begin()));
        CHECK(inter.size() == 1);  // |I cap J| = N_1 - 1
    }
    CHECK(g3.edges.size() == 12);  // 6 vertices, valence 4 = dim Gr(2,4)
}

TEST_CASE("a coefficients") {
    DecoratedQP gr12 = DecoratedQP::initial_linear(1, {1, 2});
    GkmGraph g = build_gkm_graph(gr12);
    auto ac = a_coefficients(g, 0, g.edges[0].a);
    REQUIRE(ac.size() == 1);
    CHECK(ac[0].a == 2);

    DecoratedQP fl123 = DecoratedQP::initial_linear(2, {1, 2, 3});
    GkmGraph g2 = build_gkm_graph(fl123);
    for (size_t e = 0; e < g2.edges.size(); ++e)
        for (int side : {g2.edges[e].a, g2.edges[e].b}) {
            auto list = a_coefficients(g2, static_cast<int>(e), side);
            CHECK(list.size() == 3);
            int self = 0;
            for (auto& x : list)
                if (x.edge_at_sigma == static_cast<int>(e)) {
                    ++self;
                    CHECK(x.a == 2);
                    CHECK(x.matched_edge == static_cast<int>(e));
                }
            CHECK(self == 1);
        }

    // weights across each edge negate
    for (size_t e = 0; e < g2.edges.size(); ++e) {
        LamForm wa = g2.weight(static_cast<int>(e), g2.edges[e].a);
        LamForm wb = g2.weight(static_cast<int>(e), g2.edges[e].b);
        for (size_t i = 0; i < wa.size(); ++i) CHECK(wa[i] == -wb[i]);
    }
}

TEST_CASE("b factors and the degree-one edge factor") {
    std::vector<Rat> u{Rat(1), Rat(-1)};
    std::vector<Rat> w{Rat(2), Rat(1)};
    FactoredRat b0 = b_factor(u, w, 0);
    FactoredRat inv_w;
    inv_w.mul_form(LamForm{2, 1}, Rat(1), -1);
    CHECK(b0 == inv_w);
    CHECK(b_factor(u, w, -1) == FactoredRat::one());

    DecoratedQP gr12 = DecoratedQP::initial_linear(1, {1, 2});
    GkmGraph g = build_gkm_graph(gr12);
    FactoredRat h = edge_factor_h(g, 0, g.edges[0].a, 1);
    FactoredRat expect;
    expect.scalar = -1;
    expect.mul_form(LamForm{1, -1}, Rat(1), -2);
    CHECK(h == expect);
}

TEST_CASE("curve classes of edges and the mutation transform") {
    DecoratedQP fl123 = DecoratedQP::initial_linear(2, {1, 2, 3});
    GkmGraph g = build_gkm_graph(fl123);
    // each edge lies in a single level; the class has one unit coordinate
    for (size_t e = 0; e < g.edges.size(); ++e) {
        CurveClass beta = edge_curve_class(g, static_cast<int>(e));
        long long total = 0;
        for (auto& [u, c] : beta) total += std::abs(c);
        CHECK(total >= 1);
    }

    // A_2, mu_2: beta_1 fixed, beta_2 negated (the only target of node 2 is frozen)
    CurveClass b1{{1, 1}};
    CurveClass b2{{2, 1}};
    CHECK(curve_class_transform(b1, fl123, 2) == CurveClass{{1, 1}});
    CHECK(curve_class_transform(b2, fl123, 2) == CurveClass{{2, -1}});

    // double transform is the identity
    DecoratedQP m = mutate_quiver(fl123, 2);
    for (const CurveClass& beta : {CurveClass{{1, 2}, {2, 3}}, b1, b2})
        CHECK(curve_class_transform(curve_class_transform(beta, fl123, 2), m, 2) == beta);
}

TEST_CASE("kahler variable transform is the transpose of the class transform") {
    // On basis classes: the mutated-node coordinate negates and picks up
    // [sign(sigma_v) b_vu]_+ from each neighbor, matching
    // q'_v = q_v^{-1}, q'_u = q_u q_v^{[sign(sigma_v) b_vu]_+}.
    for (const DecoratedQP& q : enumerate_omega(3, {1, 2, 3, 4}))
        for (int v : q.gauge_ids()) {
            int sgn = q.sign.at(v);
            for (int u : q.gauge_ids()) {
                CurveClass basis{{u, 1}};
                CurveClass img = curve_class_transform(basis, q, v);
                auto at = [&](int node) {
                    auto it = img.find(node);
                    return it == img.end() ? 0LL : it->second;
                };
                if (u == v) {
                    CHECK(at(v) == -1);
                } else {
                    CHECK(at(u) == 1);
                    int b = sgn > 0 ? q.arrow_mult(v, u) : q.arrow_mult(u, v);
                    CHECK(at(v) == b);
                }
            }
        }
}

TEST_CASE("genus zero single edge sums on the projective line") {
    DecoratedQP gr12 = DecoratedQP::initial_linear(1, {1, 2});
    GkmGraph g = build_gkm_graph(gr12);
    EquivVars ev;
    FlagRing ring({1, 2});
    ev.reg = ring.reg();
    ev.t = ring.t_var();
    ev.lam = {ring.lambda_var(1), ring.lambda_var(2)};

    CurveClass line = edge_curve_class(g, 0);

    // hyperplane insertion: restriction lam_i at the point {i}
    auto hyperplane = [&] {
        std::vector<MPoly> tbl;
        for (auto& p : g.vertices) tbl.push_back(ev.lpoly(*p.I.at(1).begin()));
        return tbl;
    }();

    MPoly one_inv = genus0_single_edge_invariant(g, ev, {}, 1, line);
    CHECK(one_inv == MPoly::constant(ev.reg, 1));
    MPoly h1 = genus0_single_edge_invariant(g, ev, {hyperplane}, 1, line);
    CHECK(h1 == MPoly::constant(ev.reg, 1));
    MPoly h2 = genus0_single_edge_invariant(g, ev, {hyperplane, hyperplane}, 1, line);
    CHECK(h2 == MPoly::constant(ev.reg, 1));
    MPoly h3 = genus0_single_edge_invariant(g, ev, {hyperplane, hyperplane, hyperplane}, 1, line);
    CHECK(h3 == MPoly::constant(ev.reg, 1));  // the three-point degree-one invariant

    // degree zero gives nothing
    CHECK(genus0_single_edge_invariant(g, ev, {hyperplane}, 0, line).is_zero());

    // abelian oracle: the q-coefficient of x*x is the constant 1, whose
    // pairing against the hyperplane equals the invariant above
    MPoly xx = ring.specialize_novikov(ring.quantum_product(ring.x(1, 1), ring.x(1, 1)));
    MPoly qcoeff = xx.coefficient_of(ring.qf_var(1), 1);
    CHECK(qcoeff == MPoly::constant(ring.reg(), 1));
}

TEST_CASE("graph level duality for every mutation at small shapes") {
    for (int n : {2}) {
        std::vector<long long> N;
        for (int i = 1; i <= n + 1; ++i) N.push_back(i);
        for (const DecoratedQP& q : enumerate_omega(n, N))
            for (int v : q.gauge_ids()) {
                VerificationReport rep = verify_seiberg_graph_level(q, v, 3);
                std::string why =
                    rep.diagnostics.count("mismatch") ? rep.diagnostics.at("mismatch") : "ok";
                INFO(why);
                CHECK(rep.equal());
            }
    }
    // one A_3 instance here; the full sweep runs in the acceptance suite
    DecoratedQP a3 = DecoratedQP::initial_linear(3, {1, 2, 3, 4});
    VerificationReport rep = verify_seiberg_graph_level(a3, 2, 3);
    CHECK(rep.equal());
    CHECK(rep.diagnostics.at("vertices") == "24");

    // non-consecutive decorations: 30 points of uniform valence dim = 8
    DecoratedQP wide = DecoratedQP::initial_linear(2, {2, 3, 5});
    GkmGraph gw = build_gkm_graph(wide);
    CHECK(gw.vertices.size() == 30);
    CHECK(uniform_valence(gw) == 8);
    CHECK(verify_seiberg_graph_level(wide, 1, 2).equal());
}
