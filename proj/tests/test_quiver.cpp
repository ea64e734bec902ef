#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mutad/jsonio.hpp"
#include "mutad/quiver.hpp"

using namespace mutad;

namespace {

DecoratedQP a2_123() { return DecoratedQP::initial_linear(2, {1, 2, 3}); }

DecoratedQP a3quiver_cycle() {
    // mu_2 of the linear A_3 quiver with N = (1,2,3,4)
    return mutate_quiver(DecoratedQP::initial_linear(3, {1, 2, 3, 4}), 2);
}

} // namespace

TEST_CASE("mutation at the middle of A_2 gives the 3-cycle") {
    DecoratedQP q = a2_123();
    DecoratedQP m = mutate_quiver(q, 2);
    CHECK(m.arrow_mult(2, 1) == 1);
    CHECK(m.arrow_mult(1, 3) == 1);
    CHECK(m.arrow_mult(3, 2) == 1);
    CHECK(m.arrows.size() == 3);
    CHECK(m.cycles.size() == 1);
    CHECK(*m.cycles.begin() == DecoratedQP::canon_cycle({1, 3, 2}));
    // r'_2 = max(3, 1) - 2 = 1
    CHECK(m.r_of(2) == 1);
    CHECK(m.interval.at(2) == Interval{2, 3});
    CHECK(m.sign.at(2) == -1);
    CHECK(m.sign.at(1) == +1);

    DecoratedQP back = mutate_quiver(m, 2);
    CHECK(back.arrows == q.arrows);
    CHECK(back.cycles == q.cycles);
    CHECK(back.interval == q.interval);
    CHECK(back.sign == q.sign);
}

TEST_CASE("in/out degrees") {
    DecoratedQP q = a2_123();
    CHECK(in_out_degree(q, 2) == std::pair<long long, long long>{3, 1});
    CHECK(in_out_degree(q, 1) == std::pair<long long, long long>{2, 0});
    CHECK_THROWS_AS(in_out_degree(q, 3), input_error);

    DecoratedQP c = a3quiver_cycle();
    // node 2 now carries r = N_3 - N_2 = 1, points into the N_1 node
    CHECK(c.r_of(2) == 1);
    CHECK(in_out_degree(c, 2) == std::pair<long long, long long>{1, 3});
}

TEST_CASE("mutation involution across the class") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<long long> N;
        for (int i = 1; i <= n + 1; ++i) N.push_back(i);
        for (const DecoratedQP& q : enumerate_omega(n, N))
            for (int v : q.gauge_ids()) {
                DecoratedQP twice = mutate_quiver(mutate_quiver(q, v), v);
                CHECK(twice.arrows == q.arrows);
                CHECK(twice.cycles == q.cycles);
                CHECK(twice.interval == q.interval);
                CHECK(twice.sign == q.sign);
            }
    }
}

TEST_CASE("omega membership") {
    CHECK(check_omega_membership(a2_123()).ok);
    CHECK(check_omega_membership(a3quiver_cycle()).ok);
    CHECK(check_omega_membership(DecoratedQP::initial_linear(4, {2, 3, 5, 7, 11})).ok);

    // a 4-cycle fails clause (1)
    DecoratedQP bad = DecoratedQP::initial_linear(3, {1, 2, 3, 4});
    bad.arrows.clear();
    bad.arrows[{1, 2}] = 1;
    bad.arrows[{2, 3}] = 1;
    bad.arrows[{3, 4}] = 1;
    bad.arrows[{4, 1}] = 1;
    OmegaReport rep = check_omega_membership(bad);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (auto& v : rep.violations)
        if (v.find("cycle of length 4") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("census agrees with the mutation closure") {
    std::vector<size_t> expected{2, 5, 14, 42};
    for (int n = 1; n <= 4; ++n) {
        std::vector<long long> N;
        for (int i = 1; i <= n + 1; ++i) N.push_back(i);
        auto rec = enumerate_omega(n, N);
        CHECK(rec.size() == expected[n - 1]);
        auto bfs = enumerate_omega_bfs(n, N);
        REQUIRE(bfs.size() == rec.size());
        std::set<std::string> a, b;
        for (auto& q : rec) a.insert(canonical_key(q));
        for (auto& q : bfs) b.insert(canonical_key(q));
        CHECK(a == b);
    }
}

TEST_CASE("interval consistency after random mutation walks") {
    std::mt19937_64 rng(17);
    DecoratedQP q = DecoratedQP::initial_linear(4, {1, 2, 4, 8, 16});
    for (int step = 0; step < 200; ++step) {
        auto gauge = q.gauge_ids();
        q = mutate_quiver(q, gauge[rng() % gauge.size()]);
        for (auto& [node, iv] : q.interval) {
            CHECK(iv.lo >= 0);
            CHECK(iv.hi <= q.n + 1);
            CHECK(q.r_of(node) == q.N_of(iv.hi) - q.N_of(iv.lo));
        }
        CHECK(check_omega_membership(q).ok);
    }
}

TEST_CASE("local profiles") {
    // middle node of A_3: (m,k,p,l) = (3,2,1,0), v2 and v4 absent
    DecoratedQP a3 = DecoratedQP::initial_linear(3, {1, 2, 3, 4});
    LocalProfile pr = local_profile(a3, 2);
    CHECK(pr.fig_a);
    CHECK(pr.m == 3);
    CHECK(pr.k == 2);
    CHECK(pr.p == 1);
    CHECK(pr.l == 0);
    CHECK(!pr.v2.has_value());
    CHECK(!pr.v4.has_value());
    CHECK(pr.v1 == 3);
    CHECK(pr.v3 == 1);

    // the 3-cycle member: node 2 sits in a cycle with nodes 1 and 3
    DecoratedQP c = a3quiver_cycle();
    LocalProfile pc = local_profile(c, 2);
    CHECK_FALSE(pc.fig_a);
    CHECK(pc.m == 3);
    CHECK(pc.k == 2);
    CHECK(pc.p == 1);
    CHECK(pc.l == 0);

    // four-neighbor profile exists in the n=4 class
    bool found4 = false;
    for (const DecoratedQP& q : enumerate_omega(4, {1, 2, 3, 4, 5}))
        for (int v : q.gauge_ids())
            if (q.valence(v) == 4) {
                LocalProfile p4 = local_profile(q, v);
                CHECK(p4.v1.has_value());
                CHECK(p4.v2.has_value());
                CHECK(p4.v3.has_value());
                CHECK(p4.v4.has_value());
                CHECK(p4.m > p4.k);
                CHECK(p4.k > p4.p);
                CHECK(p4.p >= p4.l);
                found4 = true;
            }
    CHECK(found4);
}

TEST_CASE("partial order") {
    DecoratedQP a3 = DecoratedQP::initial_linear(3, {1, 2, 3, 4});
    PartialOrder po = partial_order(a3);
    CHECK(po.distance.at(4) == 0);
    CHECK(po.distance.at(1) == 3);
    CHECK(po.precedes(1, 2));
    CHECK(po.precedes(1, 4));
    CHECK_FALSE(po.precedes(2, 1));

    DecoratedQP c = a3quiver_cycle();
    PartialOrder pc = partial_order(c);
    CHECK(pc.precedes(1, 3));
    CHECK(pc.precedes(2, 3));
    CHECK_FALSE(pc.precedes(1, 2));
    CHECK_FALSE(pc.precedes(2, 1));
    CHECK(pc.children.at(3).size() == 2);
}

TEST_CASE("sign flips only at the mutated node") {
    DecoratedQP q = DecoratedQP::initial_linear(3, {1, 2, 3, 4});
    DecoratedQP m = mutate_quiver(q, 2);
    for (int v : q.gauge_ids())
        CHECK(m.sign.at(v) == (v == 2 ? -q.sign.at(v) : q.sign.at(v)));
}

TEST_CASE("json round trip") {
    DecoratedQP q = a3quiver_cycle();
    Json j = quiver_to_json(q);
    DecoratedQP back = quiver_from_json(j);
    CHECK(back.arrows == q.arrows);
    CHECK(back.cycles == q.cycles);
    CHECK(back.interval == q.interval);
    CHECK(back.sign == q.sign);
    CHECK(dump_canonical(quiver_to_json(back)) == dump_canonical(j));
}

TEST_CASE("phase inequalities of the initial quiver") {
    DecoratedQP q = DecoratedQP::initial_linear(2, {1, 2, 3});
    auto ineqs = phase_inequalities(q);
    // every gauge node is an incoming child: both single inequalities are > 0
    bool n1 = false, n2 = false;
    for (auto& iq : ineqs) {
        if (iq.nodes == std::vector<int>{1}) { CHECK(iq.sign == 1); n1 = true; }
        if (iq.nodes == std::vector<int>{2}) { CHECK(iq.sign == 1); n2 = true; }
    }
    CHECK(n1);
    CHECK(n2);
}
