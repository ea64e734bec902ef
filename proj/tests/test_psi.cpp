#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mutad/psi.hpp"

using namespace mutad;

TEST_CASE("images of initial, mutated and frozen variables") {
    PsiMap psi(2, {1, 2, 3});
    RegistryPtr reg = cluster_registry(2);
    Seed s = Seed::initial(2, {1, 2, 3}, reg);

    PsiImage x2 = psi.psi_of(s.vars.at(2), s);
    CHECK(x2.sign == +1);  // (-1)^{N_2} = (-1)^2
    CHECK(x2.xi == std::map<int, int>{{2, 1}});
    CHECK(x2.spec == ChernSpec{0, 2});

    Seed s1 = seed_mutate(s, 1);
    PsiImage non_init = psi.psi_of(s1.vars.at(1), s1);
    CHECK(non_init.sign == -1);  // (-1)^{N_2 - N_1} = (-1)^1
    CHECK(non_init.xi == std::map<int, int>{{1, -1}, {2, 1}});
    CHECK(non_init.spec == ChernSpec{1, 2});

    PsiImage frozen = psi.psi_of(s.vars.at(3), s);
    CHECK(frozen.sign == -1);  // (-1)^{N_3} = (-1)^3
    CHECK(frozen.xi == std::map<int, int>{{3, 1}});
    CHECK(frozen.spec == ChernSpec{0, 3});

    CHECK_THROWS_AS(psi.psi_of(s1.vars.at(1), s), input_error);
}

TEST_CASE("kahler substitution") {
    PsiMap p12(1, {1, 2});
    auto [s1, x1] = p12.kahler_q_image(1);
    CHECK(s1 == -1);  // (-1)^{1+2}
    CHECK(x1 == std::map<int, int>{{2, -1}});  // xi_0 = 1 dropped

    PsiMap p123(2, {1, 2, 3});
    auto [s2, x2] = p123.kahler_q_image(2);
    CHECK(s2 == -1);  // (-1)^{2+3}
    CHECK(x2 == std::map<int, int>{{1, 1}, {3, -1}});
}

TEST_CASE("kahler prefactor telescopes across a range") {
    // prod_{a=p+1}^{k} (-1)^{N_a+N_{a-1}} q_a maps to
    // (-1)^{N_k + N_p} xi_p xi_{p+1} xi_k^{-1} xi_{k+1}^{-1}
    PsiMap psi(3, {1, 2, 3, 4});
    int k = 3, p = 1;
    int sign = 1;
    std::map<int, int> xi;
    for (int a = p + 1; a <= k; ++a) {
        sign *= ((psi.N_of(a) + psi.N_of(a - 1)) % 2) ? -1 : 1;
        auto [qs, qx] = psi.kahler_q_image(a);
        sign *= qs;
        for (auto& [i, e] : qx) xi[i] += e;
    }
    for (auto it = xi.begin(); it != xi.end();)
        it = (it->second == 0) ? xi.erase(it) : std::next(it);
    CHECK(sign == ((psi.N_of(k) + psi.N_of(p)) % 2 ? -1 : 1));
    CHECK(xi == std::map<int, int>{{p, 1}, {p + 1, 1}, {k, -1}, {k + 1, -1}});
}

TEST_CASE("exchange instances read off the profile") {
    PsiMap psi(2, {1, 2, 3});
    DecoratedQP a2 = DecoratedQP::initial_linear(2, {1, 2, 3});
    RelationInstance i1 = psi.exchange_instance(a2, 1);
    CHECK(i1.id == "node1");
    CHECK(i1.idx == std::vector<int>{1});
    RelationInstance i2 = psi.exchange_instance(a2, 2);
    CHECK(i2.id == "node2a");
    CHECK(i2.idx == std::vector<int>{2, 0});

    // the root 3-cycle member of the n=2 class: node 1 sits in a cycle under
    // the root with its sibling, the special2 shape
    DecoratedQP cyc = mutate_quiver(a2, 2);
    RelationInstance i3 = psi.exchange_instance(cyc, 1);
    CHECK(i3.id == "special2");
    CHECK(i3.idx == std::vector<int>{3, 1});
}

TEST_CASE("homomorphism along paths of A_2") {
    PsiMap psi(2, {1, 2, 3});
    FlagQH qh({1, 2, 3});
    CHECK(psi.verify_homomorphism_path({}, qh).equal());
    CHECK(psi.verify_homomorphism_path({1}, qh).equal());
    CHECK(psi.verify_homomorphism_path({1, 2, 1, 2, 1}, qh).equal());
}

TEST_CASE("homomorphism over every exchange of A_2") {
    PsiMap psi(2, {1, 2, 3});
    FlagQH qh({1, 2, 3});
    VerificationReport rep = psi.verify_homomorphism_all(qh);
    CHECK(rep.equal());
    CHECK(rep.diagnostics.at("seeds") == "5");
}

TEST_CASE("homomorphism along an A_3 path") {
    PsiMap psi(3, {1, 2, 3, 4});
    FlagQH qh({1, 2, 3, 4});
    CHECK(psi.verify_homomorphism_path({2, 1, 3}, qh).equal());
}

TEST_CASE("distinctness and image inventory") {
    PsiMap psi2(2, {1, 2, 3});
    VerificationReport rep2 = psi2.distinctness_probe();
    CHECK(rep2.equal());
    CHECK(rep2.diagnostics.at("variables") == "6");

    PsiMap psi3(3, {1, 2, 3, 4});
    VerificationReport rep3 = psi3.distinctness_probe();
    CHECK(rep3.equal());
    CHECK(rep3.diagnostics.at("variables") == "10");

    // image table lists every S_j/S_i exactly once
    auto table = psi2.image_table();
    std::set<std::string> specs;
    for (auto& [k, img] : table) specs.insert(img.spec.to_string());
    CHECK(specs.size() == 6);
    CHECK(specs.count("S2/S1"));
    CHECK(specs.count("S3/S1"));
    CHECK(specs.count("S3/S2"));
}
