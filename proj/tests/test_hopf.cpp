#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "species_forge/catalog.hpp"
#include "species_forge/hopf.hpp"

using namespace species_forge;

namespace {

Element pt(std::initializer_list<std::initializer_list<Label>> blocks) {
    std::vector<GroundSet> bs;
    for (auto b : blocks) bs.emplace_back(b);
    return Element::partition(bs);
}

std::string witness(const CheckReport& r) { return r.witness.value_or(""); }

}  // namespace

TEST(Linearized, PartitionFiberProduct) {
    // ∇^π({1} ⊗ {2}) sums the partitions of {1,2} restricting to both: {{1},{2}} and {{1,2}}
    auto h = hopf_pi_mu(make_Pi());
    Vec v = h.product(GroundSet{1}, GroundSet{2}, pt({{1}}), pt({{2}}));
    EXPECT_EQ(v, Vec(pt({{1}, {2}})) + Vec(pt({{1, 2}})));
    // Δ^μ of a one-block partition splits nowhere
    EXPECT_TRUE(h.coproduct(GroundSet{1}, GroundSet{2, 3}, pt({{1, 2, 3}})).is_zero());
    TensorVec d = h.coproduct(GroundSet{1}, GroundSet{2, 3}, pt({{1}, {2, 3}}));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.coeff({pt({{1}}), pt({{2, 3}})}), 1);
}

TEST(Linearized, ExponentialStructure) {
    // E: each product and coproduct is the single element with coefficient 1
    auto h = hopf_mu_pi(make_E());
    auto one = [](GroundSet s) { return make_E().species.elements(s).at(0); };
    EXPECT_EQ(h.product(GroundSet{2}, GroundSet{1, 3}, one(GroundSet{2}), one(GroundSet{1, 3})), Vec(one(GroundSet{1, 2, 3})));
    TensorVec d = h.coproduct(GroundSet{2}, GroundSet{1, 3}, one(GroundSet{1, 2, 3}));
    EXPECT_EQ(d.coeff({one(GroundSet{2}), one(GroundSet{1, 3})}), 1);
}

TEST(Axioms, BuiltinTriplesAreHopfMonoids) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_Perm(), make_L()}) {
        for (const auto& h : {hopf_mu_pi(e), hopf_pi_mu(e)})
            for (Axiom a : {Axiom::Associative, Axiom::Unital, Axiom::Coassociative, Axiom::Counital, Axiom::HopfCompatible}) {
                auto r = check_axiom(h, a, 3);
                EXPECT_TRUE(r.passed()) << h.label() << " " << axiom_name(a) << " " << witness(r);
            }
    }
}

TEST(Axioms, CommutativityOfBuiltins) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_Perm()}) {
        auto h = hopf_mu_pi(e);
        EXPECT_TRUE(check_axiom(h, Axiom::Commutative, 3).passed()) << e.name;
        EXPECT_TRUE(check_axiom(h, Axiom::Cocommutative, 3).passed()) << e.name;
    }
    // concatenation fails first on two labels
    auto r = check_axiom(hopf_mu_pi(make_L()), Axiom::Commutative, 4);
    EXPECT_EQ(r.status, Status::Fail);
    EXPECT_EQ(r.n, 2);
    auto l = hopf_mu_pi(make_L());
    Vec a = l.product(GroundSet{1}, GroundSet{2}, Element::order({1}), Element::order({2}));
    Vec b = l.product(GroundSet{2}, GroundSet{1}, Element::order({2}), Element::order({1}));
    EXPECT_NE(a, b);
}

TEST(Axioms, BrokenCompatibilityIsCaught) {
    // (∇^μ, Δ^μ) for a system that fails the image condition is not a Hopf monoid
    auto h = hopf_mu_mu(*make_deficit(2, {1}, 1).mu);
    auto r = check_axiom(h, Axiom::HopfCompatible, 3);
    EXPECT_EQ(r.status, Status::Fail);
    EXPECT_EQ(r.n, 3);  // the minimal witness lives on three labels
}

TEST(Iterates, AllBracketingsAgree) {
    for (const auto& e : {make_Pi(), make_Perm()}) {
        for (const auto& h : {hopf_mu_pi(e), hopf_pi_mu(e)}) {
            GroundSet I{1, 2, 3, 4};
            for (const auto& parts : decompositions(I, 4, true)) {
                for (const auto& z : h.basis.elements(I)) {
                    EXPECT_FALSE(verify_iterate_delta(h, parts, Vec(z)).has_value()) << h.label();
                }
                TensorVec t(parts);
                ElementTuple key;
                for (const auto& p : parts) key.push_back(h.basis.elements(p).at(0));
                t.add(key, 1);
                EXPECT_FALSE(verify_iterate_nabla(h, t).has_value()) << h.label();
                break;  // one ordering of singletons is enough per species
            }
            for (const auto& parts : decompositions(I, 3, true))
                for (const auto& z : h.basis.elements(I)) {
                    auto w = verify_iterate_delta(h, parts, Vec(z));
                    EXPECT_FALSE(w.has_value()) << h.label() << " " << w.value_or("");
                }
        }
    }
}

TEST(Iterates, IterateDeltaThenNablaMatchesSetLevel) {
    // For (∇^μ, Δ^π), ∇_{S..}Δ_{S..}(λ) is the single element μ(π(λ)).
    for (const auto& e : {make_Pi(), make_Perm(), make_L()}) {
        auto h = hopf_mu_pi(e);
        GroundSet I{1, 2, 3, 4};
        for (const auto& parts : decompositions(I, 3, false))
            for (const auto& z : e.species.elements(I)) {
                Vec got = iterate_nabla(h, iterate_delta(h, parts, Vec(z)));
                Element want = mu_iterate(*e.mu, parts, pi_iterate(*e.pi, parts, z));
                EXPECT_EQ(got, Vec(want)) << e.name;
            }
    }
}

TEST(Antipode, ScalarOnSelfCompatibleSystems) {
    // E: (-1)^n. Pi, h': (-1)^{blocks}. Perm, h': (-1)^{cycles}.
    auto e = hopf_mu_pi(make_E());
    auto r = check_antipode_scalar(e, [](const Element& x) { return x.ground().size(); }, 4);
    EXPECT_TRUE(r.passed()) << witness(r);
    auto pi = hopf_mu_mu(make_Pi());
    r = check_antipode_scalar(pi, [](const Element& x) { return x.block_count(); }, 4);
    EXPECT_TRUE(r.passed()) << witness(r);
    auto perm = hopf_mu_mu(make_Perm());
    r = check_antipode_scalar(perm, [](const Element& x) { return x.cycles().size(); }, 4);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(Antipode, ConvolutionInverseOfIdentity) {
    for (const auto& e : {make_E_C(2), make_Pi(), make_Perm(), make_L()}) {
        auto r = check_antipode_axiom(hopf_mu_pi(e), 3);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto r = check_antipode_axiom(hopf_mu_mu(make_Pi()), 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(Antipode, LinearOrdersByHand) {
    // one part gives -(1,2); ({1},{2}) gives +(1,2) and ({2},{1}) gives +(2,1)
    auto h = hopf_mu_pi(make_L());
    EXPECT_EQ(takeuchi_antipode(h, Vec(Element::order({1}))), Rational(-1) * Vec(Element::order({1})));
    EXPECT_EQ(takeuchi_antipode(h, Vec(Element::order({1, 2}))), Vec(Element::order({2, 1})));
}

TEST(Duality, TransposeSwapsFiberAndDirectStructures) {
    for (const auto& e : {make_E_C(2), make_Pi(), make_Perm(), make_L()}) {
        auto w = compare_structures(dual_transpose(hopf_mu_pi(e)), hopf_pi_mu(e), 3);
        EXPECT_FALSE(w.has_value()) << e.name << " " << w.value_or("");
        auto back = compare_structures(dual_transpose(hopf_pi_mu(e)), hopf_mu_pi(e), 3);
        EXPECT_FALSE(back.has_value()) << e.name;
    }
}

TEST(SelfDuality, FreeSelfDualityOfSelfCompatibleSystems) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_Perm()}) {
        auto r = check_fsd(hopf_mu_mu(e), 3);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    // concatenation is not self-compatible, so (∇^μ, Δ^μ) is not even a Hopf monoid
    auto l = check_fsd(hopf_mu_mu(make_L()), 3);
    EXPECT_EQ(l.status, Status::Fail);
    EXPECT_NE(witness(l).find("not a Hopf monoid"), std::string::npos);
    // the tables of (∇^μ, Δ^π) differ for partitions
    EXPECT_EQ(check_fsd(hopf_mu_pi(make_Pi()), 3).status, Status::Fail);
}

TEST(SelfDuality, StrongSelfDuality) {
    for (const auto& e : {make_E(), make_Pi(), make_Perm()}) {
        auto r = check_ssd(hopf_mu_mu(e), 4);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto r = check_ssd(hopf_pi_mu(make_Pi()), 3);
    EXPECT_EQ(r.status, Status::Fail);
    EXPECT_EQ(witness(r).rfind("(a)", 0), 0u) << witness(r);
}

TEST(SelfDuality, DeltaAfterNablaIsIdentity) {
    for (const auto& e : {make_E_C(2), make_Pi(), make_Perm()}) {
        auto r = check_injsurj(hopf_mu_mu(e), 4);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
}

TEST(SelfCompatibility, BuiltinsPassBothModes) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_Perm()}) {
        auto sc = self_compatibility(*e.mu, 3);
        EXPECT_TRUE(sc.direct.passed()) << e.name << " " << witness(sc.direct);
        EXPECT_TRUE(sc.local.passed()) << e.name << " " << witness(sc.local);
        EXPECT_EQ(e.claims.at("mu.self_compatible"), true);
    }
    auto s = make_S(make_X_C(2));
    EXPECT_TRUE(self_compatibility(*s.mu, 3).local.passed());
}

TEST(SelfCompatibility, EachLocalConditionIsDetected) {
    auto l = self_compatibility(*make_L().mu, 3);
    EXPECT_FALSE(l.direct.passed());
    EXPECT_EQ(l.failing_condition, 'a');
    auto p = self_compatibility(*make_poison(2, 0).mu, 3);
    EXPECT_FALSE(p.direct.passed());
    EXPECT_EQ(p.failing_condition, 'b');
    auto d = self_compatibility(*make_deficit(2, {1}, 1).mu, 3);
    EXPECT_FALSE(d.direct.passed());
    EXPECT_EQ(d.failing_condition, 'c');
}

TEST(SelfCompatibility, ModesAgreeOnRandomPerturbations) {
    std::mt19937_64 rng(2024);
    for (std::size_t i = 0; i < 30; ++i) {
        auto p = random_perturbation(rng, i);
        SelfCompatResult sc;
        ASSERT_NO_THROW(sc = self_compatibility(*p.entry.mu, 3)) << p.entry.name;
        EXPECT_FALSE(sc.direct.passed()) << p.entry.name;
        char want = p.breaks == Breakage::Commutative ? 'a' : p.breaks == Breakage::Injective ? 'b' : 'c';
        EXPECT_EQ(sc.failing_condition, want) << p.entry.name;
    }
}

TEST(SelfCompatibility, ComultiplicativeAnalogue) {
    for (const auto& e : {make_E(), make_E_C(3)}) {
        auto sc = pi_self_compatibility(*e.pi, 3);
        EXPECT_TRUE(sc.direct.passed()) << e.name << " " << witness(sc.direct);
        EXPECT_TRUE(sc.local.passed()) << e.name;
    }
    for (const auto& e : {make_Pi(), make_Perm(), make_L()}) {
        auto sc = pi_self_compatibility(*e.pi, 3);
        EXPECT_FALSE(sc.direct.passed()) << e.name;
        EXPECT_FALSE(sc.local.passed()) << e.name;
    }
    auto s = with_inverse_pi(make_S(make_X_C(2)));
    EXPECT_TRUE(pi_self_compatibility(*s.pi, 3).local.passed());
}

TEST(Rectangle, CommutingSystems) {
    for (const auto& e : {make_E_C(2), make_Pi(), make_Perm(), make_L()}) {
        auto r = check_preorder_rectangle(*e.mu, *e.pi, 3);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto r = check_preorder_rectangle(*make_Perm().mu, *make_Perm().pi, 4, 2);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(Rectangle, BrokenComultiplicationIsCaught) {
    auto e = make_Perm();
    ComultSystem bad = *e.pi;
    // plain restriction of cycles via the induced order of labels, not first return
    bad.pi = [](const GroundSet& S, const GroundSet& T, const Element& z) {
        auto cut = [&](const GroundSet& A) {
            std::vector<Label> img;
            for (Label a : A) img.push_back(a);
            if (img.size() >= 2) std::rotate(img.begin(), img.begin() + 1, img.end());
            if (z.kind() == Element::Kind::Unit || A.empty()) return Element::unit();
            return Element::permutation(A, img);
        };
        return std::make_pair(cut(S), cut(T));
    };
    EXPECT_EQ(check_preorder_rectangle(*e.mu, bad, 3).status, Status::Fail);
}

TEST(Limits, CeilingFromEnvironment) {
    EXPECT_NO_THROW(require_within_ceiling(4));
    EXPECT_THROW(require_within_ceiling(6), std::invalid_argument);
    EXPECT_THROW(require_within_ceiling(-1), std::invalid_argument);
    setenv("SPECIES_FORGE_CEILING", "3", 1);
    EXPECT_THROW(require_within_ceiling(4), std::invalid_argument);
    setenv("SPECIES_FORGE_CEILING", "x", 1);
    EXPECT_THROW(require_within_ceiling(1), std::invalid_argument);
    unsetenv("SPECIES_FORGE_CEILING");
}
