#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "species_forge/catalog.hpp"
#include "species_forge/hopf.hpp"

using namespace species_forge;

namespace {

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Brute-force fiber sizes of μ over all pairs, |S ⊔ T| = n.
struct FiberCount {
    bool injective = true;
    bool surjective = true;
};

FiberCount count_mu(const MultSystem& m, int max_n) {
    FiberCount fc;
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            std::map<Element, int> hits;
            for (const auto& x : m.species.elements(d[0]))
                for (const auto& y : m.species.elements(d[1])) hits[m.mu(d[0], d[1], x, y)]++;
            for (const auto& z : m.species.elements(GroundSet::range(n))) {
                int h = hits.count(z) ? hits[z] : 0;
                if (h > 1) fc.injective = false;
                if (h == 0) fc.surjective = false;
            }
        }
    return fc;
}

FiberCount count_pi(const ComultSystem& c, int max_n) {
    FiberCount fc;
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            std::map<std::pair<Element, Element>, int> hits;
            for (const auto& z : c.species.elements(GroundSet::range(n))) hits[c.pi(d[0], d[1], z)]++;
            for (const auto& x : c.species.elements(d[0]))
                for (const auto& y : c.species.elements(d[1])) {
                    int h = hits.count({x, y}) ? hits[{x, y}] : 0;
                    if (h > 1) fc.injective = false;
                    if (h == 0) fc.surjective = false;
                }
        }
    return fc;
}

Element perm(std::initializer_list<Label> ground, std::vector<Label> images) {
    return Element::permutation(GroundSet(ground), std::move(images));
}

}  // namespace

TEST(Catalog, ComponentSizes) {
    for (int n = 0; n <= 5; ++n) {
        GroundSet I = GroundSet::range(n);
        EXPECT_EQ(static_cast<long long>(make_L().species.elements(I).size()), factorial(n));
        EXPECT_EQ(static_cast<long long>(make_Perm().species.elements(I).size()), factorial(n));
        long long p3 = 1;
        for (int i = 0; i < n; ++i) p3 *= 3;
        EXPECT_EQ(static_cast<long long>(make_E_C(3).species.elements(I).size()), p3);
        EXPECT_EQ(make_E().species.elements(I).size(), 1u);
        EXPECT_EQ(make_X_C(2).species.elements(I).size(), n == 1 ? 2u : 0u);
    }
    // S(X_C:2)[n] = 2^n: singletons only, two labels each
    EXPECT_EQ(make_S(make_X_C(2)).species.elements(GroundSet::range(3)).size(), 8u);
    auto sec = make_S(positive_entry(make_E_C(2)));
    // partitions of {1,2,3}: one block (8), three of type 2+1 (4*2 = 8 each), all singletons (2^3 = 8)
    EXPECT_EQ(sec.species.elements(GroundSet::range(3)).size(), 8u + 3 * 8u + 8u);
}

TEST(Catalog, SWithElementsOverEmptySetIsRejected) {
    EXPECT_THROW(make_S(make_E_C(2)), std::invalid_argument);
    EXPECT_NO_THROW(make_S(positive_entry(make_E_C(2))));
}

TEST(Catalog, SystemsAreNatural) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_L(), make_Perm()}) {
        auto rm = check_mu_naturality(*e.mu, 3);
        EXPECT_TRUE(rm.passed()) << e.name << " " << rm.witness.value_or("");
        auto rp = check_pi_naturality(*e.pi, 3);
        EXPECT_TRUE(rp.passed()) << e.name << " " << rp.witness.value_or("");
    }
    auto s = with_inverse_pi(make_S(make_X_C(2)));
    EXPECT_TRUE(check_mu_naturality(*s.mu, 3).passed());
    EXPECT_TRUE(check_pi_naturality(*s.pi, 3).passed());
}

TEST(Catalog, BrokenNaturalityIsCaught) {
    auto e = make_Pi();
    MultSystem bad = *e.mu;
    // merge into one block whenever 1 is involved: not equivariant
    bad.mu = [](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        Element z = partition_union(x, y);
        if (z.kind() != Element::Kind::Unit && S.contains(1) && !T.empty()) return Element::partition({set_union(S, T)});
        return z;
    };
    EXPECT_EQ(check_mu_naturality(bad, 3).status, Status::Fail);
}

TEST(Catalog, ClaimsMatchBruteForceCounts) {
    for (const auto& e : {make_E(), make_E_C(2), make_Pi(), make_L(), make_Perm()}) {
        auto m = count_mu(*e.mu, 3);
        EXPECT_EQ(m.injective, e.claims.at("mu.injective")) << e.name;
        EXPECT_EQ(m.surjective, e.claims.at("mu.surjective")) << e.name;
        auto p = count_pi(*e.pi, 3);
        EXPECT_EQ(p.injective, e.claims.at("pi.injective")) << e.name;
        EXPECT_EQ(p.surjective, e.claims.at("pi.surjective")) << e.name;
    }
    EXPECT_TRUE(count_mu(*make_S(make_X_C(2)).mu, 3).surjective);
    EXPECT_FALSE(count_mu(*make_S(positive_entry(make_E_C(2))).mu, 3).surjective);
}

TEST(Catalog, RestrictionExamples) {
    // partitions induce partitions
    Element z = Element::partition({GroundSet{1, 3}, GroundSet{2, 4}});
    EXPECT_EQ(partition_restrict(z, GroundSet{1, 2, 3}).str(), "{{1,3},{2}}");
    // orders restrict to the induced suborder
    EXPECT_EQ(order_restrict(Element::order({3, 1, 4, 2}), GroundSet{1, 2, 3}).str(), "(3,1,2)");
    // 1->3->2->4->1 returns to {1,2} as 1->2->1 and to {3,4} as 3->4->3
    Element c = perm({1, 2, 3, 4}, {3, 4, 2, 1});
    EXPECT_EQ(permutation_first_return(c, GroundSet{1, 2}).str(), "(1,2)");
    EXPECT_EQ(permutation_first_return(c, GroundSet{3, 4}).str(), "(3,4)");
    EXPECT_EQ(permutation_first_return(c, GroundSet{1, 4}).str(), "(1,4)");
}

TEST(Catalog, SetLevelAxioms) {
    for (const auto& e : {make_E(), make_Pi(), make_L(), make_Perm()}) {
        auto h = hopf_mu_pi(e);
        for (Axiom a : {Axiom::Associative, Axiom::Unital, Axiom::Coassociative, Axiom::Counital}) {
            auto r = check_axiom(h, a, 3);
            EXPECT_TRUE(r.passed()) << e.name << " " << axiom_name(a) << " " << r.witness.value_or("");
        }
    }
}

TEST(Catalog, InverseSystemsThrowOffTheirDomain) {
    auto pi_inv = inverse_comult(*make_Pi().mu);
    Element z = Element::partition({GroundSet{1, 2}});
    EXPECT_THROW(pi_inv.pi(GroundSet{1}, GroundSet{2}, z), std::domain_error);
    auto e = make_E_C(2);
    auto mu_inv = inverse_mult(*e.pi);
    Element x = Element::map(GroundSet{1}, {1}), y = Element::map(GroundSet{2}, {0});
    EXPECT_EQ(mu_inv.mu(GroundSet{1}, GroundSet{2}, x, y), map_union(x, y));
}

TEST(Perturbation, EachFamilyBreaksItsCondition) {
    std::mt19937_64 rng(3);
    for (std::size_t i = 0; i < 9; ++i) {
        auto p = random_perturbation(rng, i);
        auto m = count_mu(*p.entry.mu, 3);
        auto h = hopf_mu_mu(*p.entry.mu);
        EXPECT_TRUE(check_axiom(h, Axiom::Associative, 3).passed()) << p.entry.name;
        EXPECT_TRUE(check_axiom(h, Axiom::Unital, 3).passed()) << p.entry.name;
        EXPECT_TRUE(check_mu_naturality(*p.entry.mu, 3).passed()) << p.entry.name;
        bool comm = check_axiom(h, Axiom::Commutative, 3).passed();
        switch (p.breaks) {
            case Breakage::Commutative: EXPECT_FALSE(comm) << p.entry.name; break;
            case Breakage::Injective:
                EXPECT_TRUE(comm);
                EXPECT_FALSE(m.injective) << p.entry.name;
                break;
            case Breakage::Image:
                EXPECT_TRUE(comm);
                EXPECT_TRUE(m.injective) << p.entry.name;
                break;
        }
    }
}

TEST(Perturbation, DeficitWitnessFailsImageCondition) {
    // bad color 1, good color 0, k = 1: λ = (1:bad, 2:good) on {1,2}, λ' = good on {3}.
    auto e = make_deficit(2, {1}, 1);
    const auto& m = *e.mu;
    Element l = Element::map(GroundSet{1, 2}, {1, 0});
    Element lp = Element::map(GroundSet{3}, {0});
    Element z = m.mu(GroundSet{1, 2}, GroundSet{3}, l, lp);
    // z is the product of (1:bad, 3:good) over A = {1,3} and (2:good) over B = {2}
    Element a = Element::map(GroundSet{1, 3}, {1, 0});
    Element b = Element::map(GroundSet{2}, {0});
    EXPECT_EQ(m.mu(GroundSet{1, 3}, GroundSet{2}, a, b), z);
    // but λ restricted to A ∩ S = {1} is bad-only, which is not an element
    EXPECT_TRUE(e.species.elements(GroundSet{1}).size() == 1u);
    EXPECT_EQ(e.species.elements(GroundSet{1})[0], Element::map(GroundSet{1}, {0}));
}
