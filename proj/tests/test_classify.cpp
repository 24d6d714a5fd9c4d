#include <gtest/gtest.h>

#include <set>

#include "species_forge/catalog.hpp"
#include "species_forge/classify.hpp"
#include "species_forge/hopf.hpp"

using namespace species_forge;

namespace {

Element pt(std::initializer_list<std::initializer_list<Label>> blocks) {
    std::vector<GroundSet> bs;
    for (auto b : blocks) bs.emplace_back(b);
    return Element::partition(bs);
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::string witness(const CheckReport& r) { return r.witness.value_or(""); }

std::vector<std::size_t> primitive_dims(const LinearizedHopf& h, int max_n, bool reversed = false) {
    std::vector<std::size_t> out;
    for (int n = 1; n <= max_n; ++n) out.push_back(primitives(h, GroundSet::range(n), reversed).basis.size());
    return out;
}

}  // namespace

TEST(Primitives, Dimensions) {
    EXPECT_EQ(primitive_dims(hopf_mu_mu(make_Pi()), 4), (std::vector<std::size_t>{1, 1, 1, 1}));
    EXPECT_EQ(primitive_dims(hopf_mu_mu(make_Perm()), 4), (std::vector<std::size_t>{1, 1, 2, 6}));
    EXPECT_EQ(primitive_dims(hopf_mu_mu(make_E_C(2)), 3), (std::vector<std::size_t>{2, 0, 0}));
    EXPECT_TRUE(primitives(hopf_mu_mu(make_Pi()), GroundSet{}).basis.empty());
}

TEST(Primitives, IndependentOfDecompositionOrder) {
    for (const auto& e : {make_Pi(), make_Perm(), make_E_C(2)}) {
        auto h = hopf_mu_mu(e);
        EXPECT_EQ(primitive_dims(h, 3), primitive_dims(h, 3, true)) << e.name;
    }
    // (∇^μ, Δ^π) for partitions has its own primitives; order must not matter there either
    auto h = hopf_mu_pi(make_Pi());
    EXPECT_EQ(primitive_dims(h, 4), primitive_dims(h, 4, true));
}

TEST(Primitives, AnnihilatedByEveryProperCoproduct) {
    auto h = hopf_mu_pi(make_Pi());
    for (int n = 1; n <= 4; ++n) {
        GroundSet I = GroundSet::range(n);
        for (const auto& v : primitives(h, I).basis)
            for (const auto& d : decompositions(I, 2, true)) EXPECT_TRUE(delta(h, d[0], d[1], v).is_zero());
    }
}

TEST(PrimitiveBasis, Examples) {
    auto Q = primitive_basis(*make_Pi().mu);
    EXPECT_EQ(Q.elements(GroundSet{1, 2, 3}), (std::vector<Element>{pt({{1, 2, 3}})}));
    EXPECT_TRUE(Q.elements(GroundSet{}).empty());
    auto C = primitive_basis(*make_Perm().mu);
    auto three = C.elements(GroundSet{1, 2, 3});
    ASSERT_EQ(three.size(), 2u);
    for (const auto& c : three) EXPECT_EQ(c.cycles().size(), 1u);
    auto E = primitive_basis(*make_E_C(2).mu);
    EXPECT_EQ(E.elements(GroundSet{1}).size(), 2u);
    EXPECT_TRUE(E.elements(GroundSet{1, 2}).empty());
}

TEST(PrimitiveBasis, SpansThePrimitives) {
    for (const auto& e : {make_Pi(), make_Perm(), make_E_C(2), make_E()}) {
        auto r = check_primitive_spans(*e.mu, 4);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto r = check_primitive_spans(*make_S(positive_entry(make_E_C(2))).mu, 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(PrimitiveBasis, FreeMonoidPrimitivesAreOneBlock) {
    for (const auto& Q : {positive_entry(make_E_C(2)), make_X_C(2), positive_entry(make_Perm())}) {
        auto r = check_free_primitives(Q, 3);
        EXPECT_TRUE(r.passed()) << Q.name << " " << witness(r);
    }
}

TEST(FMu, PartitionExample) {
    FMu f(*make_Pi().mu);
    Element X = Element::labeled({{GroundSet{1, 2}, pt({{1, 2}})}, {GroundSet{3}, pt({{3}})}});
    EXPECT_EQ(f.apply(X), pt({{1, 2}, {3}}));
    EXPECT_EQ(f.preimage(pt({{1, 2}, {3}})), X);
    EXPECT_EQ(f.shape(pt({{1, 3}, {2}})), pt({{1, 3}, {2}}));
}

TEST(FMu, PermutationCardinalities) {
    // Σ over set partitions of ∏ (|B| - 1)! equals n!
    for (int n = 0; n <= 5; ++n) {
        long long total = 0;
        for (const auto& X : set_partitions(GroundSet::range(n))) {
            long long prod = 1;
            for (const auto& b : X) prod *= factorial(static_cast<int>(b.size()) - 1);
            total += prod;
        }
        EXPECT_EQ(total, factorial(n));
        if (n <= 4) {
            FMu f(*make_Perm().mu);
            EXPECT_EQ(static_cast<long long>(f.source().species.elements(GroundSet::range(n)).size()), total);
        }
    }
}

TEST(FMu, BijectiveAndIntertwining) {
    for (const auto& e : {make_Pi(), make_Perm(), make_E_C(2)}) {
        auto r = check_f_mu(*e.mu, 4);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto s = make_S(positive_entry(make_E_C(2)));
    auto r = check_f_mu(*s.mu, 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(FMu, NonSelfCompatibleInputFailsPrecondition) {
    auto r = check_f_mu(*make_L().mu, 3);
    EXPECT_EQ(r.status, Status::Fail);
    EXPECT_EQ(witness(r).rfind("precondition", 0), 0u);
}

TEST(FPi, IdentityOnColoredSets) {
    auto e = make_E_C(2);
    FPi f(*e.pi);
    for (int n = 0; n <= 3; ++n)
        for (const auto& x : e.species.elements(GroundSet::range(n))) EXPECT_EQ(f.apply(x), x);
    auto r = check_f_pi(*e.pi, 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(FPi, FreeMonoidOnSingletons) {
    auto s = with_inverse_pi(make_S(make_X_C(2)));
    FPi f(*s.pi);
    Element h = Element::map(GroundSet{1, 2, 3}, {1, 0, 1});
    Element want = Element::labeled({{GroundSet{1}, Element::map(GroundSet{1}, {1})},
                                     {GroundSet{2}, Element::map(GroundSet{2}, {0})},
                                     {GroundSet{3}, Element::map(GroundSet{3}, {1})}});
    EXPECT_EQ(f.apply(h), want);
    auto r = check_f_pi(*s.pi, 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}

TEST(FPi, NonBijectiveComultiplicationFailsPrecondition) {
    auto r = check_f_pi(*make_Pi().pi, 3);
    EXPECT_EQ(r.status, Status::Fail);
}

TEST(FPi, LinearlySelfDualPrimitivesSitInDegreeOne) {
    for (const auto& e : {make_E_C(2), make_E_C(3)}) {
        auto h = hopf_mu_pi(e);
        EXPECT_TRUE(check_lsd_primitives(h, 4).passed()) << e.name;
        EXPECT_EQ(primitives(h, GroundSet{1}).basis.size(), 3u - (e.name == "E_C:2"));
    }
    EXPECT_FALSE(check_lsd_primitives(hopf_mu_mu(make_Pi()), 3).passed());
}

TEST(NablaX, PartitionsOnTwoLabels) {
    auto h = hopf_mu_mu(make_Pi());
    auto d = nabla_X_decompose(h, GroundSet{1, 2});
    ASSERT_FALSE(d.precheck.has_value());
    ASSERT_FALSE(d.failure.has_value()) << *d.failure;
    ASSERT_EQ(d.components.size(), 2u);
    std::map<Element, std::vector<Vec>> by;
    for (const auto& c : d.components) by[c.partition] = c.spanning;
    // up to scale, the one-block component is {{1,2}} and the split one is {{1},{2}}
    ASSERT_EQ(by[pt({{1, 2}})].size(), 1u);
    EXPECT_EQ(by[pt({{1, 2}})][0].size(), 1u);
    EXPECT_NE(by[pt({{1, 2}})][0].coeff(pt({{1, 2}})), 0);
    ASSERT_EQ(by[pt({{1}, {2}})].size(), 1u);
    EXPECT_EQ(by[pt({{1}, {2}})][0], Vec(pt({{1}, {2}})));
    auto ker = delta_kernel(h, GroundSet{1}, GroundSet{2});
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_EQ(ker[0], Vec(pt({{1, 2}})));
}

TEST(NablaX, PermutationDimensionsByType) {
    auto d = nabla_X_decompose(hopf_mu_mu(make_Perm()), GroundSet{1, 2, 3});
    ASSERT_FALSE(d.failure.has_value()) << *d.failure;
    std::map<std::size_t, std::size_t> by_blocks;
    for (const auto& c : d.components) by_blocks[c.partition.block_count()] += c.spanning.size();
    EXPECT_EQ(by_blocks[1], 2u);
    EXPECT_EQ(by_blocks[2], 3u);
    EXPECT_EQ(by_blocks[3], 1u);
    EXPECT_EQ(d.dim, 6u);
}

TEST(NablaX, CertificatesHold) {
    for (const auto& e : {make_Pi(), make_Perm(), make_E_C(2)}) {
        auto r = check_contained(hopf_mu_mu(e), 4);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    for (const auto& e : {make_Pi(), make_Perm()}) {
        auto r = check_contained(hopf_mu_pi(e), 3);
        EXPECT_TRUE(r.passed()) << e.name << " " << witness(r);
    }
    auto r = check_contained(hopf_mu_pi(make_L()), 3);
    EXPECT_EQ(r.status, Status::Fail);
}

TEST(SSD, CommutativeCocommutativeCatalogEntries) {
    auto s = make_S(positive_entry(make_E_C(2)));
    auto r = check_ssd(hopf_mu_mu(*s.mu), 3);
    EXPECT_TRUE(r.passed()) << witness(r);
}
