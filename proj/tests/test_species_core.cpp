#include <gtest/gtest.h>

#include <random>
#include <set>

#include "species_forge/catalog.hpp"
#include "species_forge/linalg.hpp"
#include "species_forge/species.hpp"
#include "species_forge/vec.hpp"

using namespace species_forge;

namespace {

// Ordered set compositions by the recurrence a(n) = sum_k C(n,k) a(n-k).
long long fubini(int n) {
    std::vector<long long> a(n + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        long long binom = 1;
        for (int k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            a[m] += binom * a[m - k];
        }
    }
    return a[n];
}

// Bell numbers from the Bell triangle.
long long bell(int n) {
    std::vector<long long> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<long long> next{row.back()};
        for (long long v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.front();
}

Element pt(std::initializer_list<std::initializer_list<Label>> blocks) {
    std::vector<GroundSet> bs;
    for (auto b : blocks) bs.emplace_back(b);
    return Element::partition(bs);
}

}  // namespace

TEST(GroundSet, SortsAndRejectsRepeats) {
    GroundSet s{3, 1, 2};
    EXPECT_EQ(s.labels(), (std::vector<Label>{1, 2, 3}));
    EXPECT_EQ(s.str(), "{1,2,3}");
    EXPECT_THROW((GroundSet{1, 1}), std::invalid_argument);
    EXPECT_THROW((GroundSet{-1}), std::invalid_argument);
    EXPECT_TRUE(GroundSet{}.empty());
}

TEST(GroundSet, SetOperations) {
    GroundSet a{1, 2, 3}, b{3, 4};
    EXPECT_EQ(set_union(a, b), (GroundSet{1, 2, 3, 4}));
    EXPECT_EQ(set_intersection(a, b), (GroundSet{3}));
    EXPECT_EQ(set_difference(a, b), (GroundSet{1, 2}));
    EXPECT_FALSE(disjoint(a, b));
    EXPECT_THROW(union_of({a, b}), std::invalid_argument);
}

TEST(Decompositions, PairsOfTwoElementSetInDocumentedOrder) {
    auto d = decompositions(GroundSet{1, 2}, 2, false);
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0], (Decomposition{GroundSet{}, GroundSet{1, 2}}));
    EXPECT_EQ(d[1], (Decomposition{GroundSet{1}, GroundSet{2}}));
    EXPECT_EQ(d[2], (Decomposition{GroundSet{2}, GroundSet{1}}));
    EXPECT_EQ(d[3], (Decomposition{GroundSet{1, 2}, GroundSet{}}));
}

TEST(Decompositions, EmptySetSingleTuple) {
    auto d = decompositions(GroundSet{}, 1, false);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_TRUE(d[0][0].empty());
    EXPECT_TRUE(decompositions(GroundSet{1}, 2, true).empty());
}

TEST(Decompositions, CountsMatchRecurrences) {
    for (int n = 0; n <= 5; ++n) {
        GroundSet I = GroundSet::range(n);
        EXPECT_EQ(decompositions(I, 2, false).size(), std::size_t{1} << n);
        long long total = n == 0 ? 1 : 0;  // the empty composition of ∅
        for (int k = 1; k <= n; ++k) total += static_cast<long long>(decompositions(I, k, true).size());
        EXPECT_EQ(total, fubini(n)) << "n=" << n;
    }
    EXPECT_EQ(fubini(3), 13);
    EXPECT_EQ(fubini(4), 75);
}

TEST(Decompositions, EveryTupleCoversOnceAndDisjointly) {
    GroundSet I{1, 2, 3, 4};
    for (std::size_t k = 1; k <= 4; ++k) {
        auto ds = decompositions(I, k, false);
        std::set<Decomposition> seen(ds.begin(), ds.end());
        EXPECT_EQ(seen.size(), ds.size());
        for (const auto& d : ds) EXPECT_EQ(union_of(d), I);
    }
}

TEST(SetPartitions, BellNumbers) {
    for (int n = 0; n <= 6; ++n)
        EXPECT_EQ(static_cast<long long>(set_partitions(GroundSet::range(n)).size()), bell(n));
}

TEST(Bijection, ComposeInvertRestrict) {
    Bijection s(GroundSet{1, 2, 3}, GroundSet{1, 2, 3}, {2, 3, 1});
    EXPECT_EQ(s.after(s.inverse()), Bijection::identity(GroundSet{1, 2, 3}));
    EXPECT_EQ(s.restrict_to(GroundSet{1, 3}).target(), (GroundSet{1, 2}));
    EXPECT_EQ(all_bijections(GroundSet{1, 2, 3}, GroundSet{4, 5, 6}).size(), 6u);
    EXPECT_THROW(s.after(Bijection::identity(GroundSet{1, 2})), std::invalid_argument);
}

TEST(Element, CanonicalForms) {
    EXPECT_EQ(pt({{3}, {2, 1}}), pt({{1, 2}, {3}}));
    EXPECT_EQ(pt({{3}, {2, 1}}).str(), "{{1,2},{3}}");
    EXPECT_EQ(Element::map(GroundSet{1, 2}, {0, 1}).str(), "{1:0,2:1}");
    EXPECT_EQ(Element::order({2, 1, 3}).str(), "(2,1,3)");
    Element c = Element::permutation(GroundSet{1, 2, 3, 4}, {3, 4, 2, 1});  // 1->3->2->4->1
    EXPECT_EQ(c.str(), "(1,3,2,4)");
    EXPECT_EQ(Element::partition({}), Element::unit());
    EXPECT_THROW(Element::partition({GroundSet{1, 2}, GroundSet{2}}), std::invalid_argument);
}

TEST(Vec, TensorAndTwist) {
    Element x = Element::map(GroundSet{1}, {0});
    Element y = Element::map(GroundSet{2}, {1});
    TensorVec t = tensor(Rational(2) * Vec(x), Rational(3) * Vec(y));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.coeff({x, y}), 6);
    TensorVec s = twist(t, {1, 0});
    EXPECT_EQ(s.parts(), (std::vector<GroundSet>{GroundSet{2}, GroundSet{1}}));
    EXPECT_EQ(s.coeff({y, x}), 6);
    EXPECT_TRUE(tensor(Vec(GroundSet{1}), Vec(y)).is_zero());
    EXPECT_THROW(tensor(Vec(x), Vec(x)), std::invalid_argument);
}

TEST(Vec, VectorSpaceAxiomsOnRandomInputs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    GroundSet I{1, 2, 3};
    auto basis = all_partitions(I);
    auto rnd = [&] {
        Vec v(I);
        for (const auto& b : basis) v.add(b, Rational(num(rng), den(rng)));
        return v;
    };
    for (int trial = 0; trial < 50; ++trial) {
        Vec a = rnd(), b = rnd(), c = rnd();
        Rational s(num(rng), den(rng)), r(num(rng), den(rng));
        s.canonicalize();
        r.canonicalize();
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(s * (a + b), s * a + s * b);
        EXPECT_EQ((s + r) * a, s * a + r * a);
        EXPECT_EQ((s * r) * a, s * (r * a));
        Vec mixed = a - a + b;
        for (const auto& [x, coeff] : mixed.terms()) EXPECT_NE(coeff, 0) << x.str();
    }
}

TEST(Linalg, KernelAndRank) {
    Matrix m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    EXPECT_EQ(rank(m, 3), 2u);
    Matrix k = kernel(m, 3);
    ASSERT_EQ(k.size(), 1u);
    for (const auto& row : m) {
        Rational dot = 0;
        for (int j = 0; j < 3; ++j) dot += row[j] * k[0][j];
        EXPECT_EQ(dot, 0);
    }
    EXPECT_EQ(k[0][2], 1);  // the free coordinate
}

TEST(Linalg, RankAgreesWithTranspose) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix m(4, RowVector(5)), t(5, RowVector(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 5; ++j) t[j][i] = m[i][j] = Rational(d(rng), 1 + (i + j) % 3);
        std::size_t r = rank(m, 5);
        EXPECT_EQ(r, rank(t, 4));
        EXPECT_EQ(kernel(m, 5).size(), 5 - r);
    }
}

TEST(Transport, BuiltinsPassExhaustively) {
    for (const auto& e : {make_Pi(), make_Perm(), make_L(), make_E_C(2), make_E()})
        for (int n = 0; n <= 4; ++n) {
            auto r = transport_check(e.species, GroundSet::range(n));
            EXPECT_TRUE(r.passed()) << e.name << " n=" << n << " " << r.witness.value_or("");
        }
}

TEST(Transport, BrokenSpeciesIsCaught) {
    SetSpecies broken = make_Pi().species;
    broken.name = "broken";
    // drop the block structure: every partition goes to the one-block partition
    broken.transport = [](const Bijection& s, const Element& x) {
        if (x.kind() == Element::Kind::Unit) return x;
        return Element::partition({s.apply(x.ground())});
    };
    auto r = transport_check(broken, GroundSet{1, 2, 3});
    EXPECT_EQ(r.status, Status::Fail);
    ASSERT_TRUE(r.witness.has_value());
}

TEST(Transport, ComponentSizeDependsOnlyOnCardinality) {
    for (const auto& e : {make_Pi(), make_Perm(), make_E_C(2)}) {
        EXPECT_EQ(e.species.elements(GroundSet{1, 2, 3}).size(), e.species.elements(GroundSet{4, 7, 9}).size());
    }
}
