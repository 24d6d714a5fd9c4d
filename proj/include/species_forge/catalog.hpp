#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "species_forge/element.hpp"
#include "species_forge/ground_set.hpp"
#include "species_forge/report.hpp"
#include "species_forge/species.hpp"

namespace species_forge {

using MuFn = std::function<Element(const GroundSet&, const GroundSet&, const Element&, const Element&)>;
using PiFn = std::function<std::pair<Element, Element>(const GroundSet&, const GroundSet&, const Element&)>;

/// Natural maps P[S] x P[T] -> P[S ⊔ T].
struct MultSystem {
    std::string name;
    SetSpecies species;
    MuFn mu;
};

/// Natural maps P[S ⊔ T] -> P[S] x P[T].
struct ComultSystem {
    std::string name;
    SetSpecies species;
    PiFn pi;
};

/// A species with its systems and the properties it claims for them.
///
/// Claim keys are "mu.<property>" and "pi.<property>" with property one of
/// associative, commutative, unital, injective, surjective, self_compatible
/// (for mu) and coassociative, cocommutative, counital, injective, surjective,
/// bijective, self_compatible (for pi).
struct CatalogEntry {
    std::string name;
    SetSpecies species;
    std::optional<MultSystem> mu;
    std::optional<ComultSystem> pi;
    std::map<std::string, bool> claims;
    bool singleton_supported = false;  // nonempty only on one-element sets
};

// Building blocks on elements. Unit arguments are the identity for unions.

inline Element map_union(const Element& x, const Element& y) {
    if (x.kind() == Element::Kind::Unit) return y;
    if (y.kind() == Element::Kind::Unit) return x;
    GroundSet g = set_union(x.ground(), y.ground());
    if (g.size() != x.ground().size() + y.ground().size()) throw std::invalid_argument("map_union: overlap");
    std::vector<int> c(g.size());
    for (Label a : x.ground()) c[g.index_of(a)] = x.color(a);
    for (Label a : y.ground()) c[g.index_of(a)] = y.color(a);
    return Element::map(g, c);
}

inline Element map_restrict(const Element& h, const GroundSet& S) {
    if (S.empty()) return Element::unit();
    std::vector<int> c;
    for (Label a : S) c.push_back(h.color(a));
    return Element::map(S, c);
}

inline Element partition_union(const Element& x, const Element& y) {
    if (x.kind() == Element::Kind::Unit) return y;
    if (y.kind() == Element::Kind::Unit) return x;
    auto bs = x.blocks();
    auto more = y.blocks();
    bs.insert(bs.end(), more.begin(), more.end());
    return Element::partition(bs);
}

/// Z|_S = {B ∩ S : B ∈ Z} - {∅}.
inline Element partition_restrict(const Element& z, const GroundSet& S) {
    if (S.empty()) return Element::unit();
    std::vector<GroundSet> bs;
    for (const auto& b : z.blocks()) {
        GroundSet c = set_intersection(b, S);
        if (!c.empty()) bs.push_back(std::move(c));
    }
    return Element::partition(bs);
}

/// ℓ₁ * ℓ₂: every label of ℓ₂ comes after every label of ℓ₁.
inline Element order_concat(const Element& x, const Element& y) {
    if (x.kind() == Element::Kind::Unit) return y;
    if (y.kind() == Element::Kind::Unit) return x;
    auto seq = x.sequence();
    auto more = y.sequence();
    seq.insert(seq.end(), more.begin(), more.end());
    if (x.is_colored_order() || y.is_colored_order()) {
        auto col = x.order_colors();
        auto mc = y.order_colors();
        col.insert(col.end(), mc.begin(), mc.end());
        return Element::colored_order(seq, col);
    }
    return Element::order(seq);
}

inline Element order_restrict(const Element& l, const GroundSet& S) {
    if (S.empty()) return Element::unit();
    std::vector<Label> seq;
    std::vector<int> col;
    auto full = l.sequence();
    auto colors = l.order_colors();
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (!S.contains(full[i])) continue;
        seq.push_back(full[i]);
        if (!colors.empty()) col.push_back(colors[i]);
    }
    return l.is_colored_order() ? Element::colored_order(seq, col) : Element::order(seq);
}

/// Union of function graphs of permutations with disjoint supports.
inline Element permutation_union(const Element& x, const Element& y) {
    if (x.kind() == Element::Kind::Unit) return y;
    if (y.kind() == Element::Kind::Unit) return x;
    GroundSet g = set_union(x.ground(), y.ground());
    std::vector<Label> img(g.size());
    for (Label a : x.ground()) img[g.index_of(a)] = x.image(a);
    for (Label a : y.ground()) img[g.index_of(a)] = y.image(a);
    return Element::permutation(g, img);
}

/// The permutation of S sending a to the first of λ(a), λ²(a), ... lying in S.
inline Element permutation_first_return(const Element& l, const GroundSet& S) {
    if (S.empty()) return Element::unit();
    std::vector<Label> img;
    for (Label a : S) {
        Label b = l.image(a);
        while (!S.contains(b)) b = l.image(b);
        img.push_back(b);
    }
    return Element::permutation(S, img);
}

inline Element labeled_union(const Element& x, const Element& y) {
    if (x.kind() == Element::Kind::Unit) return y;
    if (y.kind() == Element::Kind::Unit) return x;
    auto lb = x.labeled_blocks();
    auto more = y.labeled_blocks();
    lb.insert(lb.end(), more.begin(), more.end());
    return Element::labeled(std::move(lb));
}

namespace detail {

inline MultSystem union_system(std::string name, SetSpecies P,
                               std::function<Element(const Element&, const Element&)> op) {
    MultSystem m{std::move(name), std::move(P), nullptr};
    m.mu = [op = std::move(op)](const GroundSet&, const GroundSet&, const Element& x, const Element& y) {
        return op(x, y);
    };
    return m;
}

inline ComultSystem restriction_system(std::string name, SetSpecies P,
                                       std::function<Element(const Element&, const GroundSet&)> op) {
    ComultSystem c{std::move(name), std::move(P), nullptr};
    c.pi = [op = std::move(op)](const GroundSet& S, const GroundSet& T, const Element& z) {
        return std::make_pair(op(z, S), op(z, T));
    };
    return c;
}

inline std::map<std::string, bool> standard_claims(bool mu_commutative, bool mu_surjective, bool pi_injective) {
    return {
        {"mu.associative", true},
        {"mu.commutative", mu_commutative},
        {"mu.unital", true},
        {"mu.injective", true},
        {"mu.surjective", mu_surjective},
        {"mu.self_compatible", mu_commutative},
        {"pi.coassociative", true},
        {"pi.cocommutative", true},
        {"pi.counital", true},
        {"pi.injective", pi_injective},
        {"pi.surjective", true},
        {"pi.bijective", pi_injective},
        {"pi.self_compatible", pi_injective},
    };
}

}  // namespace detail

inline CatalogEntry make_E_C(int colors) {
    if (colors < 0) throw std::invalid_argument("E_C: negative color count");
    CatalogEntry e;
    e.name = colors == 1 ? "E" : "E_C:" + std::to_string(colors);
    e.species = {e.name, memoize([colors](const GroundSet& I) { return all_maps(I, colors); }), transport_map};
    e.mu = detail::union_system("disjoint union", e.species, map_union);
    e.pi = detail::restriction_system("restriction", e.species, map_restrict);
    e.claims = detail::standard_claims(true, true, true);
    return e;
}

inline CatalogEntry make_E() { return make_E_C(1); }

/// X_C: C colors on each one-element set, nothing elsewhere.
inline CatalogEntry make_X_C(int colors) {
    if (colors < 0) throw std::invalid_argument("X_C: negative color count");
    CatalogEntry e;
    e.name = "X_C:" + std::to_string(colors);
    e.species = {e.name,
                 [colors](const GroundSet& I) {
                     return I.size() == 1 ? all_maps(I, colors) : std::vector<Element>{};
                 },
                 transport_map};
    e.singleton_supported = true;
    return e;
}

inline CatalogEntry make_Pi() {
    CatalogEntry e;
    e.name = "Pi";
    e.species = {e.name, memoize(all_partitions), transport_partition};
    e.mu = detail::union_system("disjoint union", e.species, partition_union);
    e.pi = detail::restriction_system("induced partition", e.species, partition_restrict);
    e.claims = detail::standard_claims(true, false, false);
    return e;
}

inline CatalogEntry make_L() {
    CatalogEntry e;
    e.name = "L";
    e.species = {e.name, memoize(all_orders), transport_order};
    e.mu = detail::union_system("concatenation", e.species, order_concat);
    e.pi = detail::restriction_system("induced suborder", e.species, order_restrict);
    e.claims = detail::standard_claims(false, false, false);
    return e;
}

inline CatalogEntry make_Perm() {
    CatalogEntry e;
    e.name = "Perm";
    e.species = {e.name, memoize(all_permutations), transport_permutation};
    e.mu = detail::union_system("union of cycles", e.species, permutation_union);
    e.pi = {ComultSystem{"first return", e.species,
                         [](const GroundSet& S, const GroundSet& T, const Element& z) {
                             return std::make_pair(permutation_first_return(z, S), permutation_first_return(z, T));
                         }}};
    e.claims = detail::standard_claims(true, false, false);
    return e;
}

/// Q-labeled set partitions with μ = ∪. Q must be empty over ∅.
inline CatalogEntry make_S(const CatalogEntry& Q) {
    if (!Q.species.elements(GroundSet{}).empty())
        throw std::invalid_argument("S(Q): " + Q.name + " has elements over the empty set");
    CatalogEntry e;
    e.name = "S(" + Q.name + ")";
    ElementsFn inner = Q.species.elements;
    TransportFn inner_t = Q.species.transport;
    e.species = {e.name, memoize([inner](const GroundSet& I) { return all_labeled(I, inner); }),
                 [inner_t](const Bijection& s, const Element& x) { return transport_labeled(s, x, inner_t); }};
    e.mu = detail::union_system("union", e.species, labeled_union);
    e.claims = {
        {"mu.associative", true}, {"mu.commutative", true},  {"mu.unital", true},
        {"mu.injective", true},   {"mu.surjective", Q.singleton_supported}, {"mu.self_compatible", true},
    };
    return e;
}

/// Q restricted to nonempty sets, as a catalog entry without systems.
inline CatalogEntry positive_entry(const CatalogEntry& P) {
    CatalogEntry e;
    e.name = P.name;
    e.species = positive_part(P.species);
    e.species.name = P.name;
    e.singleton_supported = P.singleton_supported;
    return e;
}

// Inverses of bijective systems, tabulated on demand.

/// π = μ^{-1}; evaluating on an element with no preimage or several throws.
inline ComultSystem inverse_comult(const MultSystem& m) {
    auto cache = std::make_shared<std::map<std::pair<GroundSet, GroundSet>, std::map<Element, std::vector<std::pair<Element, Element>>>>>();
    auto lock = std::make_shared<std::mutex>();
    ComultSystem c{m.name + " inverse", m.species, nullptr};
    c.pi = [m, cache, lock](const GroundSet& S, const GroundSet& T, const Element& z) {
        std::lock_guard g(*lock);
        auto key = std::make_pair(S, T);
        auto it = cache->find(key);
        if (it == cache->end()) {
            std::map<Element, std::vector<std::pair<Element, Element>>> fib;
            for (const auto& x : m.species.elements(S))
                for (const auto& y : m.species.elements(T)) fib[m.mu(S, T, x, y)].emplace_back(x, y);
            it = cache->emplace(key, std::move(fib)).first;
        }
        auto f = it->second.find(z);
        if (f == it->second.end() || f->second.size() != 1)
            throw std::domain_error(m.name + " is not bijective at " + z.str() + " over (" + S.str() + "," + T.str() + ")");
        return f->second.front();
    };
    return c;
}

/// μ = π^{-1}; evaluating on a pair with no preimage or several throws.
inline MultSystem inverse_mult(const ComultSystem& p) {
    auto cache = std::make_shared<std::map<std::pair<GroundSet, GroundSet>, std::map<std::pair<Element, Element>, std::vector<Element>>>>();
    auto lock = std::make_shared<std::mutex>();
    MultSystem m{p.name + " inverse", p.species, nullptr};
    m.mu = [p, cache, lock](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        std::lock_guard g(*lock);
        auto key = std::make_pair(S, T);
        auto it = cache->find(key);
        if (it == cache->end()) {
            std::map<std::pair<Element, Element>, std::vector<Element>> fib;
            for (const auto& z : p.species.elements(set_union(S, T))) fib[p.pi(S, T, z)].push_back(z);
            it = cache->emplace(key, std::move(fib)).first;
        }
        auto f = it->second.find({x, y});
        if (f == it->second.end() || f->second.size() != 1)
            throw std::domain_error(p.name + " is not bijective at (" + x.str() + "," + y.str() + ")");
        return f->second.front();
    };
    return m;
}

/// Adds π = ∪^{-1} to an S(Q) entry whose Q lives on singletons.
inline CatalogEntry with_inverse_pi(CatalogEntry e) {
    if (!e.mu) throw std::invalid_argument(e.name + " has no multiplicative system to invert");
    e.pi = inverse_comult(*e.mu);
    for (auto k : {"coassociative", "cocommutative", "counital", "injective", "surjective", "bijective", "self_compatible"})
        e.claims[std::string("pi.") + k] = true;
    return e;
}

// Naturality.

/// transport(σ, μ(x, y)) = μ(σx, σy) and μ(x, y) ∈ P[S ⊔ T], for every
/// bijection of I = {1..n}, every decomposition and every pair, n ≤ max_n.
inline CheckReport check_mu_naturality(const MultSystem& m, int max_n) {
    const auto& P = m.species;
    for (int n = 0; n <= max_n; ++n) {
        GroundSet I = GroundSet::range(n);
        auto here = P.elements(I);
        std::set<Element> valid(here.begin(), here.end());
        auto bij = all_bijections(I, I);
        for (const auto& d : decompositions(I, 2, false)) {
            const auto& S = d[0];
            const auto& T = d[1];
            for (const auto& x : P.elements(S))
                for (const auto& y : P.elements(T)) {
                    Element z = m.mu(S, T, x, y);
                    if (!valid.count(z))
                        return make_report("mu_naturality", P.name, n,
                                           "mu(" + x.str() + "," + y.str() + ") = " + z.str() + " is not in P[" + I.str() + "]");
                    for (const auto& s : bij) {
                        GroundSet sS = s.apply(S), sT = s.apply(T);
                        Element lhs = P.transport(s, z);
                        Element rhs = m.mu(sS, sT, P.transport(s.restrict_to(S), x), P.transport(s.restrict_to(T), y));
                        if (!(lhs == rhs))
                            return make_report("mu_naturality", P.name, n,
                                               "sigma=" + s.str() + " x=" + x.str() + " y=" + y.str());
                    }
                }
        }
    }
    return make_report("mu_naturality", P.name, max_n, std::nullopt);
}

inline CheckReport check_pi_naturality(const ComultSystem& c, int max_n) {
    const auto& P = c.species;
    for (int n = 0; n <= max_n; ++n) {
        GroundSet I = GroundSet::range(n);
        auto bij = all_bijections(I, I);
        for (const auto& d : decompositions(I, 2, false)) {
            const auto& S = d[0];
            const auto& T = d[1];
            auto ps = P.elements(S), pt = P.elements(T);
            std::set<Element> vs(ps.begin(), ps.end()), vt(pt.begin(), pt.end());
            for (const auto& z : P.elements(I)) {
                auto [x, y] = c.pi(S, T, z);
                if (!vs.count(x) || !vt.count(y))
                    return make_report("pi_naturality", P.name, n, "pi(" + z.str() + ") leaves P[S] x P[T] for S=" + S.str());
                for (const auto& s : bij) {
                    GroundSet sS = s.apply(S), sT = s.apply(T);
                    auto [x2, y2] = c.pi(sS, sT, P.transport(s, z));
                    if (!(x2 == P.transport(s.restrict_to(S), x)) || !(y2 == P.transport(s.restrict_to(T), y)))
                        return make_report("pi_naturality", P.name, n, "sigma=" + s.str() + " z=" + z.str() + " S=" + S.str());
                }
            }
        }
    }
    return make_report("pi_naturality", P.name, max_n, std::nullopt);
}

// Perturbed systems for negative controls. Each is associative and unital and
// violates exactly one of: commutativity, injectivity, the image condition.

/// Colored linear orders under concatenation (or its opposite): not commutative.
inline CatalogEntry make_colored_L(int colors, bool opposite) {
    CatalogEntry e;
    e.name = "ColoredL:" + std::to_string(colors) + (opposite ? ":op" : "");
    e.species = {e.name, memoize([colors](const GroundSet& I) {
                     std::vector<Element> out;
                     if (I.empty()) return std::vector<Element>{Element::unit()};
                     for (const auto& o : all_orders(I))
                         for (const auto& m : all_maps(GroundSet::range(static_cast<int>(I.size())), colors))
                             out.push_back(Element::colored_order(o.sequence(), m.data()));
                     return out;
                 }),
                 transport_order};
    e.mu = detail::union_system("concatenation", e.species, [opposite](const Element& x, const Element& y) {
        return opposite ? order_concat(y, x) : order_concat(x, y);
    });
    e.claims = {{"mu.associative", true}, {"mu.commutative", false}, {"mu.unital", true},
                {"mu.injective", true},   {"mu.self_compatible", false}};
    return e;
}

/// Maps avoiding the poison color plus the all-poison map; a product touching
/// poison is all-poison. Not injective.
inline CatalogEntry make_poison(int colors, int poison) {
    if (colors < 2 || poison < 0 || poison >= colors) throw std::invalid_argument("Poison: need 0 <= poison < colors, colors >= 2");
    CatalogEntry e;
    e.name = "Poison:" + std::to_string(colors) + ":" + std::to_string(poison);
    auto is_member = [poison](const Element& h) {
        if (h.kind() == Element::Kind::Unit) return true;
        int hits = 0;
        for (int c : h.data()) hits += c == poison;
        return hits == 0 || hits == static_cast<int>(h.data().size());
    };
    e.species = {e.name, memoize([colors, is_member](const GroundSet& I) {
                     std::vector<Element> out;
                     for (const auto& h : all_maps(I, colors))
                         if (is_member(h)) out.push_back(h);
                     return out;
                 }),
                 transport_map};
    e.mu = detail::union_system("poisoned union", e.species, [poison](const Element& x, const Element& y) {
        Element h = map_union(x, y);
        if (h.kind() == Element::Kind::Unit) return h;
        bool touched = false;
        for (int c : h.data()) touched |= c == poison;
        if (!touched) return h;
        return Element::map(h.ground(), std::vector<int>(h.ground().size(), poison));
    });
    e.claims = {{"mu.associative", true}, {"mu.commutative", true}, {"mu.unital", true},
                {"mu.injective", false},  {"mu.self_compatible", false}};
    return e;
}

/// Maps with (#labels colored in `bad`) <= k * (#labels colored outside `bad`),
/// under disjoint union. Injective and commutative; fails the image condition.
inline CatalogEntry make_deficit(int colors, std::vector<int> bad, int k) {
    std::set<int> badset(bad.begin(), bad.end());
    if (colors < 2 || badset.empty() || static_cast<int>(badset.size()) >= colors || k < 1)
        throw std::invalid_argument("Deficit: need a proper nonempty bad color set and k >= 1");
    CatalogEntry e;
    e.name = "Deficit:" + std::to_string(colors) + ":";
    for (auto it = badset.begin(); it != badset.end(); ++it) e.name += (it == badset.begin() ? "" : "+") + std::to_string(*it);
    e.name += ":" + std::to_string(k);
    e.species = {e.name, memoize([colors, badset, k](const GroundSet& I) {
                     std::vector<Element> out;
                     for (const auto& h : all_maps(I, colors)) {
                         int nbad = 0, ngood = 0;
                         for (int c : h.data()) (badset.count(c) ? nbad : ngood)++;
                         if (nbad <= k * ngood) out.push_back(h);
                     }
                     return out;
                 }),
                 transport_map};
    e.mu = detail::union_system("disjoint union", e.species, map_union);
    e.claims = {{"mu.associative", true}, {"mu.commutative", true}, {"mu.unital", true},
                {"mu.injective", true},   {"mu.self_compatible", false}};
    return e;
}

/// Which self-compatibility condition a perturbed system is built to break.
enum class Breakage { Commutative, Injective, Image };

struct Perturbation {
    CatalogEntry entry;
    Breakage breaks;
};

/// The i-th perturbed system drawn from `rng`; families rotate with i.
inline Perturbation random_perturbation(std::mt19937_64& rng, std::size_t i) {
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    switch (i % 3) {
        case 0:
            return {make_colored_L(pick(1, 2), pick(0, 1) == 1), Breakage::Commutative};
        case 1: {
            int c = pick(2, 3);
            return {make_poison(c, pick(0, c - 1)), Breakage::Injective};
        }
        default: {
            int c = pick(2, 3);
            std::vector<int> bad;
            for (int col = 0; col < c; ++col)
                if (pick(0, 1)) bad.push_back(col);
            if (bad.empty()) bad.push_back(pick(0, c - 1));
            if (static_cast<int>(bad.size()) == c) bad.erase(bad.begin() + pick(0, c - 1));
            return {make_deficit(c, bad, pick(1, 2)), Breakage::Image};
        }
    }
}

}  // namespace species_forge
