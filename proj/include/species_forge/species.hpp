#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "species_forge/element.hpp"
#include "species_forge/ground_set.hpp"
#include "species_forge/report.hpp"

namespace species_forge {

using ElementsFn = std::function<std::vector<Element>(const GroundSet&)>;
using TransportFn = std::function<Element(const Bijection&, const Element&)>;

/// A set species presented by its components and its action on bijections.
struct SetSpecies {
    std::string name;
    ElementsFn elements;
    TransportFn transport;
};

/// Wraps the element enumerator in a per-ground-set cache.
inline ElementsFn memoize(ElementsFn f) {
    struct Cache {
        std::mutex m;
        std::map<GroundSet, std::vector<Element>> table;
    };
    auto cache = std::make_shared<Cache>();
    return [f = std::move(f), cache](const GroundSet& I) -> std::vector<Element> {
        {
            std::lock_guard lock(cache->m);
            auto it = cache->table.find(I);
            if (it != cache->table.end()) return it->second;
        }
        auto v = f(I);
        std::lock_guard lock(cache->m);
        return cache->table.emplace(I, std::move(v)).first->second;
    };
}

// Enumerators.

inline std::vector<Element> all_maps(const GroundSet& I, int colors) {
    std::vector<Element> out;
    if (I.empty()) return {Element::unit()};
    if (colors <= 0) return out;
    std::vector<int> digits(I.size(), 0);
    while (true) {
        out.push_back(Element::map(I, digits));
        std::size_t pos = I.size();
        while (pos-- > 0) {
            if (++digits[pos] < colors) break;
            digits[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

inline std::vector<Element> all_partitions(const GroundSet& I) {
    std::vector<Element> out;
    for (const auto& p : set_partitions(I)) out.push_back(Element::partition(p));
    return out;
}

inline std::vector<Element> all_orders(const GroundSet& I) {
    std::vector<Element> out;
    std::vector<Label> seq = I.labels();
    do {
        out.push_back(Element::order(seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

inline std::vector<Element> all_permutations(const GroundSet& I) {
    std::vector<Element> out;
    std::vector<Label> img = I.labels();
    do {
        out.push_back(I.empty() ? Element::unit() : Element::permutation(I, img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

/// Q-labeled set partitions of I, where `inner` lists Q's elements over a block.
inline std::vector<Element> all_labeled(const GroundSet& I, const ElementsFn& inner) {
    std::vector<Element> out;
    for (const auto& blocks : set_partitions(I)) {
        std::vector<std::vector<Element>> choices;
        bool empty = false;
        for (const auto& b : blocks) {
            choices.push_back(inner(b));
            if (choices.back().empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> idx(blocks.size(), 0);
        while (true) {
            std::vector<std::pair<GroundSet, Element>> lb;
            for (std::size_t i = 0; i < blocks.size(); ++i) lb.emplace_back(blocks[i], choices[i][idx[i]]);
            out.push_back(Element::labeled(std::move(lb)));
            std::size_t pos = blocks.size();
            bool done = true;
            while (pos-- > 0) {
                if (++idx[pos] < choices[pos].size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

// Transports.

inline Element transport_map(const Bijection& s, const Element& x) {
    if (x.kind() == Element::Kind::Unit) return x;
    std::vector<std::pair<Label, int>> pairs;
    for (Label a : x.ground()) pairs.emplace_back(s(a), x.color(a));
    std::sort(pairs.begin(), pairs.end());
    std::vector<Label> g;
    std::vector<int> c;
    for (auto [a, col] : pairs) {
        g.push_back(a);
        c.push_back(col);
    }
    return Element::map(GroundSet(g), c);
}

inline Element transport_partition(const Bijection& s, const Element& x) {
    if (x.kind() == Element::Kind::Unit) return x;
    std::vector<GroundSet> bs;
    for (const auto& b : x.blocks()) bs.push_back(s.apply(b));
    return Element::partition(bs);
}

inline Element transport_order(const Bijection& s, const Element& x) {
    if (x.kind() == Element::Kind::Unit) return x;
    std::vector<Label> seq;
    for (Label a : x.sequence()) seq.push_back(s(a));
    return x.is_colored_order() ? Element::colored_order(seq, x.order_colors()) : Element::order(seq);
}

/// σ p σ^{-1}.
inline Element transport_permutation(const Bijection& s, const Element& x) {
    if (x.kind() == Element::Kind::Unit) return x;
    GroundSet target = s.apply(x.ground());
    std::vector<Label> img(target.size());
    for (Label a : x.ground()) img[target.index_of(s(a))] = s(x.image(a));
    return Element::permutation(target, img);
}

inline Element transport_labeled(const Bijection& s, const Element& x, const TransportFn& inner) {
    if (x.kind() == Element::Kind::Unit) return x;
    std::vector<std::pair<GroundSet, Element>> lb;
    for (const auto& [b, q] : x.labeled_blocks()) lb.emplace_back(s.apply(b), inner(s.restrict_to(b), q));
    return Element::labeled(std::move(lb));
}

/// The species agreeing with P on nonempty sets and empty on ∅.
inline SetSpecies positive_part(const SetSpecies& P) {
    SetSpecies out = P;
    out.name = P.name + "_+";
    ElementsFn f = P.elements;
    out.elements = [f](const GroundSet& I) { return I.empty() ? std::vector<Element>{} : f(I); };
    return out;
}

/// Checks transport(id, x) = x, transport(σ∘τ, x) = transport(σ, transport(τ, x)),
/// and that each transport maps P[I] bijectively onto P[σI].
///
/// trials = 0 means all pairs of bijections I -> I; otherwise that many
/// seeded random pairs.
inline CheckReport transport_check(const SetSpecies& P, const GroundSet& I, std::size_t trials = 0,
                                   std::uint64_t seed = 0) {
    const std::string name = "transport";
    auto elems = P.elements(I);
    std::set<Element> here(elems.begin(), elems.end());
    auto fail = [&](std::string w) { return make_report(name, P.name, static_cast<int>(I.size()), std::move(w)); };

    if (here.size() != elems.size()) return fail("duplicate elements listed over " + I.str());
    for (const auto& x : elems) {
        if (x.ground() != I) return fail("element " + x.str() + " is not over " + I.str());
        if (!(P.transport(Bijection::identity(I), x) == x)) return fail("identity moves " + x.str());
    }

    // relabeling onto a disjoint copy of I exercises transport between distinct sets
    std::vector<Label> shifted;
    for (Label a : I) shifted.push_back(a + 100);
    GroundSet J(shifted);
    auto there_list = P.elements(J);
    std::set<Element> there(there_list.begin(), there_list.end());

    auto bij = all_bijections(I, I);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (trials == 0) {
        for (std::size_t a = 0; a < bij.size(); ++a)
            for (std::size_t b = 0; b < bij.size(); ++b) pairs.emplace_back(a, b);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> d(0, bij.size() - 1);
        for (std::size_t t = 0; t < trials; ++t) pairs.emplace_back(d(rng), d(rng));
    }

    for (const auto& s : bij) {
        std::vector<Label> img = s.images();
        for (Label& a : img) a += 100;
        Bijection shift(I, J, std::move(img));
        std::set<Element> image;
        for (const auto& x : elems) {
            Element y = P.transport(shift, x);
            if (!there.count(y)) return fail("transport along " + shift.str() + " sends " + x.str() + " outside P[J]");
            image.insert(y);
        }
        if (image.size() != there.size()) return fail("transport along " + shift.str() + " is not bijective");
    }

    for (auto [a, b] : pairs) {
        const auto& s = bij[a];
        const auto& t = bij[b];
        Bijection st = s.after(t);
        for (const auto& x : elems) {
            if (!(P.transport(st, x) == P.transport(s, P.transport(t, x))))
                return fail("composition fails for sigma=" + s.str() + " tau=" + t.str() + " on " + x.str());
        }
    }
    return make_report(name, P.name, static_cast<int>(I.size()), std::nullopt);
}

}  // namespace species_forge
