#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "species_forge/catalog.hpp"
#include "species_forge/hopf.hpp"
#include "species_forge/linalg.hpp"
#include "species_forge/report.hpp"

namespace species_forge {

// Primitive elements.

/// A basis of the primitive subspace of h over one ground set.
struct PrimitiveSlice {
    GroundSet ground;
    std::vector<Element> ambient;  // the basis of P[ground], in enumeration order
    std::vector<Vec> basis;
};

namespace detail {

/// Proper two-part decompositions (both parts nonempty), optionally reversed.
inline std::vector<Decomposition> proper_pairs(const GroundSet& I, bool reversed = false) {
    auto ds = decompositions(I, 2, true);
    if (reversed) std::reverse(ds.begin(), ds.end());
    return ds;
}

/// Rows expressing Δ_{S,T} in coordinates, one row per output tuple.
inline void append_delta_rows(const LinearizedHopf& h, const Coordinates& co, const GroundSet& S, const GroundSet& T,
                              Matrix& rows) {
    std::map<ElementTuple, RowVector> by_key;
    for (std::size_t j = 0; j < co.dim(); ++j)
        for (const auto& [k, c] : h.coproduct(S, T, co.basis()[j]).terms()) {
            auto it = by_key.try_emplace(k, RowVector(co.dim(), Rational(0))).first;
            it->second[j] = c;
        }
    for (auto& [k, r] : by_key) rows.push_back(std::move(r));
}

}  // namespace detail

/// ∩ ker Δ_{S,T} over decompositions with S, T nonempty; zero over ∅.
inline PrimitiveSlice primitives(const LinearizedHopf& h, const GroundSet& I, bool reversed_order = false) {
    PrimitiveSlice out{I, h.basis.elements(I), {}};
    if (I.empty()) return out;
    Coordinates co(out.ambient);
    Matrix rows;
    for (const auto& d : detail::proper_pairs(I, reversed_order)) detail::append_delta_rows(h, co, d[0], d[1], rows);
    for (const auto& k : kernel(rows, co.dim())) out.basis.push_back(co.to_vec(I, k));
    return out;
}

/// ker Δ_{S,T} on P[S ⊔ T].
inline std::vector<Vec> delta_kernel(const LinearizedHopf& h, const GroundSet& S, const GroundSet& T) {
    GroundSet I = set_union(S, T);
    Coordinates co(h.basis.elements(I));
    Matrix rows;
    detail::append_delta_rows(h, co, S, T, rows);
    std::vector<Vec> out;
    for (const auto& k : kernel(rows, co.dim())) out.push_back(co.to_vec(I, k));
    return out;
}

/// Elements of P[I] in no proper μ-image, as a set species; empty over ∅.
inline SetSpecies primitive_basis(const MultSystem& m) {
    SetSpecies P = m.species;
    SetSpecies Q;
    Q.name = "Q(" + P.name + ")";
    Q.elements = memoize([m](const GroundSet& I) {
        std::vector<Element> out;
        if (I.empty()) return out;
        std::set<Element> image;
        for (const auto& d : decompositions(I, 2, true))
            for (const auto& x : m.species.elements(d[0]))
                for (const auto& y : m.species.elements(d[1])) image.insert(m.mu(d[0], d[1], x, y));
        for (const auto& z : m.species.elements(I))
            if (!image.count(z)) out.push_back(z);
        return out;
    });
    Q.transport = P.transport;
    return Q;
}

/// The primitive basis as a catalog entry, ready for S(·).
inline CatalogEntry primitive_entry(const MultSystem& m) {
    CatalogEntry e;
    e.species = primitive_basis(m);
    e.name = e.species.name;
    return e;
}

/// span(primitive_basis(μ)[I]) = primitives of (KP, ∇^μ, Δ^μ) over I, for n ≤ max_n.
inline CheckReport check_primitive_spans(const MultSystem& m, int max_n) {
    return timed([&] {
        auto h = hopf_mu_mu(m);
        auto Q = primitive_basis(m);
        for (int n = 1; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            auto prim = primitives(h, I);
            std::vector<Vec> q;
            for (const auto& x : Q.elements(I)) q.emplace_back(x);
            Coordinates co(prim.ambient);
            if (!same_span(co, q, prim.basis) || q.size() != prim.basis.size())
                return make_report("primitive_basis_span", m.species.name, n,
                                   "dim of kernel intersection " + std::to_string(prim.basis.size()) +
                                       ", primitive basis has " + std::to_string(q.size()) + " elements");
        }
        return make_report("primitive_basis_span", m.species.name, max_n, std::nullopt);
    });
}

/// The primitives of (KS(Q), ∇^∪, Δ^∪) are spanned by the one-block labeled partitions.
inline CheckReport check_free_primitives(const CatalogEntry& Q, int max_n) {
    return timed([&] {
        auto S = make_S(Q);
        auto h = hopf_mu_mu(*S.mu);
        for (int n = 1; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            auto prim = primitives(h, I);
            std::vector<Vec> one_block;
            for (const auto& q : Q.species.elements(I)) one_block.emplace_back(Element::labeled({{I, q}}));
            if (!same_span(Coordinates(prim.ambient), one_block, prim.basis) || one_block.size() != prim.basis.size())
                return make_report("free_primitives", S.name, n,
                                   "primitives have dim " + std::to_string(prim.basis.size()) + ", |Q[" + I.str() +
                                       "]| = " + std::to_string(one_block.size()));
        }
        return make_report("free_primitives", S.name, max_n, std::nullopt);
    });
}

// The isomorphism S(Q) → P.

/// f^μ: multiplies the block labels of a Q-labeled partition under μ.
class FMu {
public:
    explicit FMu(MultSystem m)
        : m_(std::move(m)), q_(primitive_entry(m_)), source_(make_S(q_)), cache_(std::make_shared<Cache>()) {}

    const MultSystem& target() const { return m_; }
    const CatalogEntry& primitive() const { return q_; }
    const CatalogEntry& source() const { return source_; }

    /// Product of the labels with blocks taken in the given order (default: by minimum).
    Element apply(const Element& X, const std::vector<std::size_t>& order = {}) const {
        if (X.kind() == Element::Kind::Unit) return m_.species.elements(GroundSet{}).at(0);
        auto lb = X.labeled_blocks();
        std::vector<std::size_t> idx = order;
        if (idx.empty())
            for (std::size_t i = 0; i < lb.size(); ++i) idx.push_back(i);
        Element acc = m_.species.elements(GroundSet{}).at(0);
        GroundSet g;
        for (std::size_t i : idx) {
            acc = m_.mu(g, lb[i].first, acc, lb[i].second);
            g = set_union(g, lb[i].first);
        }
        return acc;
    }

    /// The labeled partition mapping to λ; throws if f^μ misses λ or hits it twice.
    Element preimage(const Element& lambda) const {
        const auto& table = inverse_table(lambda.ground());
        auto it = table.find(lambda);
        if (it == table.end() || it->second.size() != 1)
            throw std::domain_error("f^mu: " + lambda.str() + " has " +
                                    std::to_string(it == table.end() ? 0 : it->second.size()) + " preimages");
        return it->second.front();
    }

    /// The blocks of the preimage of λ.
    Element shape(const Element& lambda) const {
        Element X = preimage(lambda);
        if (X.kind() == Element::Kind::Unit) return X;
        return Element::partition(X.blocks());
    }

    const std::map<Element, std::vector<Element>>& inverse_table(const GroundSet& I) const {
        std::lock_guard g(cache_->m);
        auto it = cache_->table.find(I);
        if (it != cache_->table.end()) return it->second;
        std::map<Element, std::vector<Element>> t;
        for (const auto& X : source_.species.elements(I)) t[apply(X)].push_back(X);
        return cache_->table.emplace(I, std::move(t)).first->second;
    }

private:
    struct Cache {
        std::mutex m;
        std::map<GroundSet, std::map<Element, std::vector<Element>>> table;
    };
    MultSystem m_;
    CatalogEntry q_;
    CatalogEntry source_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> all_orders_of(std::size_t k) {
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = i;
    std::vector<std::vector<std::size_t>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

/// f^μ is a bijection on each component, independent of block order, the
/// inclusion on one-block partitions, natural, and intertwines ∪ with μ.
/// A failure while μ is self-compatible contradicts the classification and
/// is raised as FatalInconsistency.
inline CheckReport check_f_mu(const MultSystem& m, int max_n) {
    const std::string name = "f_mu";
    return timed([&] {
        auto sc = self_compatibility(m, std::min(max_n, 3));
        if (!sc.local.passed()) return make_report(name, m.species.name, max_n, "precondition: " + sc.local.witness.value_or(""));
        FMu f(m);
        const auto& SQ = f.source();
        auto fail = [&](int n, const std::string& w) -> CheckReport {
            throw FatalInconsistency(name, m.species.name + " n=" + std::to_string(n) + " " + w);
        };
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            auto src = SQ.species.elements(I);
            auto tgt = m.species.elements(I);
            if (src.size() != tgt.size())
                return fail(n, "|S(Q)[I]| = " + std::to_string(src.size()) + " but |P[I]| = " + std::to_string(tgt.size()));
            std::set<Element> hit;
            for (const auto& X : src) {
                Element y = f.apply(X);
                if (!hit.insert(y).second) return fail(n, "two labeled partitions map to " + y.str());
                std::size_t k = X.kind() == Element::Kind::Unit ? 0 : X.block_count();
                if (k >= 2)
                    for (const auto& ord : detail::all_orders_of(k))
                        if (!(f.apply(X, ord) == y)) return fail(n, "block order changes the image of " + X.str());
                if (k == 1 && !(y == X.labeled_blocks()[0].second)) return fail(n, "not the inclusion on " + X.str());
            }
            for (const auto& s : all_bijections(I, I))
                for (const auto& X : src)
                    if (!(f.apply(SQ.species.transport(s, X)) == m.species.transport(s, f.apply(X))))
                        return fail(n, "not natural at sigma=" + s.str() + " X=" + X.str());
            for (const auto& d : decompositions(I, 2, false))
                for (const auto& X : SQ.species.elements(d[0]))
                    for (const auto& Y : SQ.species.elements(d[1]))
                        if (!(f.apply(labeled_union(X, Y)) == m.mu(d[0], d[1], f.apply(X), f.apply(Y))))
                            return fail(n, "does not intertwine at X=" + X.str() + " Y=" + Y.str());
        }
        return make_report(name, m.species.name, max_n, std::nullopt);
    });
}

// The isomorphism E_C → P for a self-compatible comultiplicative system.

/// f^π = f^μ ∘ S(g) ∘ (f^ν)^{-1} with μ = π^{-1}, ν the union on E_C and
/// g_{{i}}(color c) = the c-th element of P[{1}] moved to {i}.
class FPi {
public:
    explicit FPi(ComultSystem pi)
        : pi_(std::move(pi)), mu_(inverse_mult(pi_)), fmu_(mu_), colors_(pi_.species.elements(GroundSet{1})),
          source_(make_E_C(static_cast<int>(colors_.size()))) {}

    const CatalogEntry& source() const { return source_; }
    const ComultSystem& target() const { return pi_; }
    std::size_t colors() const { return colors_.size(); }

    /// g on one singleton.
    Element g(Label i, int color) const {
        Bijection s(GroundSet{1}, GroundSet{i}, {i});
        return pi_.species.transport(s, colors_.at(static_cast<std::size_t>(color)));
    }

    Element apply(const Element& h) const {
        if (h.kind() == Element::Kind::Unit) return fmu_.apply(Element::unit());
        // (f^ν)^{-1}: the singleton blocks of h, each labeled by its color
        std::vector<std::pair<GroundSet, Element>> blocks;
        for (Label i : h.ground()) blocks.emplace_back(GroundSet{i}, g(i, h.color(i)));
        return fmu_.apply(Element::labeled(std::move(blocks)));
    }

private:
    ComultSystem pi_;
    MultSystem mu_;
    FMu fmu_;
    std::vector<Element> colors_;
    CatalogEntry source_;
};

/// f^π is a bijection, natural, intertwines ρ with π, and sends color c on {1}
/// to the c-th element of P[{1}]. Requires π cocommutative and bijective and
/// P concentrated in cardinality one at the primitive level.
inline CheckReport check_f_pi(const ComultSystem& c, int max_n) {
    const std::string name = "f_pi";
    return timed([&] {
        auto sc = pi_self_compatibility(c, std::min(max_n, 3));
        if (!sc.local.passed()) return make_report(name, c.species.name, max_n, "precondition: " + sc.local.witness.value_or(""));
        FPi f(c);
        auto fail = [&](int n, const std::string& w) -> CheckReport {
            throw FatalInconsistency(name, c.species.name + " n=" + std::to_string(n) + " " + w);
        };
        const auto& E = f.source();
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            auto src = E.species.elements(I);
            auto tgt = c.species.elements(I);
            if (src.size() != tgt.size())
                return make_report(name, c.species.name, n,
                                   "|E_C[I]| = " + std::to_string(src.size()) + " but |P[I]| = " + std::to_string(tgt.size()));
            std::set<Element> hit;
            for (const auto& x : src)
                if (!hit.insert(f.apply(x)).second) return fail(n, "two maps share the image " + f.apply(x).str());
            for (const auto& s : all_bijections(I, I))
                for (const auto& x : src)
                    if (!(f.apply(E.species.transport(s, x)) == c.species.transport(s, f.apply(x))))
                        return fail(n, "not natural at sigma=" + s.str() + " x=" + x.str());
            for (const auto& d : decompositions(I, 2, false))
                for (const auto& x : src) {
                    auto [a, b] = E.pi->pi(d[0], d[1], x);
                    auto [fa, fb] = c.pi(d[0], d[1], f.apply(x));
                    if (!(fa == f.apply(a)) || !(fb == f.apply(b)))
                        return fail(n, "does not intertwine at x=" + x.str() + " S=" + d[0].str());
                }
        }
        for (std::size_t col = 0; col < f.colors(); ++col)
            if (!(f.apply(Element::map(GroundSet{1}, {static_cast<int>(col)})) == c.species.elements(GroundSet{1})[col]))
                return fail(1, "normalization fails for color " + std::to_string(col));
        return make_report(name, c.species.name, max_n, std::nullopt);
    });
}

/// dim 𝒫(h)[1] is finite (always, here) and 𝒫(h)[n] = 0 for 2 ≤ n ≤ max_n.
inline CheckReport check_lsd_primitives(const LinearizedHopf& h, int max_n) {
    return timed([&] {
        for (int n = 2; n <= max_n; ++n) {
            auto p = primitives(h, GroundSet::range(n));
            if (!p.basis.empty())
                return make_report("lsd_primitives", h.label(), n,
                                   "dim P[" + std::to_string(n) + "] = " + std::to_string(p.basis.size()));
        }
        return make_report("lsd_primitives", h.label(), max_n, std::nullopt);
    });
}

// The ∇_X(q) decomposition.

struct NablaXComponent {
    Element partition;          // X, blocks sorted by minimum
    std::vector<Vec> spanning;  // ∇_{S1..Sk}(q[S1] ⊗ ... ⊗ q[Sk]) on basis tensors
};

struct NablaXDecomposition {
    GroundSet ground;
    std::size_t dim = 0;  // dim p[I]
    std::vector<NablaXComponent> components;
    std::optional<std::string> precheck;  // p = 1 + q + r fails
    std::optional<std::string> failure;   // first failed certificate among (a), (b), (c)
};

namespace detail {

/// Spanning set of ∇_X(q) with blocks in the given order.
inline std::vector<Vec> nabla_X_span(const LinearizedHopf& h, const std::vector<GroundSet>& blocks,
                                     const std::function<const std::vector<Vec>&(const GroundSet&)>& q) {
    if (blocks.empty()) return {Vec(h.basis.elements(GroundSet{}).at(0))};
    // all products of one basis vector per block
    std::vector<std::size_t> idx(blocks.size(), 0);
    for (const auto& b : blocks)
        if (q(b).empty()) return {};
    std::vector<Vec> out;
    while (true) {
        TensorVec t = as_tensor(q(blocks[0])[idx[0]]);
        for (std::size_t i = 1; i < blocks.size(); ++i) t = tensor(t, as_tensor(q(blocks[i])[idx[i]]));
        out.push_back(iterate_nabla(h, t));
        std::size_t pos = blocks.size();
        bool done = true;
        while (pos-- > 0) {
            if (++idx[pos] < q(blocks[pos]).size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) break;
    }
    return out;
}

}  // namespace detail

/// Builds ∇_X(q) for every partition X of I and certifies the three
/// properties: direct sum, inverse isomorphisms, kernel of Δ_{S,T}.
inline NablaXDecomposition nabla_X_decompose(const LinearizedHopf& h, const GroundSet& I) {
    NablaXDecomposition out;
    out.ground = I;
    auto ambient = h.basis.elements(I);
    out.dim = ambient.size();
    Coordinates co(ambient);

    std::map<GroundSet, std::vector<Vec>> qcache;
    std::function<const std::vector<Vec>&(const GroundSet&)> q = [&](const GroundSet& B) -> const std::vector<Vec>& {
        auto it = qcache.find(B);
        if (it == qcache.end()) it = qcache.emplace(B, primitives(h, B).basis).first;
        return it->second;
    };

    // p = 1 + q + r as a direct sum
    if (!I.empty()) {
        std::vector<Vec> r;
        for (const auto& d : decompositions(I, 2, true))
            for (const auto& x : h.basis.elements(d[0]))
                for (const auto& y : h.basis.elements(d[1])) r.push_back(h.product(d[0], d[1], x, y));
        std::size_t rq = q(I).size(), rr = span_dimension(co, r);
        std::vector<Vec> both = q(I);
        both.insert(both.end(), r.begin(), r.end());
        if (span_dimension(co, both) != out.dim || rq + rr != out.dim) {
            out.precheck = "dim q + dim r = " + std::to_string(rq) + " + " + std::to_string(rr) + " but dim p = " +
                           std::to_string(out.dim);
            return out;
        }
    }

    std::map<Element, std::size_t> where;
    for (const auto& X : set_partitions(I)) {
        Element key = Element::partition(X);
        out.components.push_back({key, detail::nabla_X_span(h, X, q)});
        where[key] = out.components.size() - 1;
        // one alternative block order
        if (X.size() >= 2 && !out.failure) {
            std::vector<GroundSet> rev(X.rbegin(), X.rend());
            if (!same_span(co, out.components.back().spanning, detail::nabla_X_span(h, rev, q)))
                out.failure = "block order changes nabla_X(q) for X=" + key.str();
        }
    }
    if (out.failure) return out;

    // (a) direct sum
    std::vector<Vec> all;
    for (const auto& c : out.components) {
        if (!linearly_independent(co, c.spanning)) {
            out.failure = "(a) spanning set of nabla_X(q) is dependent for X=" + c.partition.str();
            return out;
        }
        all.insert(all.end(), c.spanning.begin(), c.spanning.end());
    }
    if (all.size() != out.dim || !linearly_independent(co, all)) {
        out.failure = "(a) the subspaces do not form a direct sum decomposition of p[" + I.str() + "]";
        return out;
    }

    // (b) ∇_{S,T} and Δ_{S,T} are inverse on ∇_X(q) ⊗ ∇_Y(q) and ∇_{X⊔Y}(q)
    auto component_of = [&](const GroundSet& G, const std::vector<GroundSet>& X) -> std::vector<Vec> {
        if (G.empty()) return {Vec(h.basis.elements(GroundSet{}).at(0))};
        return detail::nabla_X_span(h, X, q);
    };
    for (const auto& d : decompositions(I, 2, true)) {
        const auto &S = d[0], &T = d[1];
        for (const auto& X : set_partitions(S))
            for (const auto& Y : set_partitions(T)) {
                auto XY = X;
                XY.insert(XY.end(), Y.begin(), Y.end());
                const auto& target = out.components[where.at(Element::partition(XY))].spanning;
                for (const auto& u : component_of(S, X))
                    for (const auto& v : component_of(T, Y)) {
                        TensorVec uv = tensor(u, v);
                        Vec w = nabla(h, uv);
                        std::vector<Vec> with = target;
                        with.push_back(w);
                        if (span_dimension(co, with) != target.size()) {
                            out.failure = "(b) nabla leaves nabla_X(q) for X=" + Element::partition(XY).str();
                            return out;
                        }
                        if (!(delta(h, S, T, w) == uv)) {
                            out.failure = "(b) delta does not invert nabla at S=" + S.str();
                            return out;
                        }
                    }
                for (const auto& w : target)
                    if (!(nabla(h, delta(h, S, T, w)) == w)) {
                        out.failure = "(b) nabla does not invert delta on X=" + Element::partition(XY).str();
                        return out;
                    }
            }
        // (c) ker Δ_{S,T} = ⊕ over Z with a block meeting both S and T
        std::vector<Vec> straddling;
        for (const auto& c : out.components) {
            bool straddles = false;
            for (const auto& b : c.partition.blocks())
                straddles |= !b.is_subset_of(S) && !b.is_subset_of(T);
            if (straddles) straddling.insert(straddling.end(), c.spanning.begin(), c.spanning.end());
        }
        auto ker = delta_kernel(h, S, T);
        if (ker.size() != straddling.size() || !same_span(co, ker, straddling)) {
            out.failure = "(c) ker Delta_{" + S.str() + "," + T.str() + "} has dim " + std::to_string(ker.size()) +
                          ", straddling components have dim " + std::to_string(straddling.size());
            return out;
        }
    }
    return out;
}

/// Runs nabla_X_decompose for n ≤ max_n. A failed certificate on a
/// commutative and cocommutative h that passes the precheck is fatal.
inline CheckReport check_contained(const LinearizedHopf& h, int max_n) {
    return timed([&] {
        bool comm = check_axiom(h, Axiom::Commutative, max_n).passed();
        bool coco = comm && check_axiom(h, Axiom::Cocommutative, max_n).passed();
        if (!comm)
            return make_report("nabla_X_decomposition", h.label(), max_n, "precondition: product is not commutative");
        for (int n = 0; n <= max_n; ++n) {
            auto d = nabla_X_decompose(h, GroundSet::range(n));
            if (d.precheck) return make_report("nabla_X_decomposition", h.label(), n, "precondition: " + *d.precheck);
            if (d.failure) {
                if (coco) throw FatalInconsistency("nabla_X_decomposition", h.label() + " n=" + std::to_string(n) + " " + *d.failure);
                return make_report("nabla_X_decomposition", h.label(), n, *d.failure);
            }
        }
        return make_report("nabla_X_decomposition", h.label(), max_n, std::nullopt);
    });
}

}  // namespace species_forge
