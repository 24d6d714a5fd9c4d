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
#include "species_forge/classify.hpp"
#include "species_forge/hopf.hpp"
#include "species_forge/linalg.hpp"
#include "species_forge/report.hpp"

namespace species_forge {

/// A strict order on P[I], stored as pairs (a, b) meaning a ≺ b.
struct OrderSlice {
    GroundSet ground;
    std::vector<Element> elements;
    std::set<std::pair<Element, Element>> less;

    bool lt(const Element& a, const Element& b) const { return less.count({a, b}) > 0; }
    bool le(const Element& a, const Element& b) const { return a == b || lt(a, b); }

    /// {x : x ⪯ λ} in enumeration order.
    std::vector<Element> below(const Element& lambda) const {
        std::vector<Element> out;
        for (const auto& x : elements)
            if (le(x, lambda)) out.push_back(x);
        return out;
    }
    std::vector<Element> above(const Element& lambda) const {
        std::vector<Element> out;
        for (const auto& x : elements)
            if (le(lambda, x)) out.push_back(x);
        return out;
    }

    /// Pairs (a, b) with a ≺ b and nothing strictly between.
    std::vector<std::pair<Element, Element>> covers() const {
        std::vector<std::pair<Element, Element>> out;
        for (const auto& [a, b] : less) {
            bool direct = true;
            for (const auto& c : elements)
                if (lt(a, c) && lt(c, b)) {
                    direct = false;
                    break;
                }
            if (direct) out.emplace_back(a, b);
        }
        return out;
    }
};

/// An order on every component of a species, computed per ground set on demand.
class SpeciesOrder {
public:
    using SliceFn = std::function<OrderSlice(const GroundSet&)>;

    SpeciesOrder(std::string name, SliceFn fn) : name_(std::move(name)), fn_(std::move(fn)), cache_(std::make_shared<Cache>()) {}

    const std::string& name() const { return name_; }

    const OrderSlice& at(const GroundSet& I) const {
        {
            std::lock_guard g(cache_->m);
            auto it = cache_->slices.find(I);
            if (it != cache_->slices.end()) return it->second;
        }
        OrderSlice s = fn_(I);
        std::lock_guard g(cache_->m);
        return cache_->slices.emplace(I, std::move(s)).first->second;
    }

    bool lt(const Element& a, const Element& b) const { return a.ground() == b.ground() && at(a.ground()).lt(a, b); }
    bool le(const Element& a, const Element& b) const { return a == b || lt(a, b); }

private:
    struct Cache {
        std::mutex m;
        std::map<GroundSet, OrderSlice> slices;
    };
    std::string name_;
    SliceFn fn_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline bool mu_commutative_on(const MultSystem& m, const GroundSet& I) {
    for (const auto& d : decompositions(I, 2, false))
        for (const auto& x : m.species.elements(d[0]))
            for (const auto& y : m.species.elements(d[1]))
                if (!(m.mu(d[0], d[1], x, y) == m.mu(d[1], d[0], y, x))) return false;
    return true;
}

inline std::set<std::pair<Element, Element>> transitive_closure(std::set<std::pair<Element, Element>> rel,
                                                                const std::vector<Element>& elements) {
    // Warshall over the element list
    for (const auto& k : elements)
        for (const auto& i : elements) {
            if (!rel.count({i, k})) continue;
            for (const auto& j : elements)
                if (rel.count({k, j})) rel.insert({i, j});
        }
    return rel;
}

}  // namespace detail

/// ≺ on P[I]: λ ≺ λ' iff λ = μ_{S1..Sk} ∘ π_{S1..Sk}(λ') for some decomposition
/// and λ ≠ λ'. Verifies irreflexivity, transitivity and that the relation is
/// the transitive closure of its two-part instances; a mismatch is fatal.
inline OrderSlice compute_order(const MultSystem& m, const ComultSystem& c, const GroundSet& I) {
    if (!detail::mu_commutative_on(m, I))
        throw std::invalid_argument("order is not defined: " + m.species.name + "'s product is not commutative");
    OrderSlice out{I, m.species.elements(I), {}};
    std::set<std::pair<Element, Element>> two;
    for (std::size_t k = 1; k <= std::max<std::size_t>(1, I.size()); ++k)
        for (const auto& parts : decompositions(I, k, !I.empty()))
            for (const auto& z : out.elements) {
                Element w = mu_iterate(m, parts, pi_iterate(c, parts, z));
                if (w == z) continue;
                out.less.insert({w, z});
                if (k == 2) two.insert({w, z});
            }
    for (const auto& x : out.elements)
        if (out.lt(x, x)) throw FatalInconsistency("order", "reflexive pair at " + x.str());
    auto closure = detail::transitive_closure(two, out.elements);
    if (closure != out.less) {
        std::string w;
        for (const auto& p : out.less)
            if (!closure.count(p)) {
                w = p.first.str() + " < " + p.second.str() + " is not generated by two-part steps";
                break;
            }
        for (const auto& p : closure)
            if (w.empty() && !out.less.count(p)) w = p.first.str() + " < " + p.second.str() + " is missing from the k-fold relation";
        throw FatalInconsistency("order", m.species.name + " on " + I.str() + ": " + w);
    }
    return out;
}

inline SpeciesOrder order_from_systems(const MultSystem& m, const ComultSystem& c) {
    return SpeciesOrder(m.species.name, [m, c](const GroundSet& I) { return compute_order(m, c, I); });
}

/// (λ, λ') ∈ ≺[I] iff (σλ, σλ') ∈ ≺[σI] for every bijection σ : I → I + offset.
inline CheckReport check_order_transport(const SpeciesOrder& ord, const SetSpecies& P, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            std::vector<Label> shifted;
            for (Label x : I) shifted.push_back(x + 10);
            GroundSet J(shifted);
            const auto& here = ord.at(I);
            const auto& there = ord.at(J);
            for (const auto& s : all_bijections(I, J))
                for (const auto& a : here.elements)
                    for (const auto& b : here.elements)
                        if (here.lt(a, b) != there.lt(P.transport(s, a), P.transport(s, b)))
                            return make_report("order_transport", ord.name(), n,
                                               "sigma=" + s.str() + " a=" + a.str() + " b=" + b.str());
        }
        return make_report("order_transport", ord.name(), max_n, std::nullopt);
    });
}

/// Both parts of the order lemma on every decomposition with |S ⊔ T| ≤ max_n:
/// (a) μ(α,β) ⪰ λ iff λ = μ(α',β') with α' ⪯ α, β' ⪯ β;
/// (b) μ(α,β) ⪯ λ iff π(λ) = (α',β') with α' ⪰ α, β' ⪰ β.
inline CheckReport check_order_lemma(const SpeciesOrder& ord, const MultSystem& m, const ComultSystem& c, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            const auto& full = ord.at(I);
            for (const auto& d : decompositions(I, 2, false)) {
                const auto &S = d[0], &T = d[1];
                const auto& oS = ord.at(S);
                const auto& oT = ord.at(T);
                for (const auto& a : oS.elements)
                    for (const auto& b : oT.elements) {
                        Element ab = m.mu(S, T, a, b);
                        std::set<Element> products_below;
                        for (const auto& a2 : oS.below(a))
                            for (const auto& b2 : oT.below(b)) products_below.insert(m.mu(S, T, a2, b2));
                        for (const auto& l : full.elements) {
                            bool lhs_a = full.le(l, ab);
                            bool rhs_a = products_below.count(l) > 0;
                            if (lhs_a != rhs_a)
                                return make_report("order_lemma", ord.name(), n,
                                                   "(a) alpha=" + a.str() + " beta=" + b.str() + " lambda=" + l.str());
                            auto [a3, b3] = c.pi(S, T, l);
                            bool lhs_b = full.le(ab, l);
                            bool rhs_b = oS.le(a, a3) && oT.le(b, b3);
                            if (lhs_b != rhs_b)
                                return make_report("order_lemma", ord.name(), n,
                                                   "(b) alpha=" + a.str() + " beta=" + b.str() + " lambda=" + l.str());
                        }
                    }
            }
        }
        return make_report("order_lemma", ord.name(), max_n, std::nullopt);
    });
}

// Lower intervals.

/// Outcome of the lattice check on every lower interval of P[I].
struct LatticeReport {
    CheckReport report;
    std::size_t intervals = 0;
    std::size_t non_surjective = 0;  // intervals whose shape map misses a partition below sh(λ)
    std::optional<std::string> non_surjective_example;
};

namespace detail {

inline bool refines(const Element& a, const Element& b) {
    if (a.kind() == Element::Kind::Unit) return true;
    auto bb = b.blocks();
    for (const auto& x : a.blocks()) {
        bool inside = false;
        for (const auto& y : bb) inside |= x.is_subset_of(y);
        if (!inside) return false;
    }
    return true;
}

inline std::vector<GroundSet> common_refinement(const Element& a, const Element& b) {
    std::vector<GroundSet> out;
    if (a.kind() == Element::Kind::Unit) return out;
    for (const auto& x : a.blocks())
        for (const auto& y : b.blocks()) {
            GroundSet z = set_intersection(x, y);
            if (!z.empty()) out.push_back(z);
        }
    return out;
}

}  // namespace detail

/// Every pair in {λ' ⪯ λ} has a greatest lower bound, found by search and
/// equal to μ_A ∘ π_A(λ) over the blocks A of the common refinement of the
/// shapes; comparability in the interval matches refinement of shapes; the
/// shape map is injective and order-preserving. Surjectivity onto the
/// partitions below sh(λ) is counted, not asserted.
inline LatticeReport check_lower_lattice(const SpeciesOrder& ord, const MultSystem& m, const ComultSystem& c, const GroundSet& I) {
    LatticeReport out;
    FMu f(m);
    const auto& slice = ord.at(I);
    out.report = timed([&] {
        for (const auto& lambda : slice.elements) {
            ++out.intervals;
            auto L = slice.below(lambda);
            std::map<Element, Element> sh;
            std::set<Element> shapes;
            for (const auto& x : L) {
                sh.emplace(x, f.shape(x));
                if (!shapes.insert(sh.at(x)).second)
                    return make_report("lower_lattice", ord.name(), static_cast<int>(I.size()),
                                       "shape map is not injective below " + lambda.str());
            }
            for (const auto& a : L)
                for (const auto& b : L) {
                    if (slice.le(a, b) != detail::refines(sh.at(a), sh.at(b)))
                        return make_report("lower_lattice", ord.name(), static_cast<int>(I.size()),
                                           "comparability of " + a.str() + " and " + b.str() + " differs from their shapes");
                    std::vector<Element> lower;
                    for (const auto& x : L)
                        if (slice.le(x, a) && slice.le(x, b)) lower.push_back(x);
                    std::optional<Element> meet;
                    for (const auto& x : lower) {
                        bool greatest = true;
                        for (const auto& y : lower) greatest &= slice.le(y, x);
                        if (greatest) meet = x;
                    }
                    if (!meet)
                        return make_report("lower_lattice", ord.name(), static_cast<int>(I.size()),
                                           "no greatest lower bound for " + a.str() + " and " + b.str());
                    auto A = detail::common_refinement(sh.at(a), sh.at(b));
                    Element formula = A.empty() ? lambda : mu_iterate(m, A, pi_iterate(c, A, lambda));
                    if (!(formula == *meet))
                        return make_report("lower_lattice", ord.name(), static_cast<int>(I.size()),
                                           "meet of " + a.str() + " and " + b.str() + " is " + meet->str() +
                                               " but the intersection formula gives " + formula.str());
                }
            std::size_t below_shape = 0;
            Element top = f.shape(lambda);
            for (const auto& X : set_partitions(I))
                if (detail::refines(Element::partition(X), top)) ++below_shape;
            if (below_shape != shapes.size()) {
                ++out.non_surjective;
                if (!out.non_surjective_example)
                    out.non_surjective_example = lambda.str() + ": " + std::to_string(shapes.size()) + " of " +
                                                 std::to_string(below_shape) + " partitions below its shape are hit";
            }
        }
        return make_report("lower_lattice", ord.name(), static_cast<int>(I.size()), std::nullopt);
    });
    return out;
}

// Characterizing properties and reconstruction of π.

/// (A) μ is a poset isomorphism from a product of lower intervals onto the
/// lower interval of the product; (B) the part of Image(μ_{S,T}) below any λ
/// has a unique maximal element.
inline CheckReport check_AB(const SpeciesOrder& ord, const MultSystem& m, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            const auto& full = ord.at(I);
            for (const auto& d : decompositions(I, 2, false)) {
                const auto &S = d[0], &T = d[1];
                const auto& oS = ord.at(S);
                const auto& oT = ord.at(T);
                std::set<Element> image;
                for (const auto& a : oS.elements)
                    for (const auto& b : oT.elements) {
                        Element ab = m.mu(S, T, a, b);
                        image.insert(ab);
                        auto LA = oS.below(a), LB = oT.below(b);
                        auto target = full.below(ab);
                        std::set<Element> hit;
                        for (const auto& a2 : LA)
                            for (const auto& b2 : LB) hit.insert(m.mu(S, T, a2, b2));
                        if (hit.size() != LA.size() * LB.size() || hit != std::set<Element>(target.begin(), target.end()))
                            return make_report("order_AB", ord.name(), n, "(A) mu is not a bijection onto the interval below " + ab.str());
                        for (const auto& a2 : LA)
                            for (const auto& b2 : LB)
                                for (const auto& a3 : LA)
                                    for (const auto& b3 : LB)
                                        if ((oS.le(a2, a3) && oT.le(b2, b3)) != full.le(m.mu(S, T, a2, b2), m.mu(S, T, a3, b3)))
                                            return make_report("order_AB", ord.name(), n,
                                                               "(A) mu does not preserve the order below " + ab.str());
                    }
                for (const auto& l : full.elements) {
                    std::vector<Element> cand;
                    for (const auto& x : full.below(l))
                        if (image.count(x)) cand.push_back(x);
                    std::size_t maximal = 0;
                    for (const auto& x : cand) {
                        bool is_max = true;
                        for (const auto& y : cand) is_max &= !full.lt(x, y);
                        maximal += is_max;
                    }
                    if (maximal != 1)
                        return make_report("order_AB", ord.name(), n,
                                           "(B) " + std::to_string(maximal) + " maximal elements of Image(mu_{" + S.str() +
                                               "," + T.str() + "}) below " + l.str());
                }
            }
        }
        return make_report("order_AB", ord.name(), max_n, std::nullopt);
    });
}

/// π_{S,T}(λ) = μ_{S,T}^{-1}(max{λ' ∈ Image(μ_{S,T}) : λ' ≤ λ}). Evaluation
/// throws std::domain_error where the maximum is not unique.
inline ComultSystem reconstruct_pi(const SpeciesOrder& ord, const MultSystem& m) {
    ComultSystem c{"reconstructed from " + ord.name(), m.species, nullptr};
    c.pi = [ord, m](const GroundSet& S, const GroundSet& T, const Element& z) {
        const auto& full = ord.at(set_union(S, T));
        std::map<Element, std::pair<Element, Element>> pre;
        for (const auto& a : m.species.elements(S))
            for (const auto& b : m.species.elements(T)) pre.emplace(m.mu(S, T, a, b), std::make_pair(a, b));
        std::vector<Element> cand;
        for (const auto& x : full.below(z))
            if (pre.count(x)) cand.push_back(x);
        std::optional<Element> top;
        for (const auto& x : cand) {
            bool is_max = true;
            for (const auto& y : cand) is_max &= !full.lt(x, y);
            if (is_max) {
                if (top) throw std::domain_error("reconstruct_pi: several maximal elements below " + z.str());
                top = x;
            }
        }
        if (!top) throw std::domain_error("reconstruct_pi: nothing in the image lies below " + z.str());
        return pre.at(*top);
    };
    return c;
}

/// reconstruct_pi(compute_order(μ, π), μ) agrees with π on every decomposition.
inline CheckReport check_reconstruction(const MultSystem& m, const ComultSystem& c, int max_n) {
    return timed([&] {
        auto ord = order_from_systems(m, c);
        auto back = reconstruct_pi(ord, m);
        for (int n = 0; n <= max_n; ++n)
            for (const auto& d : decompositions(GroundSet::range(n), 2, false))
                for (const auto& z : m.species.elements(GroundSet::range(n)))
                    if (back.pi(d[0], d[1], z) != c.pi(d[0], d[1], z))
                        return make_report("reconstruct_pi", m.species.name, n,
                                           "z=" + z.str() + " S=" + d[0].str() + ": reconstructed (" +
                                               back.pi(d[0], d[1], z).first.str() + "," +
                                               back.pi(d[0], d[1], z).second.str() + ")");
        return make_report("reconstruct_pi", m.species.name, max_n, std::nullopt);
    });
}

// The p and q bases.

struct PQBasis {
    GroundSet ground;
    std::map<Element, Vec> p;  // p_λ = Σ_{λ' ⪰ λ} λ'
    std::map<Element, Vec> q;  // q_λ = Σ_{λ' ⪯ λ} p_{λ'}
};

inline PQBasis pq_tables(const OrderSlice& slice) {
    PQBasis out{slice.ground, {}, {}};
    for (const auto& l : slice.elements) {
        Vec v(slice.ground);
        for (const auto& x : slice.above(l)) v.add(x, 1);
        out.p.emplace(l, std::move(v));
    }
    for (const auto& l : slice.elements) {
        Vec v(slice.ground);
        for (const auto& x : slice.below(l)) v += out.p.at(x);
        out.q.emplace(l, std::move(v));
    }
    return out;
}

/// Elements of the slice in a linear extension of ≺ (fewer elements below first).
inline std::vector<Element> linear_extension(const OrderSlice& slice) {
    std::vector<std::pair<std::size_t, Element>> keyed;
    for (const auto& x : slice.elements) keyed.emplace_back(slice.below(x).size(), x);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Element> out;
    for (auto& [k, x] : keyed) out.push_back(x);
    return out;
}

namespace detail {

/// Rows b_λ in the coordinates of a linear extension form an upper
/// unitriangular matrix.
inline std::optional<std::string> unitriangular(const OrderSlice& slice, const std::map<Element, Vec>& table) {
    auto ext = linear_extension(slice);
    std::map<Element, std::size_t> pos;
    for (std::size_t i = 0; i < ext.size(); ++i) pos[ext[i]] = i;
    for (const auto& [l, v] : table) {
        if (v.coeff(l) != 1) return "diagonal entry of " + l.str() + " is " + to_string(v.coeff(l));
        for (const auto& [x, c] : v.terms())
            if (pos[x] < pos[l]) return "entry of " + l.str() + " at " + x.str() + " is off the triangle";
    }
    return std::nullopt;
}

/// Coordinates of v in the p basis, by elimination along a linear extension.
inline std::map<Element, Rational> p_coordinates(const OrderSlice& slice, const PQBasis& b, Vec v) {
    std::map<Element, Rational> out;
    for (const auto& l : linear_extension(slice)) {
        Rational c = v.coeff(l);
        if (c == 0) continue;
        out[l] = c;
        v += Rational(-c) * b.p.at(l);
    }
    if (!v.is_zero()) throw FatalInconsistency("basis_theorem", "p table does not span on " + slice.ground.str());
    return out;
}

/// q_λ has coefficient 1 on p_λ and is supported on p_{λ'} with λ' ⪯ λ.
inline std::optional<std::string> unitriangular_in_p(const OrderSlice& slice, const PQBasis& b) {
    for (const auto& [l, v] : b.q) {
        auto coords = p_coordinates(slice, b, v);
        if (coords[l] != 1) return "coefficient of p_" + l.str() + " in q_" + l.str() + " is " + to_string(coords[l]);
        for (const auto& [x, c] : coords)
            if (c != 0 && !slice.le(x, l)) return "q_" + l.str() + " involves p_" + x.str();
    }
    return std::nullopt;
}

}  // namespace detail

/// The four identities for h = (∇^π, Δ^μ) in the p and q bases:
///   ∇^π(p_α ⊗ p_β) = p_{μ(α,β)},  Δ^μ(p_λ) = p_α ⊗ p_β or 0,
///   ∇^π(q_α ⊗ q_β) = q_{μ(α,β)},  Δ^μ(q_λ) = q_{λ'} ⊗ q_{λ''} with π(λ) = (λ', λ''),
/// i.e. p_λ ↦ λ is an isomorphism h ≅ h' and q_λ ↦ λ one h ≅ h''. Also checks
/// that both tables are unitriangular. Any failure is fatal.
inline CheckReport check_basis_theorem(const CatalogEntry& e, int max_n) {
    return timed([&] {
        const auto& m = detail::need_mu(e);
        const auto& c = detail::need_pi(e);
        auto ord = order_from_systems(m, c);
        auto h = hopf_pi_mu(e);
        std::map<GroundSet, PQBasis> tables;
        auto pq = [&](const GroundSet& I) -> const PQBasis& {
            auto it = tables.find(I);
            if (it == tables.end()) it = tables.emplace(I, pq_tables(ord.at(I))).first;
            return it->second;
        };
        auto fatal = [&](int n, const std::string& w) -> CheckReport {
            throw FatalInconsistency("basis_theorem", e.name + " n=" + std::to_string(n) + " " + w);
        };
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            if (auto w = detail::unitriangular(ord.at(I), pq(I).p)) return fatal(n, "p table: " + *w);
            if (auto w = detail::unitriangular_in_p(ord.at(I), pq(I))) return fatal(n, "q table: " + *w);
            for (const auto& d : decompositions(I, 2, false)) {
                const auto &S = d[0], &T = d[1];
                const auto &PS = pq(S), &PT = pq(T), &PI = pq(I);
                for (const auto& a : m.species.elements(S))
                    for (const auto& b : m.species.elements(T)) {
                        Element ab = m.mu(S, T, a, b);
                        if (!(nabla(h, tensor(PS.p.at(a), PT.p.at(b))) == PI.p.at(ab)))
                            return fatal(n, "nabla^pi(p_" + a.str() + " ⊗ p_" + b.str() + ") != p_" + ab.str());
                        if (!(nabla(h, tensor(PS.q.at(a), PT.q.at(b))) == PI.q.at(ab)))
                            return fatal(n, "nabla^pi(q_" + a.str() + " ⊗ q_" + b.str() + ") != q_" + ab.str());
                    }
                std::map<Element, std::pair<Element, Element>> pre;
                for (const auto& a : m.species.elements(S))
                    for (const auto& b : m.species.elements(T)) pre.emplace(m.mu(S, T, a, b), std::make_pair(a, b));
                for (const auto& l : m.species.elements(I)) {
                    TensorVec want_p({S, T});
                    auto it = pre.find(l);
                    if (it != pre.end()) want_p = tensor(PS.p.at(it->second.first), PT.p.at(it->second.second));
                    if (!(delta(h, S, T, PI.p.at(l)) == want_p))
                        return fatal(n, "delta^mu(p_" + l.str() + ") over S=" + S.str() + " is wrong");
                    auto [l1, l2] = c.pi(S, T, l);
                    if (!(delta(h, S, T, PI.q.at(l)) == tensor(PS.q.at(l1), PT.q.at(l2))))
                        return fatal(n, "delta^mu(q_" + l.str() + ") over S=" + S.str() + " is wrong");
                }
            }
        }
        return make_report("basis_theorem", e.name, max_n, std::nullopt);
    });
}

// Hasse diagrams.

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

/// DOT text with one node per element and one edge per cover, lower to upper.
inline std::string hasse_dot(const OrderSlice& slice, const std::string& species) {
    std::string out = "digraph " + dot_quote(species + "_" + std::to_string(slice.ground.size())) + " {\n";
    for (const auto& x : slice.elements) out += "  " + dot_quote(x.str()) + ";\n";
    auto cov = slice.covers();
    for (const auto& [a, b] : cov) out += "  " + dot_quote(a.str()) + " -> " + dot_quote(b.str()) + ";\n";
    return out + "}\n";
}

}  // namespace species_forge
