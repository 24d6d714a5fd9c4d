#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "species_forge/catalog.hpp"
#include "species_forge/element.hpp"
#include "species_forge/ground_set.hpp"
#include "species_forge/report.hpp"
#include "species_forge/species.hpp"
#include "species_forge/vec.hpp"

namespace species_forge {

// Size limits.

inline constexpr int kDefaultMaxN = 4;
inline constexpr int kHardCeiling = 5;

/// The largest n any check accepts: 5 unless SPECIES_FORGE_CEILING says otherwise.
inline int verification_ceiling() {
    if (const char* env = std::getenv("SPECIES_FORGE_CEILING")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("SPECIES_FORGE_CEILING is not an integer: ") + env);
        }
    }
    return kHardCeiling;
}

inline void require_within_ceiling(int max_n) {
    if (max_n < 0) throw std::invalid_argument("max_n must be nonnegative");
    if (max_n > verification_ceiling())
        throw std::invalid_argument("max_n = " + std::to_string(max_n) + " exceeds the verification ceiling " +
                                    std::to_string(verification_ceiling()));
    if (max_n > kDefaultMaxN)
        std::cerr << "warning: max_n = " << max_n << " is above the default " << kDefaultMaxN
                  << "; exhaustive checks grow like 4^n * dim^2\n";
}

// Linearized (co)products.

using ProductFn = std::function<Vec(const GroundSet&, const GroundSet&, const Element&, const Element&)>;
using CoproductFn = std::function<TensorVec(const GroundSet&, const GroundSet&, const Element&)>;

/// A species basis with a product and a coproduct given on basis elements.
struct LinearizedHopf {
    SetSpecies basis;
    std::string variant;  // e.g. "nabla^mu,delta^pi"
    ProductFn product;
    CoproductFn coproduct;

    std::string label() const { return basis.name + "(" + variant + ")"; }
};

namespace detail {

template <class K, class V>
struct Memo {
    std::mutex m;
    std::map<K, V> table;
};

}  // namespace detail

/// Caches product and coproduct values on basis arguments.
inline LinearizedHopf memoized(LinearizedHopf h) {
    using PK = std::tuple<GroundSet, GroundSet, Element, Element>;
    using CK = std::tuple<GroundSet, GroundSet, Element>;
    auto pm = std::make_shared<detail::Memo<PK, Vec>>();
    auto cm = std::make_shared<detail::Memo<CK, TensorVec>>();
    ProductFn p = h.product;
    CoproductFn c = h.coproduct;
    h.product = [p, pm](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        PK key{S, T, x, y};
        {
            std::lock_guard g(pm->m);
            auto it = pm->table.find(key);
            if (it != pm->table.end()) return it->second;
        }
        Vec v = p(S, T, x, y);
        std::lock_guard g(pm->m);
        return pm->table.emplace(std::move(key), std::move(v)).first->second;
    };
    h.coproduct = [c, cm](const GroundSet& S, const GroundSet& T, const Element& z) {
        CK key{S, T, z};
        {
            std::lock_guard g(cm->m);
            auto it = cm->table.find(key);
            if (it != cm->table.end()) return it->second;
        }
        TensorVec v = c(S, T, z);
        std::lock_guard g(cm->m);
        return cm->table.emplace(std::move(key), std::move(v)).first->second;
    };
    return h;
}

/// ∇^μ(x ⊗ y) = μ(x, y).
inline ProductFn nabla_mu(const MultSystem& m) {
    MuFn mu = m.mu;
    return [mu](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        return Vec(mu(S, T, x, y));
    };
}

/// Δ^μ(γ) = sum of x ⊗ y over the μ-fiber of γ.
inline CoproductFn delta_mu(const MultSystem& m) {
    using Fiber = std::map<Element, std::vector<std::pair<Element, Element>>>;
    auto memo = std::make_shared<detail::Memo<std::pair<GroundSet, GroundSet>, Fiber>>();
    MultSystem sys = m;
    return [sys, memo](const GroundSet& S, const GroundSet& T, const Element& z) {
        std::unique_lock g(memo->m);
        auto key = std::make_pair(S, T);
        auto it = memo->table.find(key);
        if (it == memo->table.end()) {
            g.unlock();
            Fiber fib;
            for (const auto& x : sys.species.elements(S))
                for (const auto& y : sys.species.elements(T)) fib[sys.mu(S, T, x, y)].emplace_back(x, y);
            g.lock();
            it = memo->table.emplace(key, std::move(fib)).first;
        }
        TensorVec out({S, T});
        auto f = it->second.find(z);
        if (f != it->second.end())
            for (const auto& [x, y] : f->second) out.add({x, y}, 1);
        return out;
    };
}

/// ∇^π(α ⊗ β) = sum of λ with π(λ) = (α, β).
inline ProductFn nabla_pi(const ComultSystem& c) {
    using Fiber = std::map<std::pair<Element, Element>, std::vector<Element>>;
    auto memo = std::make_shared<detail::Memo<std::pair<GroundSet, GroundSet>, Fiber>>();
    ComultSystem sys = c;
    return [sys, memo](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        std::unique_lock g(memo->m);
        auto key = std::make_pair(S, T);
        auto it = memo->table.find(key);
        if (it == memo->table.end()) {
            g.unlock();
            Fiber fib;
            for (const auto& z : sys.species.elements(set_union(S, T))) fib[sys.pi(S, T, z)].push_back(z);
            g.lock();
            it = memo->table.emplace(key, std::move(fib)).first;
        }
        Vec out(set_union(S, T));
        auto f = it->second.find({x, y});
        if (f != it->second.end())
            for (const auto& z : f->second) out.add(z, 1);
        return out;
    };
}

/// Δ^π(λ) = π(λ) as a pure tensor.
inline CoproductFn delta_pi(const ComultSystem& c) {
    PiFn pi = c.pi;
    return [pi](const GroundSet& S, const GroundSet& T, const Element& z) {
        auto [x, y] = pi(S, T, z);
        TensorVec out({S, T});
        out.add({x, y}, 1);
        return out;
    };
}

inline LinearizedHopf make_hopf(SetSpecies basis, std::string variant, ProductFn p, CoproductFn c) {
    return memoized(LinearizedHopf{std::move(basis), std::move(variant), std::move(p), std::move(c)});
}

namespace detail {
inline const MultSystem& need_mu(const CatalogEntry& e) {
    if (!e.mu) throw std::invalid_argument(e.name + " has no multiplicative system");
    return *e.mu;
}
inline const ComultSystem& need_pi(const CatalogEntry& e) {
    if (!e.pi) throw std::invalid_argument(e.name + " has no comultiplicative system");
    return *e.pi;
}
}  // namespace detail

/// (KP, ∇^μ, Δ^π): the linearized Hopf monoid of the entry.
inline LinearizedHopf hopf_mu_pi(const CatalogEntry& e) {
    return make_hopf(e.species, "nabla^mu,delta^pi", nabla_mu(detail::need_mu(e)), delta_pi(detail::need_pi(e)));
}
/// (KP, ∇^π, Δ^μ).
inline LinearizedHopf hopf_pi_mu(const CatalogEntry& e) {
    return make_hopf(e.species, "nabla^pi,delta^mu", nabla_pi(detail::need_pi(e)), delta_mu(detail::need_mu(e)));
}
/// (KP, ∇^μ, Δ^μ).
inline LinearizedHopf hopf_mu_mu(const MultSystem& m) {
    return make_hopf(m.species, "nabla^mu,delta^mu", nabla_mu(m), delta_mu(m));
}
inline LinearizedHopf hopf_mu_mu(const CatalogEntry& e) { return hopf_mu_mu(detail::need_mu(e)); }
/// (KP, ∇^π, Δ^π).
inline LinearizedHopf hopf_pi_pi(const ComultSystem& c) {
    return make_hopf(c.species, "nabla^pi,delta^pi", nabla_pi(c), delta_pi(c));
}

// Linear extensions.

inline Vec nabla(const LinearizedHopf& h, const TensorVec& t) {
    if (t.parts().size() != 2) throw std::invalid_argument("nabla: expected a two-part tensor");
    const auto& S = t.parts()[0];
    const auto& T = t.parts()[1];
    Vec out(set_union(S, T));
    for (const auto& [k, c] : t.terms()) out += c * h.product(S, T, k[0], k[1]);
    return out;
}

inline TensorVec delta(const LinearizedHopf& h, const GroundSet& S, const GroundSet& T, const Vec& v) {
    if (set_union(S, T) != v.ground() || !disjoint(S, T))
        throw std::invalid_argument("delta: " + S.str() + " and " + T.str() + " do not decompose " + v.ground().str());
    TensorVec out({S, T});
    for (const auto& [z, c] : v.terms()) out += c * h.coproduct(S, T, z);
    return out;
}

// Iterated maps.

namespace detail {

inline GroundSet union_range(const std::vector<GroundSet>& parts, std::size_t i, std::size_t j) {
    std::vector<GroundSet> sub(parts.begin() + static_cast<std::ptrdiff_t>(i), parts.begin() + static_cast<std::ptrdiff_t>(j));
    return union_of(sub);
}

/// ∇ over parts [i, j) of a pure tuple, one value per binary bracketing.
inline std::vector<Vec> all_nablas(const LinearizedHopf& h, const std::vector<GroundSet>& parts, const ElementTuple& x,
                                   std::size_t i, std::size_t j) {
    if (j - i == 1) return {Vec(x[i])};
    std::vector<Vec> out;
    for (std::size_t m = i + 1; m < j; ++m) {
        auto left = all_nablas(h, parts, x, i, m);
        auto right = all_nablas(h, parts, x, m, j);
        for (const auto& l : left)
            for (const auto& r : right) out.push_back(nabla(h, tensor(l, r)));
    }
    return out;
}

inline std::vector<TensorVec> all_deltas(const LinearizedHopf& h, const std::vector<GroundSet>& parts, const Vec& v,
                                         std::size_t i, std::size_t j) {
    if (j - i == 1) return {as_tensor(v)};
    std::vector<TensorVec> out;
    std::vector<GroundSet> sub(parts.begin() + static_cast<std::ptrdiff_t>(i), parts.begin() + static_cast<std::ptrdiff_t>(j));
    for (std::size_t m = i + 1; m < j; ++m) {
        GroundSet L = union_range(parts, i, m), R = union_range(parts, m, j);
        TensorVec d = delta(h, L, R, v);
        std::size_t nl = 0, nr = 0;
        std::vector<TensorVec> acc;
        for (const auto& [k, c] : d.terms()) {
            auto ls = all_deltas(h, parts, Vec(k[0]), i, m);
            auto rs = all_deltas(h, parts, Vec(k[1]), m, j);
            nl = ls.size();
            nr = rs.size();
            if (acc.empty()) acc.assign(nl * nr, TensorVec(sub));
            for (std::size_t a = 0; a < nl; ++a)
                for (std::size_t b = 0; b < nr; ++b) acc[a * nr + b] += c * tensor(ls[a], rs[b]);
        }
        if (acc.empty()) {
            // zero coproduct: every bracketing through this split is zero
            std::size_t count = all_deltas(h, parts, Vec(union_range(parts, i, m)), i, m).size() *
                                all_deltas(h, parts, Vec(union_range(parts, m, j)), m, j).size();
            acc.assign(count, TensorVec(sub));
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

inline std::string parts_str(const std::vector<GroundSet>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i].str();
    return s + ")";
}

}  // namespace detail

/// ∇_{S1..Sk}(t) by a left fold; k = 1 is the identity.
inline Vec iterate_nabla(const LinearizedHopf& h, const TensorVec& t) {
    const auto& parts = t.parts();
    if (parts.empty()) throw std::invalid_argument("iterate_nabla: no parts");
    Vec out(union_of(parts));
    for (const auto& [k, c] : t.terms()) {
        Vec acc(k[0]);
        for (std::size_t i = 1; i < k.size(); ++i) acc = nabla(h, tensor(acc, Vec(k[i])));
        out += c * acc;
    }
    return out;
}

/// Δ_{S1..Sk}(v) by splitting off S1 repeatedly; k = 1 is the identity.
inline TensorVec iterate_delta(const LinearizedHopf& h, const std::vector<GroundSet>& parts, const Vec& v) {
    if (parts.empty()) throw std::invalid_argument("iterate_delta: no parts");
    if (parts.size() == 1) return as_tensor(v);
    std::vector<GroundSet> rest(parts.begin() + 1, parts.end());
    TensorVec d = delta(h, parts[0], union_of(rest), v);
    TensorVec out(parts);
    for (const auto& [k, c] : d.terms()) out += c * tensor(as_tensor(Vec(k[0])), iterate_delta(h, rest, Vec(k[1])));
    return out;
}

/// Evaluates every bracketing of ∇_{S1..Sk} on t; returns a witness if two differ.
inline std::optional<std::string> verify_iterate_nabla(const LinearizedHopf& h, const TensorVec& t) {
    const auto& parts = t.parts();
    std::vector<Vec> totals;
    for (const auto& [k, c] : t.terms()) {
        auto vals = detail::all_nablas(h, parts, k, 0, parts.size());
        if (totals.empty()) totals.assign(vals.size(), Vec(union_of(parts)));
        for (std::size_t b = 0; b < vals.size(); ++b) totals[b] += c * vals[b];
    }
    for (std::size_t b = 1; b < totals.size(); ++b)
        if (!(totals[b] == totals[0]))
            return "bracketings 0 and " + std::to_string(b) + " of nabla over " + detail::parts_str(parts) +
                   " differ: " + totals[0].str() + " vs " + totals[b].str();
    return std::nullopt;
}

inline std::optional<std::string> verify_iterate_delta(const LinearizedHopf& h, const std::vector<GroundSet>& parts,
                                                       const Vec& v) {
    auto vals = detail::all_deltas(h, parts, v, 0, parts.size());
    for (std::size_t b = 1; b < vals.size(); ++b)
        if (!(vals[b] == vals[0]))
            return "bracketings 0 and " + std::to_string(b) + " of delta over " + detail::parts_str(parts) +
                   " differ on " + v.str();
    return std::nullopt;
}

// Set-level iterates of the systems.

inline Element mu_iterate(const MultSystem& m, const std::vector<GroundSet>& parts, const ElementTuple& xs) {
    Element acc = xs.at(0);
    GroundSet g = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = m.mu(g, parts[i], acc, xs[i]);
        g = set_union(g, parts[i]);
    }
    return acc;
}

inline ElementTuple pi_iterate(const ComultSystem& c, const std::vector<GroundSet>& parts, const Element& z) {
    ElementTuple out;
    Element cur = z;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        std::vector<GroundSet> rest(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1, parts.end());
        auto [a, b] = c.pi(parts[i], union_of(rest), cur);
        out.push_back(a);
        cur = b;
    }
    out.push_back(cur);
    return out;
}

// Axioms.

enum class Axiom { Associative, Commutative, Unital, Coassociative, Cocommutative, Counital, HopfCompatible };

inline const std::vector<Axiom>& all_axioms() {
    static const std::vector<Axiom> v{Axiom::Associative,   Axiom::Commutative, Axiom::Unital,
                                      Axiom::Coassociative, Axiom::Cocommutative, Axiom::Counital,
                                      Axiom::HopfCompatible};
    return v;
}

inline std::string axiom_name(Axiom a) {
    switch (a) {
        case Axiom::Associative: return "associative";
        case Axiom::Commutative: return "commutative";
        case Axiom::Unital: return "unital";
        case Axiom::Coassociative: return "coassociative";
        case Axiom::Cocommutative: return "cocommutative";
        case Axiom::Counital: return "counital";
        case Axiom::HopfCompatible: return "hopf_compatible";
    }
    return "?";
}

inline std::optional<Axiom> parse_axiom(const std::string& s) {
    for (Axiom a : all_axioms())
        if (axiom_name(a) == s) return a;
    return std::nullopt;
}

namespace detail {

inline std::string pair_str(const Element& x, const Element& y) { return x.str() + " ⊗ " + y.str(); }

inline std::optional<std::string> axiom_at(const LinearizedHopf& h, Axiom ax, const GroundSet& I) {
    const auto& P = h.basis;
    switch (ax) {
        case Axiom::Associative:
            for (const auto& d : decompositions(I, 3, false)) {
                const auto &R = d[0], &S = d[1], &T = d[2];
                for (const auto& x : P.elements(R))
                    for (const auto& y : P.elements(S))
                        for (const auto& z : P.elements(T)) {
                            Vec l = nabla(h, tensor(h.product(R, S, x, y), Vec(z)));
                            Vec r = nabla(h, tensor(Vec(x), h.product(S, T, y, z)));
                            if (!(l == r))
                                return "x=" + x.str() + " y=" + y.str() + " z=" + z.str() + ": (xy)z = " + l.str() +
                                       " but x(yz) = " + r.str();
                        }
            }
            return std::nullopt;
        case Axiom::Commutative:
            for (const auto& d : decompositions(I, 2, false)) {
                const auto &S = d[0], &T = d[1];
                for (const auto& x : P.elements(S))
                    for (const auto& y : P.elements(T)) {
                        Vec l = h.product(S, T, x, y), r = h.product(T, S, y, x);
                        if (!(l == r))
                            return "x=" + x.str() + " y=" + y.str() + ": " + l.str() + " != " + r.str();
                    }
            }
            return std::nullopt;
        case Axiom::Unital: {
            auto units = P.elements(GroundSet{});
            if (units.size() != 1)
                return "P[{}] has " + std::to_string(units.size()) + " elements, so the species is not connected";
            const Element& one = units[0];
            for (const auto& x : P.elements(I)) {
                if (!(h.product(GroundSet{}, I, one, x) == Vec(x))) return "1·x != x for x=" + x.str();
                if (!(h.product(I, GroundSet{}, x, one) == Vec(x))) return "x·1 != x for x=" + x.str();
            }
            return std::nullopt;
        }
        case Axiom::Coassociative:
            for (const auto& d : decompositions(I, 3, false)) {
                const auto &R = d[0], &S = d[1], &T = d[2];
                GroundSet RS = set_union(R, S), ST = set_union(S, T);
                for (const auto& z : P.elements(I)) {
                    TensorVec l({R, S, T}), r({R, S, T});
                    for (const auto& [k, c] : h.coproduct(RS, T, z).terms())
                        l += c * tensor(h.coproduct(R, S, k[0]), as_tensor(Vec(k[1])));
                    for (const auto& [k, c] : h.coproduct(R, ST, z).terms())
                        r += c * tensor(as_tensor(Vec(k[0])), h.coproduct(S, T, k[1]));
                    if (!(l == r))
                        return "z=" + z.str() + " over " + parts_str({R, S, T}) + ": " + l.str() + " vs " + r.str();
                }
            }
            return std::nullopt;
        case Axiom::Cocommutative:
            for (const auto& d : decompositions(I, 2, false)) {
                const auto &S = d[0], &T = d[1];
                for (const auto& z : P.elements(I)) {
                    TensorVec l = h.coproduct(S, T, z);
                    TensorVec r = twist(h.coproduct(T, S, z), {1, 0});
                    if (!(l == r))
                        return "z=" + z.str() + " S=" + S.str() + ": " + l.str() + " vs twisted " + r.str();
                }
            }
            return std::nullopt;
        case Axiom::Counital: {
            auto units = P.elements(GroundSet{});
            if (units.size() != 1) return "P[{}] is not a singleton";
            const Element& one = units[0];
            for (const auto& z : P.elements(I)) {
                TensorVec l({GroundSet{}, I}), r({I, GroundSet{}});
                l.add({one, z}, 1);
                r.add({z, one}, 1);
                if (!(h.coproduct(GroundSet{}, I, z) == l)) return "Delta_{{},I}(z) != 1 ⊗ z for z=" + z.str();
                if (!(h.coproduct(I, GroundSet{}, z) == r)) return "Delta_{I,{}}(z) != z ⊗ 1 for z=" + z.str();
            }
            return std::nullopt;
        }
        case Axiom::HopfCompatible: {
            // I = R ⊔ R' = S ⊔ S'; A = R∩S, B = R∩S', A' = R'∩S, B' = R'∩S'.
            // The lower arrow reorders (A, B, A', B') to (A, A', B, B').
            auto ds = decompositions(I, 2, false);
            for (const auto& rd : ds) {
                const auto &R = rd[0], &Rp = rd[1];
                for (const auto& x : P.elements(R))
                    for (const auto& y : P.elements(Rp)) {
                        Vec prod = h.product(R, Rp, x, y);
                        for (const auto& sd : ds) {
                            const auto &S = sd[0], &Sp = sd[1];
                            GroundSet A = set_intersection(R, S), B = set_intersection(R, Sp);
                            GroundSet Ap = set_intersection(Rp, S), Bp = set_intersection(Rp, Sp);
                            TensorVec lhs = delta(h, S, Sp, prod);
                            TensorVec four = twist(tensor(h.coproduct(A, B, x), h.coproduct(Ap, Bp, y)), {0, 2, 1, 3});
                            TensorVec rhs({S, Sp});
                            for (const auto& [k, c] : four.terms())
                                rhs += c * tensor(h.product(A, Ap, k[0], k[1]), h.product(B, Bp, k[2], k[3]));
                            if (!(lhs == rhs))
                                return "R=" + R.str() + " S=" + S.str() + " x=" + x.str() + " y=" + y.str() +
                                       ": " + lhs.str() + " vs " + rhs.str();
                        }
                    }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Exhaustive check of one axiom over I = {1..n} for n = 0..max_n. On failure
/// the report carries the smallest failing n and the first witness there.
inline CheckReport check_axiom(const LinearizedHopf& h, Axiom ax, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n)
            if (auto w = detail::axiom_at(h, ax, GroundSet::range(n)))
                return make_report(axiom_name(ax), h.label(), n, "n=" + std::to_string(n) + " " + *w);
        return make_report(axiom_name(ax), h.label(), max_n, std::nullopt);
    });
}

/// All seven axioms; the first failure's name, or nullopt.
inline std::optional<std::string> first_failing_axiom(const LinearizedHopf& h, int max_n) {
    for (Axiom a : all_axioms()) {
        auto r = check_axiom(h, a, max_n);
        if (!r.passed()) return axiom_name(a) + ": " + r.witness.value_or("");
    }
    return std::nullopt;
}

/// Δ_{S,T} ∘ ∇_{S,T} = id on every basis tensor, |S ⊔ T| ≤ max_n.
inline CheckReport check_injsurj(const LinearizedHopf& h, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n)
            for (const auto& d : decompositions(GroundSet::range(n), 2, false))
                for (const auto& x : h.basis.elements(d[0]))
                    for (const auto& y : h.basis.elements(d[1])) {
                        TensorVec got = delta(h, d[0], d[1], h.product(d[0], d[1], x, y));
                        TensorVec want({d[0], d[1]});
                        want.add({x, y}, 1);
                        if (!(got == want))
                            return make_report("delta_after_nabla_identity", h.label(), n,
                                               "x=" + x.str() + " y=" + y.str() + ": " + got.str());
                    }
        return make_report("delta_after_nabla_identity", h.label(), max_n, std::nullopt);
    });
}

// Self-compatibility of a multiplicative system.

enum class SelfCompatMode { Direct, Local };

struct SelfCompatResult {
    CheckReport direct;
    CheckReport local;
    std::optional<char> failing_condition;  // 'a', 'b' or 'c' from the local mode
};

namespace detail {

inline std::optional<std::string> mu_assoc_unital(const MultSystem& m, int max_n) {
    auto h = hopf_mu_mu(m);
    for (Axiom a : {Axiom::Associative, Axiom::Unital}) {
        auto r = check_axiom(h, a, max_n);
        if (!r.passed()) return axiom_name(a) + " fails: " + r.witness.value_or("");
    }
    return std::nullopt;
}

/// Local conditions; returns (condition letter, witness) of the first failure.
inline std::optional<std::pair<char, std::string>> local_conditions(const MultSystem& m, int max_n) {
    const auto& P = m.species;
    // (a) commutative
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false))
            for (const auto& x : P.elements(d[0]))
                for (const auto& y : P.elements(d[1]))
                    if (!(m.mu(d[0], d[1], x, y) == m.mu(d[1], d[0], y, x)))
                        return std::make_pair('a', "mu(" + x.str() + "," + y.str() + ") != mu(" + y.str() + "," + x.str() + ")");
    // (b) injective
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            std::map<Element, std::pair<Element, Element>> seen;
            for (const auto& x : P.elements(d[0]))
                for (const auto& y : P.elements(d[1])) {
                    Element z = m.mu(d[0], d[1], x, y);
                    auto [it, fresh] = seen.emplace(z, std::make_pair(x, y));
                    if (!fresh)
                        return std::make_pair('b', "mu(" + it->second.first.str() + "," + it->second.second.str() +
                                                       ") = mu(" + x.str() + "," + y.str() + ") = " + z.str());
                }
        }
    // (c) image condition
    std::map<std::pair<GroundSet, GroundSet>, std::set<Element>> images;
    auto image = [&](const GroundSet& A, const GroundSet& B) -> const std::set<Element>& {
        auto key = std::make_pair(A, B);
        auto it = images.find(key);
        if (it != images.end()) return it->second;
        std::set<Element> im;
        for (const auto& x : P.elements(A))
            for (const auto& y : P.elements(B)) im.insert(m.mu(A, B, x, y));
        return images.emplace(key, std::move(im)).first->second;
    };
    for (int n = 0; n <= max_n; ++n) {
        auto ds = decompositions(GroundSet::range(n), 2, false);
        for (const auto& sd : ds) {
            const auto &S = sd[0], &Sp = sd[1];
            for (const auto& l : P.elements(S))
                for (const auto& lp : P.elements(Sp)) {
                    Element z = m.mu(S, Sp, l, lp);
                    for (const auto& ad : ds) {
                        const auto &A = ad[0], &B = ad[1];
                        if (!image(A, B).count(z)) continue;
                        if (!image(set_intersection(A, S), set_intersection(B, S)).count(l) ||
                            !image(set_intersection(A, Sp), set_intersection(B, Sp)).count(lp))
                            return std::make_pair('c', "S=" + S.str() + " A=" + A.str() + " lambda=" + l.str() +
                                                           " lambda'=" + lp.str() + ": product lies in Image(mu_{A,B})");
                    }
                }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Runs the requested mode. Fails with a witness if μ is not associative and unital.
inline CheckReport check_self_compatible(const MultSystem& m, SelfCompatMode mode, int max_n) {
    const std::string name = mode == SelfCompatMode::Direct ? "self_compatible_direct" : "self_compatible_local";
    return timed([&] {
        if (auto pre = detail::mu_assoc_unital(m, max_n))
            return make_report(name, m.species.name, max_n, "precondition: " + *pre);
        if (mode == SelfCompatMode::Direct) {
            auto r = check_axiom(hopf_mu_mu(m), Axiom::HopfCompatible, max_n);
            r.check = name;
            r.species = m.species.name;
            return r;
        }
        auto f = detail::local_conditions(m, max_n);
        if (f) return make_report(name, m.species.name, max_n, std::string("(") + f->first + ") " + f->second);
        return make_report(name, m.species.name, max_n, std::nullopt);
    });
}

/// Both modes; throws FatalInconsistency if they disagree.
inline SelfCompatResult self_compatibility(const MultSystem& m, int max_n) {
    SelfCompatResult out{check_self_compatible(m, SelfCompatMode::Direct, max_n),
                         check_self_compatible(m, SelfCompatMode::Local, max_n), std::nullopt};
    if (out.direct.passed() != out.local.passed())
        throw FatalInconsistency("self_compatible", m.species.name + ": direct " + status_name(out.direct.status) +
                                                        " (" + out.direct.witness.value_or("") + ") but local " +
                                                        status_name(out.local.status) + " (" +
                                                        out.local.witness.value_or("") + ")");
    if (!out.local.passed() && out.local.witness && out.local.witness->size() > 2 && (*out.local.witness)[0] == '(')
        out.failing_condition = (*out.local.witness)[1];
    return out;
}

/// π analogue: direct = Hopf compatibility of (∇^π, Δ^π); local = cocommutative and bijective.
inline SelfCompatResult pi_self_compatibility(const ComultSystem& c, int max_n) {
    auto h = hopf_pi_pi(c);
    SelfCompatResult out{{}, {}, std::nullopt};
    for (Axiom a : {Axiom::Coassociative, Axiom::Counital}) {
        auto r = check_axiom(h, a, max_n);
        if (!r.passed()) {
            out.direct = out.local = make_report("pi_self_compatible", c.species.name, max_n,
                                                 "precondition: " + axiom_name(a) + " fails");
            return out;
        }
    }
    out.direct = check_axiom(h, Axiom::HopfCompatible, max_n);
    out.direct.check = "pi_self_compatible_direct";
    out.direct.species = c.species.name;
    std::optional<std::string> w;
    auto coco = check_axiom(h, Axiom::Cocommutative, max_n);
    if (!coco.passed()) w = "not cocommutative: " + coco.witness.value_or("");
    for (int n = 0; n <= max_n && !w; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            std::map<std::pair<Element, Element>, int> hits;
            for (const auto& z : c.species.elements(set_union(d[0], d[1])))
                hits[c.pi(d[0], d[1], z)]++;
            for (const auto& x : c.species.elements(d[0]))
                for (const auto& y : c.species.elements(d[1]))
                    if (!w && hits[{x, y}] != 1)
                        w = "not bijective: fiber over (" + x.str() + "," + y.str() + ") has " +
                            std::to_string(hits[{x, y}]) + " elements";
            if (w) break;
        }
    out.local = make_report("pi_self_compatible_local", c.species.name, max_n, w);
    if (out.direct.passed() != out.local.passed())
        throw FatalInconsistency("pi_self_compatible", c.species.name + ": direct and local modes disagree");
    return out;
}

// Structure constants and free self-duality.

using ConstantKey = std::tuple<Element, Element, Element>;  // (x over S, y over T, z over S ⊔ T)
using ConstantTable = std::map<ConstantKey, Rational>;

struct StructureConstants {
    GroundSet S, T;
    ConstantTable product;    // a: coefficient of z in ∇(x ⊗ y)
    ConstantTable coproduct;  // b: coefficient of x ⊗ y in Δ(z)
};

inline StructureConstants structure_constants(const LinearizedHopf& h, const GroundSet& S, const GroundSet& T) {
    StructureConstants sc{S, T, {}, {}};
    for (const auto& x : h.basis.elements(S))
        for (const auto& y : h.basis.elements(T))
            for (const auto& [z, c] : h.product(S, T, x, y).terms()) sc.product.emplace(ConstantKey{x, y, z}, c);
    for (const auto& z : h.basis.elements(set_union(S, T)))
        for (const auto& [k, c] : h.coproduct(S, T, z).terms()) sc.coproduct.emplace(ConstantKey{k[0], k[1], z}, c);
    return sc;
}

namespace detail {

inline std::string constant_str(const ConstantKey& k) {
    return "(" + std::get<0>(k).str() + "," + std::get<1>(k).str() + "," + std::get<2>(k).str() + ")";
}

/// First key where two tables differ.
inline std::optional<std::string> table_diff(const ConstantTable& a, const ConstantTable& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
            return constant_str(ia->first) + ": " + to_string(ia->second) + " vs 0";
        if (ia == a.end() || ib->first < ia->first) return constant_str(ib->first) + ": 0 vs " + to_string(ib->second);
        if (ia->second != ib->second)
            return constant_str(ia->first) + ": " + to_string(ia->second) + " vs " + to_string(ib->second);
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

/// ⟨∇u, w⟩ = ⟨u, Δw⟩ with the basis orthonormal, on basis pairs and on
/// seeded random combinations.
inline std::optional<std::string> form_violation(const LinearizedHopf& h, const GroundSet& S, const GroundSet& T,
                                                 std::mt19937_64& rng) {
    auto PS = h.basis.elements(S), PT = h.basis.elements(T), PI = h.basis.elements(set_union(S, T));
    auto pair_vec = [](const Vec& a, const Vec& b) {
        Rational s = 0;
        for (const auto& [x, c] : a.terms()) s += c * b.coeff(x);
        return s;
    };
    auto pair_tensor = [](const TensorVec& a, const TensorVec& b) {
        Rational s = 0;
        for (const auto& [k, c] : a.terms()) s += c * b.coeff(k);
        return s;
    };
    for (const auto& x : PS)
        for (const auto& y : PT) {
            Vec prod = h.product(S, T, x, y);
            TensorVec u({S, T});
            u.add({x, y}, 1);
            for (const auto& z : PI)
                if (pair_vec(prod, Vec(z)) != pair_tensor(u, h.coproduct(S, T, z)))
                    return "<nabla(" + x.str() + "⊗" + y.str() + ")," + z.str() + "> != <" + x.str() + "⊗" + y.str() +
                           ",delta(" + z.str() + ")>";
        }
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 4; ++trial) {
        TensorVec u({S, T});
        for (const auto& x : PS)
            for (const auto& y : PT) u.add({x, y}, coeff(rng));
        Vec w(set_union(S, T));
        for (const auto& z : PI) w.add(z, coeff(rng));
        if (pair_vec(nabla(h, u), w) != pair_tensor(u, delta(h, S, T, w)))
            return "invariance fails on random combinations over S=" + S.str() + " T=" + T.str();
    }
    return std::nullopt;
}

}  // namespace detail

/// Free self-duality in the given basis: h is a Hopf monoid, the product and
/// coproduct tables coincide, and the basis form is invariant. Table and form
/// verdicts must agree.
inline CheckReport check_fsd(const LinearizedHopf& h, int max_n, std::uint64_t seed = 0) {
    return timed([&] {
        if (auto bad = first_failing_axiom(h, max_n))
            return make_report("fsd", h.label(), max_n, "not a Hopf monoid: " + *bad);
        std::mt19937_64 rng(seed);
        for (int n = 0; n <= max_n; ++n)
            for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
                auto sc = structure_constants(h, d[0], d[1]);
                auto tables = detail::table_diff(sc.product, sc.coproduct);
                auto form = detail::form_violation(h, d[0], d[1], rng);
                if (tables.has_value() != form.has_value())
                    throw FatalInconsistency("fsd", h.label() + ": table comparison and invariant form disagree at S=" +
                                                        d[0].str() + " T=" + d[1].str());
                if (tables)
                    return make_report("fsd", h.label(), n, "S=" + d[0].str() + " T=" + d[1].str() + " " + *tables);
            }
        return make_report("fsd", h.label(), max_n, std::nullopt);
    });
}

/// Strong self-duality in the given basis: h is a Hopf monoid, ∇ sends basis
/// pairs to basis elements, and each basis element of P[S ⊔ T] is a product of
/// basis elements or lies in ker Δ_{S,T}.
inline CheckReport check_ssd(const LinearizedHopf& h, int max_n) {
    return timed([&] {
        if (auto bad = first_failing_axiom(h, max_n))
            return make_report("ssd", h.label(), max_n, "not a Hopf monoid: " + *bad);
        for (int n = 0; n <= max_n; ++n)
            for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
                std::set<Element> image;
                for (const auto& x : h.basis.elements(d[0]))
                    for (const auto& y : h.basis.elements(d[1])) {
                        Vec p = h.product(d[0], d[1], x, y);
                        if (p.size() != 1 || p.terms().begin()->second != 1)
                            return make_report("ssd", h.label(), n,
                                               "(a) product of " + x.str() + " and " + y.str() + " is " + p.str());
                        image.insert(p.terms().begin()->first);
                    }
                for (const auto& z : h.basis.elements(set_union(d[0], d[1])))
                    if (!image.count(z) && !h.coproduct(d[0], d[1], z).is_zero())
                        return make_report("ssd", h.label(), n,
                                           "(b) " + z.str() + " is neither a product nor in ker Delta_{" + d[0].str() +
                                               "," + d[1].str() + "}");
            }
        return make_report("ssd", h.label(), max_n, std::nullopt);
    });
}

/// Structure with product constants b^T and coproduct constants a^T of h.
inline LinearizedHopf dual_transpose(const LinearizedHopf& h) {
    LinearizedHopf src = h;
    ProductFn p = [src](const GroundSet& S, const GroundSet& T, const Element& x, const Element& y) {
        Vec out(set_union(S, T));
        for (const auto& z : src.basis.elements(set_union(S, T))) out.add(z, src.coproduct(S, T, z).coeff({x, y}));
        return out;
    };
    CoproductFn c = [src](const GroundSet& S, const GroundSet& T, const Element& z) {
        TensorVec out({S, T});
        for (const auto& x : src.basis.elements(S))
            for (const auto& y : src.basis.elements(T)) out.add({x, y}, src.product(S, T, x, y).coeff(z));
        return out;
    };
    return make_hopf(h.basis, "dual(" + h.variant + ")", std::move(p), std::move(c));
}

/// Compares both structure-constant tables of two structures on P, n ≤ max_n.
inline std::optional<std::string> compare_structures(const LinearizedHopf& a, const LinearizedHopf& b, int max_n) {
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            auto sa = structure_constants(a, d[0], d[1]);
            auto sb = structure_constants(b, d[0], d[1]);
            if (auto w = detail::table_diff(sa.product, sb.product))
                return "product constants differ at S=" + d[0].str() + " T=" + d[1].str() + " " + *w;
            if (auto w = detail::table_diff(sa.coproduct, sb.coproduct))
                return "coproduct constants differ at S=" + d[0].str() + " T=" + d[1].str() + " " + *w;
        }
    return std::nullopt;
}

// Antipode.

/// S_I(v) = sum over ordered decompositions of I into nonempty parts of
/// (-1)^k ∇_{S1..Sk} Δ_{S1..Sk}(v); S_∅ = id.
inline Vec takeuchi_antipode(const LinearizedHopf& h, const Vec& v) {
    const GroundSet& I = v.ground();
    if (I.empty()) return v;
    Vec out(I);
    for (std::size_t k = 1; k <= I.size(); ++k) {
        Rational sign = k % 2 ? -1 : 1;
        for (const auto& parts : decompositions(I, k, true)) out += sign * iterate_nabla(h, iterate_delta(h, parts, v));
    }
    return out;
}

/// S(λ) = (-1)^{factors(λ)} λ on every basis element, n ≤ max_n.
inline CheckReport check_antipode_scalar(const LinearizedHopf& h, const std::function<std::size_t(const Element&)>& factors,
                                         int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n)
            for (const auto& x : h.basis.elements(GroundSet::range(n))) {
                Vec got = takeuchi_antipode(h, Vec(x));
                Vec want = (factors(x) % 2 ? Rational(-1) : Rational(1)) * Vec(x);
                if (!(got == want))
                    return make_report("antipode_scalar", h.label(), n, "S(" + x.str() + ") = " + got.str());
            }
        return make_report("antipode_scalar", h.label(), max_n, std::nullopt);
    });
}

/// ∇(S ⊗ id)Δ = ∇(id ⊗ S)Δ = unit∘counit on basis elements, n ≤ max_n.
inline CheckReport check_antipode_axiom(const LinearizedHopf& h, int max_n) {
    return timed([&] {
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            for (const auto& x : h.basis.elements(I)) {
                Vec left(I), right(I);
                for (const auto& d : decompositions(I, 2, false))
                    for (const auto& [k, c] : h.coproduct(d[0], d[1], x).terms()) {
                        left += c * nabla(h, tensor(takeuchi_antipode(h, Vec(k[0])), Vec(k[1])));
                        right += c * nabla(h, tensor(Vec(k[0]), takeuchi_antipode(h, Vec(k[1]))));
                    }
                Vec want = n == 0 ? Vec(x) : Vec(I);
                if (!(left == want) || !(right == want))
                    return make_report("antipode_axiom", h.label(), n,
                                       "x=" + x.str() + ": S*id = " + left.str() + ", id*S = " + right.str());
            }
        }
        return make_report("antipode_axiom", h.label(), max_n, std::nullopt);
    });
}

// Set-level rectangle for commuting systems.

/// π_{S1..Sl} ∘ μ_{R1..Rk} equals componentwise π, regrouping, componentwise μ,
/// for all decompositions with k, l ≤ max_parts and every input tuple.
inline CheckReport check_preorder_rectangle(const MultSystem& m, const ComultSystem& c, int max_n, std::size_t max_parts = 3) {
    const auto& P = m.species;
    return timed([&] {
        for (int n = 0; n <= max_n; ++n) {
            GroundSet I = GroundSet::range(n);
            for (std::size_t k = 1; k <= max_parts; ++k)
                for (const auto& R : decompositions(I, k, false)) {
                    // every tuple x_i ∈ P[R_i]
                    std::vector<std::vector<Element>> choices;
                    for (const auto& r : R) choices.push_back(P.elements(r));
                    std::vector<std::size_t> idx(k, 0);
                    bool empty = false;
                    for (const auto& ch : choices) empty |= ch.empty();
                    while (!empty) {
                        ElementTuple xs(k);
                        for (std::size_t i = 0; i < k; ++i) xs[i] = choices[i][idx[i]];
                        Element z = mu_iterate(m, R, xs);
                        for (std::size_t l = 1; l <= max_parts; ++l)
                            for (const auto& S : decompositions(I, l, false)) {
                                ElementTuple lhs = pi_iterate(c, S, z);
                                std::vector<ElementTuple> grid(k);
                                for (std::size_t i = 0; i < k; ++i) {
                                    std::vector<GroundSet> cut;
                                    for (const auto& s : S) cut.push_back(set_intersection(R[i], s));
                                    grid[i] = pi_iterate(c, cut, xs[i]);
                                }
                                for (std::size_t j = 0; j < l; ++j) {
                                    std::vector<GroundSet> cut;
                                    ElementTuple col;
                                    for (std::size_t i = 0; i < k; ++i) {
                                        cut.push_back(set_intersection(S[j], R[i]));
                                        col.push_back(grid[i][j]);
                                    }
                                    if (!(mu_iterate(m, cut, col) == lhs[j]))
                                        return make_report("preorder_rectangle", P.name, n,
                                                           "R=" + detail::parts_str(R) + " S=" + detail::parts_str(S) +
                                                               " z=" + z.str());
                                }
                            }
                        std::size_t pos = k;
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
        }
        return make_report("preorder_rectangle", P.name, max_n, std::nullopt);
    });
}

}  // namespace species_forge
