#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "species_forge/element.hpp"
#include "species_forge/ground_set.hpp"

namespace species_forge {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// A finite rational combination of elements over one ground set.
class Vec {
public:
    Vec() = default;
    explicit Vec(GroundSet ground) : ground_(std::move(ground)) {}
    Vec(const Element& x, Rational c = 1) : ground_(x.ground()) { add(x, c); }

    const GroundSet& ground() const noexcept { return ground_; }
    const std::map<Element, Rational>& terms() const& noexcept { return terms_; }
    std::map<Element, Rational> terms() && { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coeff(const Element& x) const {
        auto it = terms_.find(x);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Vec& add(const Element& x, const Rational& c) {
        if (x.ground() != ground_)
            throw std::invalid_argument("Vec: element " + x.str() + " is not over " + ground_.str());
        if (c == 0) return *this;
        Rational cc = c;
        cc.canonicalize();
        auto [it, fresh] = terms_.try_emplace(x, cc);
        if (!fresh) {
            it->second += cc;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    Vec& operator+=(const Vec& o) {
        check_ground(o);
        for (const auto& [x, c] : o.terms_) add(x, c);
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check_ground(o);
        for (const auto& [x, c] : o.terms_) add(x, -c);
        return *this;
    }
    Vec& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [x, c] : terms_) c *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const Rational& s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= Rational(-1); }

    friend bool operator==(const Vec& a, const Vec& b) { return a.ground_ == b.ground_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [x, c] : terms_) {
            if (!first) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            first = false;
            Rational a = abs(c);
            if (a != 1) s += to_string(a) + "*";
            s += x.str();
        }
        return s;
    }

private:
    void check_ground(const Vec& o) const {
        if (o.ground_ != ground_)
            throw std::invalid_argument("Vec: ground mismatch " + ground_.str() + " vs " + o.ground_.str());
    }

    GroundSet ground_;
    std::map<Element, Rational> terms_;
};

using ElementTuple = std::vector<Element>;

/// A finite rational combination of element tuples over pairwise disjoint parts.
class TensorVec {
public:
    TensorVec() = default;
    explicit TensorVec(std::vector<GroundSet> parts) : parts_(std::move(parts)) {
        union_of(parts_);  // rejects overlapping parts
    }

    const std::vector<GroundSet>& parts() const noexcept { return parts_; }
    const std::map<ElementTuple, Rational>& terms() const& noexcept { return terms_; }
    std::map<ElementTuple, Rational> terms() && { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coeff(const ElementTuple& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    TensorVec& add(const ElementTuple& key, const Rational& c) {
        if (key.size() != parts_.size()) throw std::invalid_argument("TensorVec: tuple arity mismatch");
        for (std::size_t i = 0; i < key.size(); ++i)
            if (key[i].ground() != parts_[i])
                throw std::invalid_argument("TensorVec: " + key[i].str() + " is not over " + parts_[i].str());
        if (c == 0) return *this;
        Rational cc = c;
        cc.canonicalize();
        auto [it, fresh] = terms_.try_emplace(key, cc);
        if (!fresh) {
            it->second += cc;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    TensorVec& operator+=(const TensorVec& o) {
        if (o.parts_ != parts_) throw std::invalid_argument("TensorVec: part mismatch");
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    TensorVec& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend TensorVec operator+(TensorVec a, const TensorVec& b) { return a += b; }
    friend TensorVec operator*(const Rational& s, TensorVec a) { return a *= s; }

    friend bool operator==(const TensorVec& a, const TensorVec& b) {
        return a.parts_ == b.parts_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            if (c != 1) s += "(" + to_string(c) + ")*";
            for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " ⊗ " : "") + k[i].str();
        }
        return s;
    }

private:
    std::vector<GroundSet> parts_;
    std::map<ElementTuple, Rational> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const Vec& v) { return os << v.str(); }
inline std::ostream& operator<<(std::ostream& os, const TensorVec& t) { return os << t.str(); }

inline TensorVec tensor(const Vec& v, const Vec& w) {
    if (!disjoint(v.ground(), w.ground()))
        throw std::invalid_argument("tensor: overlapping ground sets " + v.ground().str() + ", " + w.ground().str());
    TensorVec t({v.ground(), w.ground()});
    for (const auto& [x, a] : v.terms())
        for (const auto& [y, b] : w.terms()) t.add({x, y}, a * b);
    return t;
}

/// Tensor of two tensor vectors, concatenating their parts.
inline TensorVec tensor(const TensorVec& v, const TensorVec& w) {
    std::vector<GroundSet> parts = v.parts();
    parts.insert(parts.end(), w.parts().begin(), w.parts().end());
    TensorVec t(std::move(parts));
    for (const auto& [x, a] : v.terms())
        for (const auto& [y, b] : w.terms()) {
            ElementTuple k = x;
            k.insert(k.end(), y.begin(), y.end());
            t.add(k, a * b);
        }
    return t;
}

inline TensorVec as_tensor(const Vec& v) {
    TensorVec t({v.ground()});
    for (const auto& [x, c] : v.terms()) t.add({x}, c);
    return t;
}

/// Reorders parts: output part i is input part perm[i].
inline TensorVec twist(const TensorVec& t, const std::vector<std::size_t>& perm) {
    const std::size_t k = t.parts().size();
    if (perm.size() != k) throw std::invalid_argument("twist: permutation arity mismatch");
    std::vector<bool> hit(k, false);
    for (std::size_t p : perm) {
        if (p >= k || hit[p]) throw std::invalid_argument("twist: not a permutation");
        hit[p] = true;
    }
    std::vector<GroundSet> parts(k);
    for (std::size_t i = 0; i < k; ++i) parts[i] = t.parts()[perm[i]];
    TensorVec out(std::move(parts));
    for (const auto& [key, c] : t.terms()) {
        ElementTuple nk(k);
        for (std::size_t i = 0; i < k; ++i) nk[i] = key[perm[i]];
        out.add(nk, c);
    }
    return out;
}

/// Collapses a single-part tensor vector back to a Vec.
inline Vec flatten(const TensorVec& t) {
    if (t.parts().size() != 1) throw std::invalid_argument("flatten: expected exactly one part");
    Vec v(t.parts()[0]);
    for (const auto& [k, c] : t.terms()) v.add(k[0], c);
    return v;
}

}  // namespace species_forge
