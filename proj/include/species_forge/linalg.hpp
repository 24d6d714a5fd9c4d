#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "species_forge/element.hpp"
#include "species_forge/vec.hpp"

namespace species_forge {

using RowVector = std::vector<Rational>;
using Matrix = std::vector<RowVector>;

/// Reduced row echelon form kept over the integers.
///
/// Rows are primitive (content 1) with positive pivot; pivots[r] is the pivot
/// column of row r.
struct Echelon {
    std::vector<std::vector<mpz_class>> rows;
    std::vector<std::size_t> pivots;
    std::size_t cols = 0;
    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

inline void make_primitive(std::vector<mpz_class>& row) {
    mpz_class g = 0;
    for (const auto& a : row) g = gcd(g, a);
    if (g > 1)
        for (auto& a : row) a /= g;
}

inline std::vector<mpz_class> integer_row(const RowVector& r) {
    mpz_class l = 1;
    for (const auto& q : r) l = lcm(l, q.get_den());
    std::vector<mpz_class> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = r[j].get_num() * (l / r[j].get_den());
    return out;
}

}  // namespace detail

/// Fraction-free Gauss-Jordan elimination. The pivot is the first column with
/// a nonzero entry at or below the current row, taken from the smallest row.
inline Echelon echelon(const Matrix& m, std::size_t cols) {
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(m.size());
    for (const auto& r : m) {
        if (r.size() != cols) throw std::invalid_argument("echelon: ragged matrix");
        rows.push_back(detail::integer_row(r));
    }
    Echelon e;
    e.cols = cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        if (rows[rank][c] < 0)
            for (auto& a : rows[rank]) a = -a;
        detail::make_primitive(rows[rank]);
        const auto& piv = rows[rank];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c] == 0) continue;
            mpz_class a = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = piv[c] * rows[i][j] - a * piv[j];
            detail::make_primitive(rows[i]);
        }
        e.pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    e.rows = std::move(rows);
    return e;
}

inline std::size_t rank(const Matrix& m, std::size_t cols) { return echelon(m, cols).rank(); }

/// Basis of {x : m x = 0}; each basis vector has a single free coordinate set to 1.
inline Matrix kernel(const Matrix& m, std::size_t cols) {
    Echelon e = echelon(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    Matrix out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RowVector x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t r = 0; r < e.rank(); ++r) {
            std::size_t pc = e.pivots[r];
            x[pc] = Rational(-e.rows[r][f], e.rows[r][pc]);
            x[pc].canonicalize();
        }
        out.push_back(std::move(x));
    }
    return out;
}

/// Coordinates of vectors against an indexed element list.
class Coordinates {
public:
    explicit Coordinates(std::vector<Element> basis) : basis_(std::move(basis)) {
        for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Element>& basis() const { return basis_; }
    std::size_t index(const Element& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) throw std::out_of_range("Coordinates: " + x.str() + " is not a basis element");
        return it->second;
    }
    RowVector of(const Vec& v) const {
        RowVector r(dim(), Rational(0));
        for (const auto& [x, c] : v.terms()) r[index(x)] = c;
        return r;
    }
    Vec to_vec(const GroundSet& ground, const RowVector& r) const {
        Vec v(ground);
        for (std::size_t i = 0; i < r.size(); ++i) v.add(basis_[i], r[i]);
        return v;
    }

private:
    std::vector<Element> basis_;
    std::map<Element, std::size_t> index_;
};

inline Matrix coordinate_rows(const Coordinates& co, const std::vector<Vec>& vs) {
    Matrix m;
    m.reserve(vs.size());
    for (const auto& v : vs) m.push_back(co.of(v));
    return m;
}

inline bool linearly_independent(const Coordinates& co, const std::vector<Vec>& vs) {
    return rank(coordinate_rows(co, vs), co.dim()) == vs.size();
}

inline std::size_t span_dimension(const Coordinates& co, const std::vector<Vec>& vs) {
    return rank(coordinate_rows(co, vs), co.dim());
}

inline bool same_span(const Coordinates& co, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t rb = span_dimension(co, both);
    return span_dimension(co, a) == rb && span_dimension(co, b) == rb;
}

/// Canonical basis of the span: the nonzero rows of the integer RREF.
inline std::vector<Vec> canonical_span_basis(const Coordinates& co, const GroundSet& ground,
                                             const std::vector<Vec>& vs) {
    Echelon e = echelon(coordinate_rows(co, vs), co.dim());
    std::vector<Vec> out;
    for (const auto& r : e.rows) {
        RowVector q(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) q[j] = Rational(r[j]);
        out.push_back(co.to_vec(ground, q));
    }
    return out;
}

}  // namespace species_forge
