#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace species_forge {

using Label = int;

/// A finite set of nonnegative integer labels, stored sorted ascending.
class GroundSet {
public:
    GroundSet() = default;

    GroundSet(std::initializer_list<Label> labels)
        : GroundSet(std::vector<Label>(labels)) {}

    explicit GroundSet(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] < 0) {
                throw std::invalid_argument("GroundSet: negative label " + std::to_string(labels_[i]));
            }
            if (i > 0 && labels_[i] == labels_[i - 1]) {
                throw std::invalid_argument("GroundSet: repeated label " + std::to_string(labels_[i]));
            }
        }
    }

    /// The set {1, ..., n}.
    static GroundSet range(int n) {
        std::vector<Label> v(static_cast<std::size_t>(std::max(n, 0)));
        std::iota(v.begin(), v.end(), 1);
        return GroundSet(std::move(v));
    }

    const std::vector<Label>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    auto begin() const noexcept { return labels_.begin(); }
    auto end() const noexcept { return labels_.end(); }
    Label operator[](std::size_t i) const { return labels_[i]; }

    bool contains(Label x) const { return std::binary_search(labels_.begin(), labels_.end(), x); }

    std::size_t index_of(Label x) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
        if (it == labels_.end() || *it != x) {
            throw std::out_of_range("GroundSet: label " + std::to_string(x) + " not in " + str());
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool is_subset_of(const GroundSet& other) const {
        return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(), labels_.end());
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(labels_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const GroundSet&, const GroundSet&) = default;
    friend auto operator<=>(const GroundSet&, const GroundSet&) = default;

private:
    std::vector<Label> labels_;
};

inline GroundSet set_union(const GroundSet& a, const GroundSet& b) {
    std::vector<Label> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return GroundSet(std::move(out));
}

inline GroundSet set_intersection(const GroundSet& a, const GroundSet& b) {
    std::vector<Label> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return GroundSet(std::move(out));
}

inline GroundSet set_difference(const GroundSet& a, const GroundSet& b) {
    std::vector<Label> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return GroundSet(std::move(out));
}

inline bool disjoint(const GroundSet& a, const GroundSet& b) { return set_intersection(a, b).empty(); }

inline GroundSet union_of(const std::vector<GroundSet>& parts) {
    std::vector<Label> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return GroundSet(std::move(all));  // throws on overlap
}

/// All subsets of `I`, ordered by the binary counter whose bit i is labels()[i].
inline std::vector<GroundSet> subsets(const GroundSet& I) {
    const std::size_t n = I.size();
    std::vector<GroundSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Label> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) s.push_back(I[i]);
        out.emplace_back(std::move(s));
    }
    return out;
}

using Decomposition = std::vector<GroundSet>;

/// Ordered k-tuples of pairwise disjoint sets with union `I`.
///
/// Enumeration runs a base-k counter over the membership word of I; the digit
/// of the i-th label is least significant for i = 0, and digit d places the
/// label in part k-1-d. For k = 2 this lists (∅,I) first and (I,∅) last, with
/// the first part running through the subsets of I in counter order.
inline std::vector<Decomposition> decompositions(const GroundSet& I, std::size_t k, bool nonempty) {
    if (k == 0) throw std::invalid_argument("decompositions: k must be at least 1");
    std::vector<Decomposition> out;
    const std::size_t n = I.size();
    if (nonempty && k > n) return out;
    std::vector<std::size_t> digits(n, 0);
    while (true) {
        std::vector<std::vector<Label>> parts(k);
        for (std::size_t i = 0; i < n; ++i) parts[k - 1 - digits[i]].push_back(I[i]);
        bool ok = true;
        if (nonempty)
            for (const auto& p : parts)
                if (p.empty()) ok = false;
        if (ok) {
            Decomposition d;
            d.reserve(k);
            for (auto& p : parts) d.emplace_back(std::move(p));
            out.push_back(std::move(d));
        }
        std::size_t pos = 0;
        while (pos < n && ++digits[pos] == k) digits[pos++] = 0;
        if (pos == n) break;
    }
    return out;
}

/// Set partitions of I, blocks sorted by minimum, enumerated by restricted
/// growth strings in lexicographic order (so the one-block partition is first).
inline std::vector<std::vector<GroundSet>> set_partitions(const GroundSet& I) {
    std::vector<std::vector<GroundSet>> out;
    const std::size_t n = I.size();
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<std::size_t> rgs(n, 0);
    while (true) {
        std::size_t nb = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<Label>> blocks(nb);
        for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(I[i]);
        std::vector<GroundSet> p;
        for (auto& b : blocks) p.emplace_back(std::move(b));
        out.push_back(std::move(p));
        // next restricted growth string
        std::size_t i = n;
        bool advanced = false;
        while (i-- > 1) {
            std::size_t prefix_max = 0;
            for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                for (std::size_t j = i + 1; j < n; ++j) rgs[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

/// A bijection between two ground sets of equal size.
class Bijection {
public:
    Bijection(GroundSet source, GroundSet target, std::vector<Label> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (source_.size() != target_.size() || images_.size() != source_.size()) {
            throw std::invalid_argument("Bijection: size mismatch between " + source_.str() + " and " +
                                        target_.str());
        }
        if (GroundSet(images_) != target_) {
            throw std::invalid_argument("Bijection: images do not enumerate " + target_.str());
        }
    }

    static Bijection identity(const GroundSet& I) { return Bijection(I, I, I.labels()); }

    const GroundSet& source() const noexcept { return source_; }
    const GroundSet& target() const noexcept { return target_; }
    const std::vector<Label>& images() const noexcept { return images_; }

    Label operator()(Label x) const { return images_[source_.index_of(x)]; }

    GroundSet apply(const GroundSet& subset) const {
        std::vector<Label> out;
        out.reserve(subset.size());
        for (Label x : subset) out.push_back((*this)(x));
        return GroundSet(std::move(out));
    }

    Bijection restrict_to(const GroundSet& subset) const {
        std::vector<Label> out;
        out.reserve(subset.size());
        for (Label x : subset) out.push_back((*this)(x));
        GroundSet tgt(out);
        return Bijection(subset, std::move(tgt), std::move(out));
    }

    Bijection inverse() const {
        std::vector<Label> inv(source_.size());
        for (std::size_t i = 0; i < source_.size(); ++i) inv[target_.index_of(images_[i])] = source_[i];
        return Bijection(target_, source_, std::move(inv));
    }

    /// (*this) ∘ other; requires other.target() == source().
    Bijection after(const Bijection& other) const {
        if (other.target_ != source_) throw std::invalid_argument("Bijection: endpoints do not compose");
        std::vector<Label> out;
        out.reserve(other.source_.size());
        for (Label x : other.images_) out.push_back((*this)(x));
        return Bijection(other.source_, target_, std::move(out));
    }

    friend bool operator==(const Bijection&, const Bijection&) = default;

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < source_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(source_[i]) + "->" + std::to_string(images_[i]);
        }
        return s + "}";
    }

private:
    GroundSet source_;
    GroundSet target_;
    std::vector<Label> images_;
};

/// Every bijection I -> J, in lexicographic order of the image word.
inline std::vector<Bijection> all_bijections(const GroundSet& I, const GroundSet& J) {
    std::vector<Bijection> out;
    if (I.size() != J.size()) return out;
    std::vector<Label> img = J.labels();
    do {
        out.emplace_back(I, J, img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace species_forge
