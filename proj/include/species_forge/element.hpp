#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "species_forge/ground_set.hpp"

namespace species_forge {

/// A basis element of a set species component, in canonical form.
///
/// Payload encoding by kind, with `ground` sorted ascending:
///   Map          data[i] = color of ground[i]
///   Partition    data[i] = block index of ground[i]; blocks are numbered by
///                their minimum, so data is a restricted growth string
///   Order        data = the labels in sequence, then optionally one color
///                per position
///   Permutation  data[i] = image of ground[i]
///   Labeled      data as for Partition, labels[b] = element over block b
/// Anything over the empty set collapses to Unit.
class Element {
public:
    enum class Kind { Unit, Map, Partition, Order, Permutation, Labeled };

    Element() = default;

    static Element unit() { return Element(); }

    static Element map(GroundSet ground, std::vector<int> colors) {
        if (colors.size() != ground.size()) throw std::invalid_argument("Element::map: arity mismatch");
        for (int c : colors)
            if (c < 0) throw std::invalid_argument("Element::map: negative color");
        return make(Kind::Map, std::move(ground), std::move(colors), {});
    }

    static Element partition(const std::vector<GroundSet>& blocks) {
        auto [ground, rgs] = encode_blocks(blocks);
        return make(Kind::Partition, std::move(ground), std::move(rgs), {});
    }

    static Element order(std::vector<Label> sequence) {
        GroundSet ground(sequence);  // validates distinctness
        return make(Kind::Order, std::move(ground), std::move(sequence), {});
    }

    /// A linear order whose labels each carry a color; data holds the
    /// sequence followed by the colors in sequence order.
    static Element colored_order(std::vector<Label> sequence, const std::vector<int>& colors) {
        if (colors.size() != sequence.size()) throw std::invalid_argument("Element::colored_order: arity mismatch");
        GroundSet ground(sequence);
        sequence.insert(sequence.end(), colors.begin(), colors.end());
        return make(Kind::Order, std::move(ground), std::move(sequence), {});
    }

    static Element permutation(GroundSet ground, std::vector<Label> images) {
        if (images.size() != ground.size() || GroundSet(images) != ground)
            throw std::invalid_argument("Element::permutation: images do not permute " + ground.str());
        return make(Kind::Permutation, std::move(ground), std::move(images), {});
    }

    static Element labeled(std::vector<std::pair<GroundSet, Element>> blocks) {
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<GroundSet> bare;
        std::vector<Element> labels;
        for (auto& [b, x] : blocks) {
            if (b.empty()) throw std::invalid_argument("Element::labeled: empty block");
            if (x.ground() != b)
                throw std::invalid_argument("Element::labeled: label " + x.str() + " not over " + b.str());
            bare.push_back(b);
            labels.push_back(std::move(x));
        }
        auto [ground, rgs] = encode_blocks(bare);
        // encode_blocks numbers blocks by minimum, matching the sort above
        return make(Kind::Labeled, std::move(ground), std::move(rgs), std::move(labels));
    }

    Kind kind() const noexcept { return kind_; }
    const GroundSet& ground() const noexcept { return ground_; }
    const std::vector<int>& data() const noexcept { return data_; }
    const std::vector<Element>& labels() const noexcept { return labels_; }

    int color(Label x) const { return data_[ground_.index_of(x)]; }

    /// Sequence of an Order element.
    std::vector<Label> sequence() const {
        return {data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(ground_.size())};
    }
    bool is_colored_order() const { return kind_ == Kind::Order && data_.size() == 2 * ground_.size(); }
    /// Colors of a colored Order, in sequence order.
    std::vector<int> order_colors() const {
        if (!is_colored_order()) return {};
        return {data_.begin() + static_cast<std::ptrdiff_t>(ground_.size()), data_.end()};
    }
    Label image(Label x) const { return data_[ground_.index_of(x)]; }

    /// Blocks of a Partition or Labeled element, sorted by minimum.
    std::vector<GroundSet> blocks() const {
        std::size_t nb = 0;
        for (int b : data_) nb = std::max<std::size_t>(nb, static_cast<std::size_t>(b) + 1);
        std::vector<std::vector<Label>> raw(nb);
        for (std::size_t i = 0; i < ground_.size(); ++i) raw[static_cast<std::size_t>(data_[i])].push_back(ground_[i]);
        std::vector<GroundSet> out;
        out.reserve(nb);
        for (auto& b : raw) out.emplace_back(std::move(b));
        return out;
    }

    std::vector<std::pair<GroundSet, Element>> labeled_blocks() const {
        auto bs = blocks();
        std::vector<std::pair<GroundSet, Element>> out;
        out.reserve(bs.size());
        for (std::size_t i = 0; i < bs.size(); ++i) out.emplace_back(bs[i], labels_[i]);
        return out;
    }

    std::size_t block_count() const { return kind_ == Kind::Unit ? 0 : blocks().size(); }

    /// Cycles of a Permutation, each starting at its minimum, sorted by minimum.
    std::vector<std::vector<Label>> cycles() const {
        std::vector<std::vector<Label>> out;
        std::vector<bool> seen(ground_.size(), false);
        for (std::size_t i = 0; i < ground_.size(); ++i) {
            if (seen[i]) continue;
            std::vector<Label> cyc;
            std::size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                cyc.push_back(ground_[j]);
                j = ground_.index_of(data_[j]);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Unit:
                return "1";
            case Kind::Map: {
                std::string s = "{";
                for (std::size_t i = 0; i < ground_.size(); ++i) {
                    if (i) s += ',';
                    s += std::to_string(ground_[i]) + ":" + std::to_string(data_[i]);
                }
                return s + "}";
            }
            case Kind::Partition: {
                std::string s = "{";
                auto bs = blocks();
                for (std::size_t i = 0; i < bs.size(); ++i) s += (i ? "," : "") + bs[i].str();
                return s + "}";
            }
            case Kind::Order: {
                std::string s = "(";
                const std::size_t n = ground_.size();
                for (std::size_t i = 0; i < n; ++i) {
                    s += (i ? "," : "") + std::to_string(data_[i]);
                    if (is_colored_order()) s += ":" + std::to_string(data_[n + i]);
                }
                return s + ")";
            }
            case Kind::Permutation: {
                std::string s;
                for (const auto& c : cycles()) {
                    s += "(";
                    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
                    s += ")";
                }
                return s;
            }
            case Kind::Labeled: {
                std::string s = "{";
                auto lb = labeled_blocks();
                for (std::size_t i = 0; i < lb.size(); ++i)
                    s += (i ? ",(" : "(") + lb[i].first.str() + ":" + lb[i].second.str() + ")";
                return s + "}";
            }
        }
        return "?";
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.kind_ == b.kind_ && a.ground_ == b.ground_ && a.data_ == b.data_ && a.labels_ == b.labels_;
    }

    friend bool operator<(const Element& a, const Element& b) {
        if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
        if (a.ground_ != b.ground_) return a.ground_ < b.ground_;
        if (a.data_ != b.data_) return a.data_ < b.data_;
        return std::lexicographical_compare(a.labels_.begin(), a.labels_.end(), b.labels_.begin(),
                                            b.labels_.end());
    }

private:
    static Element make(Kind k, GroundSet g, std::vector<int> d, std::vector<Element> l) {
        Element e;
        if (g.empty()) return e;
        e.kind_ = k;
        e.ground_ = std::move(g);
        e.data_ = std::move(d);
        e.labels_ = std::move(l);
        return e;
    }

    static std::pair<GroundSet, std::vector<int>> encode_blocks(const std::vector<GroundSet>& blocks) {
        std::vector<GroundSet> sorted;
        for (const auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("partition: empty block");
            sorted.push_back(b);
        }
        std::sort(sorted.begin(), sorted.end(), [](const GroundSet& a, const GroundSet& b) { return a[0] < b[0]; });
        GroundSet ground = union_of(sorted);  // throws if blocks overlap
        std::vector<int> rgs(ground.size());
        for (std::size_t b = 0; b < sorted.size(); ++b)
            for (Label x : sorted[b]) rgs[ground.index_of(x)] = static_cast<int>(b);
        return {std::move(ground), std::move(rgs)};
    }

    Kind kind_ = Kind::Unit;
    GroundSet ground_;
    std::vector<int> data_;
    std::vector<Element> labels_;
};

}  // namespace species_forge
