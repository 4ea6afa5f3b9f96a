#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "series.hpp"

namespace monoseg {

/// An extremum of a deduplicated sequence together with the largest scale at
/// which it still separates two significant monotone runs.
struct LabelledExtremum {
    std::size_t index = 0;         ///< position in the deduplicated sequence
    std::size_t source_index = 0;  ///< position in the original series
    ExtremumKind kind = ExtremumKind::Flat;
    double scale = 0.0;

    friend bool operator==(const LabelledExtremum&, const LabelledExtremum&) = default;
};

namespace detail {

/// Stack-order invariant of the labelling loop: from the bottom up, maxima
/// strictly decrease and minima strictly increase, so the two bottom entries
/// are the running extremes. Stack entries are ordinals into `extrema`.
inline bool stack_is_nested(std::span<const double> d, std::span<const std::size_t> stack,
                            std::span<const Extremum> extrema) {
    std::optional<double> last_max, last_min;
    for (std::size_t k : stack) {
        const double v = d[extrema[k].index];
        if (extrema[k].kind == ExtremumKind::Maximum) {
            if (last_max && !(v < *last_max)) return false;
            last_max = v;
        } else {
            if (last_min && !(v > *last_min)) return false;
            last_min = v;
        }
    }
    return true;
}

}  // namespace detail

/// Labels every extremum of `d` in O(n) with one stack sweep. Equal-valued
/// extrema of the same kind come out relabelled so that thresholding the
/// labels always yields an alternating max/min sequence. Output is in
/// position order; fewer than two samples give an empty labelling.
inline std::vector<LabelledExtremum> scale_label(const DedupedSeries& d) {
    std::vector<LabelledExtremum> out;
    if (d.size() < 2) return out;

    const std::span<const double> v = d.values;
    const std::vector<Extremum> extrema = find_extrema(v);

    std::vector<double> label(extrema.size(), std::nan(""));
    std::vector<std::size_t> stack;
    stack.reserve(extrema.size());

    auto first = [&] { return stack[stack.size() - 1]; };
    auto second = [&] { return stack[stack.size() - 2]; };
    auto value = [&](std::size_t k) { return v[extrema[k].index]; };
    auto top_scale = [&] { return std::abs(value(first()) - value(second())); };
    auto set_label = [&](std::size_t k, double s) {
        assert(std::isnan(label[k]) && "extremum labelled twice");
        label[k] = s;
    };
    // The new extremum reaches or passes the second entry on the stack.
    auto reaches_second = [&](const Extremum& e) {
        return e.kind == ExtremumKind::Minimum ? v[e.index] <= value(second())
                                               : v[e.index] >= value(second());
    };

    for (std::size_t k = 0; k < extrema.size(); ++k) {
        const Extremum& e = extrema[k];
        while (stack.size() > 2 && reaches_second(e)) {
            const double s = top_scale();
            set_label(first(), s);
            set_label(second(), s);
            stack.pop_back();
            stack.pop_back();
        }
        if (stack.size() == 2 && reaches_second(e)) {
            set_label(second(), top_scale());
            stack.erase(stack.end() - 2);
        }
        stack.push_back(k);
        assert(detail::stack_is_nested(v, stack, extrema));
    }
    while (stack.size() > 2) {
        set_label(first(), top_scale());
        stack.pop_back();
    }
    const double s = top_scale();
    set_label(first(), s);
    set_label(second(), s);

    out.reserve(extrema.size());
    for (std::size_t k = 0; k < extrema.size(); ++k) {
        assert(!std::isnan(label[k]));
        const std::size_t pos = extrema[k].index;
        out.push_back({pos, d.origin[pos], extrema[k].kind, label[k]});
    }
    return out;
}

inline std::vector<LabelledExtremum> scale_label(std::span<const double> ys) {
    return scale_label(dedup(ys));
}

}  // namespace monoseg
