#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scale_label.hpp"
#include "series.hpp"

namespace monoseg {

/// Boundaries chosen from a labelling. `threshold` is the smallest label
/// value whose significant extrema fit the budget; it is empty when the
/// selection fell back to a single segment. `selected` lists the significant
/// extrema before the outer two were moved to the sequence ends.
struct Selection {
    std::vector<std::size_t> boundaries;
    std::optional<double> threshold;
    std::vector<std::size_t> selected;
};

struct SpectrumPoint {
    std::size_t k = 0;
    double omafe = 0.0;
    std::size_t segments_used = 0;
};

/// Picks the extrema significant at the smallest threshold that leaves at
/// most `k + 1` of them, then pins the first and last to 0 and n-1.
///
/// Keeps a list of the k+2 largest labels sorted by decreasing scale, so the
/// pass costs O(n k) time and O(k) memory. Returned indices are positions in
/// the deduplicated sequence, sorted.
inline Selection select_boundaries(std::span<const LabelledExtremum> labels, std::size_t n,
                                   std::size_t k) {
    if (k == 0) throw std::invalid_argument("select_boundaries: budget must be at least 1");
    if (n == 0) throw std::invalid_argument("select_boundaries: empty sequence");

    Selection fallback{{0, n - 1}, std::nullopt, {}};
    if (n == 1) return fallback;

    const std::size_t capacity = k + 2;
    std::vector<const LabelledExtremum*> best;
    best.reserve(capacity + 1);
    for (const LabelledExtremum& e : labels) {
        // Upper bound keeps earlier extrema ahead of later ones on ties.
        auto at = std::upper_bound(best.begin(), best.end(), e.scale,
                                   [](double s, const LabelledExtremum* p) { return s > p->scale; });
        if (at == best.end() && best.size() == capacity) continue;
        best.insert(at, &e);
        if (best.size() > capacity) best.pop_back();
    }

    std::optional<double> threshold;
    if (best.size() == capacity) {
        // Too many significant extrema at the smallest kept scale: drop that
        // whole scale class.
        const double dropped = best.back()->scale;
        while (!best.empty() && best.back()->scale == dropped) best.pop_back();
    }
    if (best.size() < 2) return fallback;
    threshold = best.back()->scale;

    Selection sel;
    sel.threshold = threshold;
    sel.boundaries.reserve(best.size());
    for (const LabelledExtremum* p : best) sel.boundaries.push_back(p->index);
    std::sort(sel.boundaries.begin(), sel.boundaries.end());
    sel.selected = sel.boundaries;
    sel.boundaries.front() = 0;
    sel.boundaries.back() = n - 1;
    return sel;
}

/// Maps boundaries from deduplicated positions back to source indices. The
/// last boundary always lands on the last source sample.
inline std::vector<std::size_t> to_source_boundaries(const DedupedSeries& d,
                                                     std::span<const std::size_t> deduped,
                                                     std::size_t source_size) {
    std::vector<std::size_t> out;
    out.reserve(deduped.size());
    for (std::size_t b : deduped) out.push_back(d.origin[b]);
    out.back() = source_size - 1;
    return out;
}

namespace detail {

inline bool alternates(const Segmentation& s) {
    for (std::size_t k = 0; k < s.directions.size(); ++k) {
        if (s.directions[k] == Direction::Flat) return false;
        if (k > 0 && s.directions[k] == s.directions[k - 1]) return false;
    }
    return true;
}

inline Segmentation segment_from_labels(std::span<const double> ys, const DedupedSeries& d,
                                        std::span<const LabelledExtremum> labels, std::size_t k,
                                        std::optional<double>* threshold = nullptr) {
    const Selection sel = select_boundaries(labels, d.size(), k);
    if (threshold) *threshold = sel.threshold;
    if (ys.size() == 1) return omafe_segmentation(ys, std::vector<std::size_t>{0, 0});
    Segmentation best = omafe_segmentation(ys, to_source_boundaries(d, sel.boundaries, ys.size()));

    // With only two significant extrema both get moved to the ends, and the
    // endpoint sign of the single segment can contradict the direction of the
    // pair (or vanish). The pair's direction is the one that attains the
    // optimum, so when the budget allows keep one extremum as a cut.
    if (k < 2 || sel.selected.size() != 2) return best;
    const Direction pair_dir =
        direction_between(d.values[sel.selected[0]], d.values[sel.selected[1]]);
    if (best.directions.front() == pair_dir) return best;
    for (std::size_t kept : sel.selected) {
        if (kept == 0 || kept == d.size() - 1) continue;
        const std::vector<std::size_t> cuts{0, kept, d.size() - 1};
        Segmentation candidate = omafe_segmentation(ys, to_source_boundaries(d, cuts, ys.size()));
        if (alternates(candidate) && candidate.omafe < best.omafe) best = std::move(candidate);
    }
    return best;
}

}  // namespace detail

/// Optimal alternating segmentation of `ys` into at most `k` quasi-monotone
/// segments. If `threshold` is given it receives the selection threshold.
inline Segmentation segment(std::span<const double> ys, std::size_t k,
                            std::optional<double>* threshold = nullptr) {
    if (k == 0) throw std::invalid_argument("segment: budget must be at least 1");
    if (ys.empty()) throw std::invalid_argument("segment: empty series");
    const DedupedSeries d = dedup(ys);
    const std::vector<LabelledExtremum> labels = scale_label(d);
    return detail::segment_from_labels(ys, d, labels, k, threshold);
}

inline Segmentation segment(const Series& series, std::size_t k,
                            std::optional<double>* threshold = nullptr) {
    return segment(series.values(), k, threshold);
}

/// OMAFE of the optimal segmentation for every budget 1..k_max. The
/// labelling is computed once.
inline std::vector<SpectrumPoint> spectrum(std::span<const double> ys, std::size_t k_max) {
    if (k_max == 0) throw std::invalid_argument("spectrum: k_max must be at least 1");
    if (ys.empty()) throw std::invalid_argument("spectrum: empty series");
    const DedupedSeries d = dedup(ys);
    const std::vector<LabelledExtremum> labels = scale_label(d);

    std::vector<SpectrumPoint> out;
    out.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const Segmentation s = detail::segment_from_labels(ys, d, labels, k);
        out.push_back({k, s.omafe, s.segment_count()});
    }
    return out;
}

inline std::vector<SpectrumPoint> spectrum(const Series& series, std::size_t k_max) {
    return spectrum(series.values(), k_max);
}

}  // namespace monoseg
