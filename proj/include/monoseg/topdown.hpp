#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "series.hpp"

namespace monoseg {

/// Prefix sums of 1, x, x^2, y, xy and y^2. Entry i holds the sum over
/// samples [0, i), so every vector has n+1 entries.
struct RangeMoments {
    std::vector<double> count, sx, sxx, sy, sxy, syy;

    std::size_t size() const noexcept { return count.empty() ? 0 : count.size() - 1; }
};

inline RangeMoments build_moments(const Series& series) {
    const std::size_t n = series.size();
    RangeMoments m;
    for (auto* v : {&m.count, &m.sx, &m.sxx, &m.sy, &m.sxy, &m.syy}) v->assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = series.x(i), y = series[i];
        m.count[i + 1] = m.count[i] + 1;
        m.sx[i + 1] = m.sx[i] + x;
        m.sxx[i + 1] = m.sxx[i] + x * x;
        m.sy[i + 1] = m.sy[i] + y;
        m.sxy[i + 1] = m.sxy[i] + x * y;
        m.syy[i + 1] = m.syy[i] + y * y;
    }
    return m;
}

/// Residual sum of squares of the least-squares line through samples
/// [i, j). Constant time.
inline double sse(const RangeMoments& m, std::size_t i, std::size_t j) {
    if (i >= j) throw std::invalid_argument("sse: empty range");
    if (j > m.size()) throw std::out_of_range("sse: range past end of series");
    if (j - i <= 2) return 0.0;

    const double cnt = m.count[j] - m.count[i];
    const double sx = m.sx[j] - m.sx[i];
    const double sy = m.sy[j] - m.sy[i];
    const double mx = sx / cnt, my = sy / cnt;
    // Centered moments: sum (x - mx)^2 = sum x^2 - mx * sum x, etc.
    const double cxx = (m.sxx[j] - m.sxx[i]) - mx * sx;
    const double cxy = (m.sxy[j] - m.sxy[i]) - mx * sy;
    const double cyy = (m.syy[j] - m.syy[i]) - my * sy;
    if (cxx <= 0.0) return 0.0;
    return std::max(0.0, cyy - cxy * cxy / cxx);
}

/// Greedy top-down piecewise linear fit with at most k pieces. Pieces share
/// their boundary sample, each is fitted independently. Returns the sorted
/// boundary indices, 0 and n-1 included.
inline std::vector<std::size_t> topdown_spline(const Series& series, std::size_t k) {
    if (k == 0) throw std::invalid_argument("topdown_spline: budget must be at least 1");
    const std::size_t n = series.size();
    if (n < 2) throw std::invalid_argument("topdown_spline: need at least two samples");

    const RangeMoments m = build_moments(series);
    auto piece_sse = [&](std::size_t a, std::size_t b) { return sse(m, a, b + 1); };

    struct Piece {
        std::size_t first, last;
        double sse;
    };
    std::vector<Piece> pieces{{0, n - 1, piece_sse(0, n - 1)}};

    for (std::size_t step = 1; step < k; ++step) {
        // Worst splittable piece; earliest wins ties.
        std::size_t worst = pieces.size();
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            if (pieces[p].last - pieces[p].first < 2) continue;
            if (worst == pieces.size() || pieces[p].sse > pieces[worst].sse) worst = p;
        }
        if (worst == pieces.size()) break;

        const Piece parent = pieces[worst];
        std::size_t cut = parent.first + 1;
        double left = piece_sse(parent.first, cut), right = piece_sse(cut, parent.last);
        for (std::size_t c = parent.first + 2; c < parent.last; ++c) {
            const double l = piece_sse(parent.first, c), r = piece_sse(c, parent.last);
            if (l + r < left + right) {
                cut = c;
                left = l;
                right = r;
            }
        }
        pieces[worst] = {parent.first, cut, left};
        pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      Piece{cut, parent.last, right});
    }

    std::vector<std::size_t> boundaries;
    boundaries.reserve(pieces.size() + 1);
    for (const Piece& p : pieces) boundaries.push_back(p.first);
    boundaries.push_back(n - 1);
    return boundaries;
}

/// Merges runs of consecutive segments whose endpoint difference has the same
/// sign, zero counting as positive, and evaluates the result.
inline Segmentation aggregate_signs(const Series& series, std::span<const std::size_t> boundaries) {
    check_boundaries(boundaries, series.size());
    const auto ys = series.values();
    if (series.size() == 1) return omafe_segmentation(ys, boundaries);

    auto rising = [&](std::size_t k) { return ys[boundaries[k + 1]] >= ys[boundaries[k]]; };

    std::vector<std::size_t> merged{boundaries.front()};
    for (std::size_t k = 1; k + 1 < boundaries.size(); ++k)
        if (rising(k - 1) != rising(k)) merged.push_back(boundaries[k]);
    merged.push_back(boundaries.back());
    return omafe_segmentation(ys, merged);
}

}  // namespace monoseg
