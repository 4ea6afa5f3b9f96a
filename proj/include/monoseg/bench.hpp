#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "segment_select.hpp"
#include "series.hpp"
#include "topdown.hpp"

namespace monoseg {

/// OMAFE of the sign-aggregated top-down spline with budget k. A single
/// sample has nothing to split and scores 0.
inline Segmentation topdown_segmentation(const Series& series, std::size_t k) {
    if (series.size() < 2) return omafe_segmentation(series, std::vector<std::size_t>{0, 0});
    return aggregate_signs(series, topdown_spline(series, k));
}

struct BenchRow {
    std::size_t k = 0;
    std::size_t n = 0;
    double time_scale_ms = 0.0;
    double time_topdown_ms = 0.0;
    std::size_t repeats = 0;
};

namespace detail {

template <class F>
double median_ms(std::size_t repeats, F&& run) {
    std::vector<double> times;
    times.reserve(repeats);
    double sink = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        sink += run();
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    // Keep the result observable so the call is not optimized away.
    volatile double keep = sink;
    (void)keep;
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
}

}  // namespace detail

/// Median wall time of both segmenters over `repeats` runs. Only the
/// algorithm call is timed; OMAFE evaluation of the result is included for
/// both.
inline BenchRow bench(const Series& series, std::size_t k, std::size_t repeats) {
    if (repeats == 0) throw std::invalid_argument("bench: repeats must be at least 1");
    if (k == 0) throw std::invalid_argument("bench: budget must be at least 1");
    BenchRow row{k, series.size(), 0.0, 0.0, repeats};
    row.time_scale_ms = detail::median_ms(repeats, [&] { return segment(series, k).omafe; });
    row.time_topdown_ms =
        detail::median_ms(repeats, [&] { return topdown_segmentation(series, k).omafe; });
    return row;
}

}  // namespace monoseg
