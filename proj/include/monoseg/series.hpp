#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monoseg {

/// Sampled function over strictly increasing abscissae. When no abscissae are
/// given the samples are placed at 0, 1, ..., n-1.
class Series {
public:
    Series() = default;

    explicit Series(std::vector<double> ys) : ys_(std::move(ys)) { validate(); }

    Series(std::vector<double> ys, std::vector<double> xs)
        : ys_(std::move(ys)), xs_(std::move(xs)) {
        validate();
    }

    std::size_t size() const noexcept { return ys_.size(); }
    bool empty() const noexcept { return ys_.empty(); }

    std::span<const double> values() const noexcept { return ys_; }
    double operator[](std::size_t i) const { return ys_[i]; }

    bool has_abscissae() const noexcept { return !xs_.empty(); }
    double x(std::size_t i) const {
        return xs_.empty() ? static_cast<double>(i) : xs_[i];
    }

private:
    void validate() const {
        if (ys_.empty()) throw std::invalid_argument("series must contain at least one sample");
        if (xs_.empty()) return;
        if (xs_.size() != ys_.size())
            throw std::invalid_argument("abscissae and ordinates differ in length");
        for (std::size_t i = 1; i < xs_.size(); ++i)
            if (!(xs_[i - 1] < xs_[i]))
                throw std::invalid_argument("abscissae must be strictly increasing (at position " +
                                            std::to_string(i) + ")");
    }

    std::vector<double> ys_;
    std::vector<double> xs_;
};

/// Ordinates with consecutive repeats collapsed. origin[i] is the source
/// index of values[i] (the first index of its run).
struct DedupedSeries {
    std::vector<double> values;
    std::vector<std::size_t> origin;

    std::size_t size() const noexcept { return values.size(); }
};

enum class Direction { Increasing, Decreasing, Flat };

inline const char* to_string(Direction d) noexcept {
    switch (d) {
    case Direction::Increasing: return "inc";
    case Direction::Decreasing: return "dec";
    case Direction::Flat: return "flat";
    }
    return "flat";
}

enum class ExtremumKind { Minimum, Maximum, Flat };

inline const char* to_string(ExtremumKind k) noexcept {
    switch (k) {
    case ExtremumKind::Minimum: return "min";
    case ExtremumKind::Maximum: return "max";
    case ExtremumKind::Flat: return "flat";
    }
    return "flat";
}

struct Extremum {
    std::size_t index;
    ExtremumKind kind;

    friend bool operator==(const Extremum&, const Extremum&) = default;
};

/// Upper/lower envelopes of a segment and their midpoint, which is a best
/// monotone approximation in the max norm.
struct MonotoneEnvelope {
    std::vector<double> upper;
    std::vector<double> lower;
    std::vector<double> fit;
    double error = 0.0;
};

struct SegmentError {
    Direction direction = Direction::Flat;
    double error = 0.0;
};

/// Segment k covers source indices boundaries[k]..boundaries[k+1] inclusive.
struct Segmentation {
    std::vector<std::size_t> boundaries;
    std::vector<Direction> directions;
    std::vector<double> segment_omafe;
    double omafe = 0.0;

    std::size_t segment_count() const noexcept {
        return boundaries.empty() ? 0 : boundaries.size() - 1;
    }
};

inline Direction direction_between(double first, double last) noexcept {
    if (last > first) return Direction::Increasing;
    if (last < first) return Direction::Decreasing;
    return Direction::Flat;
}

inline DedupedSeries dedup(std::span<const double> ys) {
    DedupedSeries out;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (i > 0 && ys[i] == ys[i - 1]) continue;
        out.values.push_back(ys[i]);
        out.origin.push_back(i);
    }
    return out;
}

inline DedupedSeries dedup(const Series& series) { return dedup(series.values()); }

/// All local extrema of a sequence without consecutive repeats, endpoints
/// included. Kinds alternate. A single sample yields one Flat entry.
inline std::vector<Extremum> find_extrema(std::span<const double> d) {
    std::vector<Extremum> out;
    const std::size_t n = d.size();
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({0, ExtremumKind::Flat});
        return out;
    }
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool above_prev = i == 0 || d[i] > d[i - 1];
        const bool above_next = i == n - 1 || d[i] > d[i + 1];
        const bool below_prev = i == 0 || d[i] < d[i - 1];
        const bool below_next = i == n - 1 || d[i] < d[i + 1];
        if (above_prev && above_next)
            out.push_back({i, ExtremumKind::Maximum});
        else if (below_prev && below_next)
            out.push_back({i, ExtremumKind::Minimum});
    }
    return out;
}

inline std::vector<Extremum> find_extrema(const DedupedSeries& d) { return find_extrema(d.values); }

/// Envelope fit in one forward and one backward pass.
inline MonotoneEnvelope monotone_fit(std::span<const double> values, Direction dir) {
    if (values.empty()) throw std::invalid_argument("monotone_fit: empty input");
    if (dir == Direction::Flat)
        throw std::invalid_argument("monotone_fit: direction must be increasing or decreasing");

    const std::size_t n = values.size();
    MonotoneEnvelope env;
    env.upper.resize(n);
    env.lower.resize(n);
    env.fit.resize(n);

    // Increasing: upper is the running max from the left, lower the running
    // min from the right. Decreasing swaps the sides.
    auto& prefix = dir == Direction::Increasing ? env.upper : env.lower;
    auto& suffix = dir == Direction::Increasing ? env.lower : env.upper;
    const bool inc = dir == Direction::Increasing;

    prefix[0] = values[0];
    for (std::size_t i = 1; i < n; ++i)
        prefix[i] = inc ? std::max(prefix[i - 1], values[i]) : std::min(prefix[i - 1], values[i]);
    suffix[n - 1] = values[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        suffix[i] = inc ? std::min(suffix[i + 1], values[i]) : std::max(suffix[i + 1], values[i]);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        env.fit[i] = (env.upper[i] + env.lower[i]) / 2;
        err = std::max(err, (env.upper[i] - env.lower[i]) / 2);
    }
    env.error = err;
    return env;
}

/// OMAFE of one segment, direction taken from its endpoints. A segment whose
/// endpoints are equal is fitted by the constant midrange.
inline SegmentError omafe_segment(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("omafe_segment: empty input");
    const Direction dir = direction_between(values.front(), values.back());
    if (dir == Direction::Flat) {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        return {Direction::Flat, (*hi - *lo) / 2};
    }

    // Same quantity as monotone_fit(values, dir).error without materializing
    // the envelopes: the largest adverse drop seen so far, halved.
    double err = 0.0;
    double extreme = values[0];
    for (double v : values) {
        if (dir == Direction::Increasing) {
            extreme = std::max(extreme, v);
            err = std::max(err, (extreme - v) / 2);
        } else {
            extreme = std::min(extreme, v);
            err = std::max(err, (v - extreme) / 2);
        }
    }
    return {dir, err};
}

/// Throws std::invalid_argument unless boundaries start at 0, end at n-1 and
/// increase strictly. A one-sample series accepts {0, 0}.
inline void check_boundaries(std::span<const std::size_t> boundaries, std::size_t n) {
    if (n == 0) throw std::invalid_argument("boundaries: empty series");
    if (boundaries.size() < 2) throw std::invalid_argument("boundaries: need at least two entries");
    if (boundaries.front() != 0) throw std::invalid_argument("boundaries: first entry must be 0");
    if (boundaries.back() != n - 1)
        throw std::invalid_argument("boundaries: last entry must be n-1");
    if (n == 1) {
        if (boundaries.size() != 2) throw std::invalid_argument("boundaries: one sample allows {0, 0} only");
        return;
    }
    for (std::size_t k = 1; k < boundaries.size(); ++k)
        if (boundaries[k] <= boundaries[k - 1])
            throw std::invalid_argument("boundaries: entries must be strictly increasing");
}

/// Evaluates a segmentation given by its boundaries; adjacent segments share
/// their boundary sample.
inline Segmentation omafe_segmentation(std::span<const double> ys,
                                       std::span<const std::size_t> boundaries) {
    check_boundaries(boundaries, ys.size());
    Segmentation seg;
    seg.boundaries.assign(boundaries.begin(), boundaries.end());
    for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
        const auto part = ys.subspan(boundaries[k], boundaries[k + 1] - boundaries[k] + 1);
        const SegmentError e = omafe_segment(part);
        seg.directions.push_back(e.direction);
        seg.segment_omafe.push_back(e.error);
        seg.omafe = std::max(seg.omafe, e.error);
    }
    return seg;
}

inline Segmentation omafe_segmentation(const Series& series,
                                       std::span<const std::size_t> boundaries) {
    return omafe_segmentation(series.values(), boundaries);
}

}  // namespace monoseg
