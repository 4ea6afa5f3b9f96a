#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "monoseg/bench.hpp"
#include "monoseg/segment_select.hpp"
#include "monoseg/topdown.hpp"

using namespace monoseg;
using Bounds = std::vector<std::size_t>;

namespace {

// Two-pass least squares over samples [i, j).
double direct_sse(const Series& s, std::size_t i, std::size_t j) {
    const double cnt = static_cast<double>(j - i);
    double mx = 0, my = 0;
    for (std::size_t t = i; t < j; ++t) {
        mx += s.x(t);
        my += s[t];
    }
    mx /= cnt;
    my /= cnt;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t t = i; t < j; ++t) {
        sxx += (s.x(t) - mx) * (s.x(t) - mx);
        sxy += (s.x(t) - mx) * (s[t] - my);
        syy += (s[t] - my) * (s[t] - my);
    }
    if (j - i <= 2 || sxx == 0) return 0.0;
    return syy - sxy * sxy / sxx;
}

Series random_series(std::mt19937& rng, std::size_t n, bool with_x) {
    std::uniform_real_distribution<double> value(-50, 50), gap(0.1, 3.0);
    std::vector<double> ys(n), xs;
    for (double& y : ys) y = value(rng);
    if (!with_x) return Series(ys);
    double x = value(rng);
    for (std::size_t i = 0; i < n; ++i) xs.push_back(x += gap(rng));
    return Series(ys, xs);
}

}  // namespace

TEST(RangeMoments, Examples) {
    auto m = build_moments(Series({1.0, 1.0}, {0.0, 1.0}));
    EXPECT_EQ(m.sy, (std::vector<double>{0, 1, 2}));
    EXPECT_EQ(m.sxy, (std::vector<double>{0, 0, 1}));
    EXPECT_EQ(m.count, (std::vector<double>{0, 1, 2}));

    m = build_moments(Series({0.0, 1.0, 2.0}));
    EXPECT_EQ(m.syy, (std::vector<double>{0, 0, 1, 5}));
    EXPECT_EQ(m.sxx, (std::vector<double>{0, 0, 1, 5}));
}

TEST(RangeMoments, RangeSumsMatchDirectSummation) {
    std::mt19937 rng(61);
    const Series s = random_series(rng, 100, true);
    const auto m = build_moments(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j <= s.size(); ++j) {
            double sy = 0, sxy = 0;
            for (std::size_t t = i; t < j; ++t) {
                sy += s[t];
                sxy += s.x(t) * s[t];
            }
            EXPECT_NEAR(m.sy[j] - m.sy[i], sy, 1e-9 * (1 + std::abs(sy)));
            EXPECT_NEAR(m.sxy[j] - m.sxy[i], sxy, 1e-9 * (1 + std::abs(sxy)));
        }
}

TEST(Sse, Examples) {
    const auto line = build_moments(Series({0.0, 1.0, 2.0}));
    EXPECT_EQ(sse(line, 0, 3), 0.0);

    const auto tent = build_moments(Series({0.0, 1.0, 0.0}));
    EXPECT_NEAR(sse(tent, 0, 3), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(sse(tent, 0, 2), 0.0);
    EXPECT_EQ(sse(tent, 1, 3), 0.0);
    EXPECT_EQ(sse(tent, 2, 3), 0.0);

    EXPECT_THROW(sse(tent, 2, 2), std::invalid_argument);
    EXPECT_THROW(sse(tent, 0, 4), std::out_of_range);
}

TEST(Sse, MatchesDirectLeastSquares) {
    std::mt19937 rng(67);
    for (int t = 0; t < 20; ++t) {
        const Series s = random_series(rng, 2 + rng() % 199, t % 2 == 0);
        const auto m = build_moments(s);
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j <= s.size(); ++j) {
                const double want = direct_sse(s, i, j);
                const double got = sse(m, i, j);
                EXPECT_GE(got, 0.0);
                // Prefix differences cancel at the scale of the running sums.
                EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, m.syy[j])) << i << ' ' << j;
            }
    }
}

TEST(Sse, DisjointSplitNeverIncreasesError) {
    std::mt19937 rng(71);
    const Series s = random_series(rng, 80, false);
    const auto m = build_moments(s);
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 2; b <= s.size(); ++b)
            for (std::size_t c = a + 1; c < b; ++c)
                EXPECT_LE(sse(m, a, c) + sse(m, c, b), sse(m, a, b) * (1 + 1e-12) + 1e-9);
}

TEST(TopdownSpline, Examples) {
    EXPECT_EQ(topdown_spline(Series({0.0, 1.0, 2.0, 3.0}), 2), (Bounds{0, 1, 3}));
    EXPECT_EQ(topdown_spline(Series({0.0, 1.0, 0.0}), 2), (Bounds{0, 1, 2}));
    EXPECT_EQ(topdown_spline(Series({0.0, 10.0, 9.0, 10.0, 0.0}), 4), (Bounds{0, 1, 2, 3, 4}));
}

TEST(TopdownSpline, StopsWhenNothingSplits) {
    EXPECT_EQ(topdown_spline(Series({0.0, 1.0}), 5), (Bounds{0, 1}));
    EXPECT_EQ(topdown_spline(Series({0.0, 1.0, 0.0}), 9), (Bounds{0, 1, 2}));
    EXPECT_THROW(topdown_spline(Series({1.0}), 2), std::invalid_argument);
    EXPECT_THROW(topdown_spline(Series({1.0, 2.0}), 0), std::invalid_argument);
}

TEST(TopdownSpline, BudgetAndTotalErrorDecrease) {
    std::mt19937 rng(73);
    const Series s = random_series(rng, 300, false);
    const auto m = build_moments(s);
    double previous = INFINITY;
    for (std::size_t k = 1; k <= 40; ++k) {
        const auto b = topdown_spline(s, k);
        EXPECT_EQ(b.size(), k + 1);
        double total = 0;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) total += sse(m, b[i], b[i + 1] + 1);
        EXPECT_LE(total, previous + 1e-9);
        previous = total;
    }
}

TEST(AggregateSigns, Examples) {
    const Series ramp({0.0, 1.0, 2.0, 3.0});
    auto s = aggregate_signs(ramp, Bounds{0, 1, 2, 3});
    EXPECT_EQ(s.boundaries, (Bounds{0, 3}));
    EXPECT_EQ(s.directions, (std::vector<Direction>{Direction::Increasing}));

    const Series zigzag({0.0, 2.0, 1.0, 3.0});
    s = aggregate_signs(zigzag, Bounds{0, 1, 2, 3});
    EXPECT_EQ(s.boundaries, (Bounds{0, 1, 2, 3}));

    // Endpoint values (0,1),(1,1),(1,0): zero counts as rising.
    const Series plateau({0.0, 1.0, 1.0, 0.0});
    s = aggregate_signs(plateau, Bounds{0, 1, 2, 3});
    EXPECT_EQ(s.boundaries, (Bounds{0, 2, 3}));
    EXPECT_EQ(s.directions, (std::vector<Direction>{Direction::Increasing, Direction::Decreasing}));
}

TEST(AggregateSigns, IdempotentAndAlternating) {
    std::mt19937 rng(79);
    std::uniform_int_distribution<int> value(0, 5);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> ys(3 + rng() % 60);
        for (double& y : ys) y = value(rng);
        const Series s(ys);
        const auto once = aggregate_signs(s, topdown_spline(s, 1 + rng() % 15));
        const auto twice = aggregate_signs(s, once.boundaries);
        EXPECT_EQ(once.boundaries, twice.boundaries);
        EXPECT_EQ(once.omafe, twice.omafe);
    }
}

TEST(Dominance, ScaleBasedNeverWorseThanTopdown) {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> value(0, 100);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> ys(2 + rng() % 150);
        for (double& y : ys) y = t % 2 ? value(rng) : std::round(value(rng) / 10);
        const Series s(ys);
        for (std::size_t k = 1; k <= 20; ++k)
            EXPECT_LE(segment(s, k).omafe, topdown_segmentation(s, k).omafe) << "k=" << k;
    }
}
