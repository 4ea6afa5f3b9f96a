#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "series.hpp"

namespace monoseg {

enum class SynthKind { Piecewise, EcgLike };

struct SynthSpec {
    SynthKind kind = SynthKind::Piecewise;
    std::size_t segments = 1;
    std::size_t samples = 2;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_synth(const SynthSpec& s) {
    if (s.segments < 1) throw std::invalid_argument("synth: segments must be at least 1");
    if (s.samples < 2 * s.segments)
        throw std::invalid_argument("synth: samples must be at least twice the segment count");
    if (!(s.noise >= 0.0) || !std::isfinite(s.noise))
        throw std::invalid_argument("synth: noise amplitude must be a finite value >= 0");
}

// M alternating ramps, the first one rising. Each ramp spans at least 4a so
// that the noise cannot flip its endpoint sign.
inline std::vector<double> piecewise(const SynthSpec& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double base = std::max(4.0 * s.noise, 1.0);
    const std::size_t n = s.samples, m = s.segments;

    std::vector<std::size_t> knots(m + 1);
    std::vector<double> level(m + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) knots[k] = (k * (n - 1) + m / 2) / m;
    for (std::size_t k = 0; k < m; ++k) {
        const double amplitude = base * (1.0 + unit(rng));
        level[k + 1] = level[k] + (k % 2 == 0 ? amplitude : -amplitude);
    }

    std::vector<double> ys(n);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = knots[k], b = knots[k + 1];
        for (std::size_t i = a; i <= b; ++i)
            ys[i] = level[k] + (level[k + 1] - level[k]) * static_cast<double>(i - a) /
                                   static_cast<double>(b - a);
    }
    if (s.noise > 0.0) {
        std::uniform_real_distribution<double> jitter(-s.noise, s.noise);
        for (double& y : ys) y += jitter(rng);
    }
    return ys;
}

// Quantized pulse train around a 1000-count baseline. Each pulse carries
// P, Q, R, S and T waves; one pulse per five requested segments.
inline std::vector<double> ecg_like(const SynthSpec& s, std::mt19937_64& rng) {
    struct Wave {
        double centre, width, height;
    };
    static constexpr Wave waves[] = {
        {0.20, 0.025, 25.0},   // P
        {0.35, 0.010, -30.0},  // Q
        {0.40, 0.012, 180.0},  // R
        {0.45, 0.012, -50.0},  // S
        {0.70, 0.040, 50.0},   // T
    };
    const std::size_t pulses = (s.segments + 4) / 5;
    const double period = static_cast<double>(s.samples) / static_cast<double>(pulses);

    std::uniform_real_distribution<double> jitter(-s.noise, s.noise);
    std::vector<double> ys(s.samples);
    for (std::size_t i = 0; i < s.samples; ++i) {
        const double phase = std::fmod(static_cast<double>(i), period) / period;
        double y = 1000.0;
        for (const Wave& w : waves) {
            const double z = (phase - w.centre) / w.width;
            y += w.height * std::exp(-0.5 * z * z);
        }
        if (s.noise > 0.0) y += jitter(rng);
        ys[i] = std::round(y);
    }
    return ys;
}

}  // namespace detail

/// Deterministic synthetic series for a given spec and seed.
inline Series synth(const SynthSpec& spec) {
    detail::check_synth(spec);
    std::mt19937_64 rng(spec.seed);
    return Series(spec.kind == SynthKind::Piecewise ? detail::piecewise(spec, rng)
                                                    : detail::ecg_like(spec, rng));
}

/// Parses "KIND[:key=value,...]" with KIND piecewise or ecg-like and keys
/// segments (m), samples (n), noise (a), seed. Unset keys keep the values
/// in `defaults`.
inline SynthSpec parse_synth_spec(std::string_view text, SynthSpec defaults = {}) {
    SynthSpec spec = defaults;
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    if (kind == "piecewise")
        spec.kind = SynthKind::Piecewise;
    else if (kind == "ecg-like" || kind == "ecg")
        spec.kind = SynthKind::EcgLike;
    else
        throw std::invalid_argument("synth: unknown kind '" + std::string(kind) + "'");
    if (colon == std::string_view::npos) return spec;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("synth: expected key=value, got '" + std::string(item) + "'");
        const std::string key(item.substr(0, eq));
        const std::string value(item.substr(eq + 1));
        try {
            std::size_t used = 0;
            if (key != "noise" && key != "a" && value.find('-') != std::string::npos)
                throw std::invalid_argument("negative");
            if (key == "segments" || key == "m") {
                spec.segments = std::stoul(value, &used);
            } else if (key == "samples" || key == "n") {
                spec.samples = std::stoul(value, &used);
            } else if (key == "noise" || key == "a") {
                spec.noise = std::stod(value, &used);
            } else if (key == "seed") {
                spec.seed = std::stoull(value, &used);
            } else {
                throw std::invalid_argument("synth: unknown key '" + key + "'");
            }
            if (used != value.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::invalid_argument& e) {
            if (std::string_view(e.what()).starts_with("synth:")) throw;
            throw std::invalid_argument("synth: bad value for '" + key + "': '" + value + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("synth: value out of range for '" + key + "'");
        }
    }
    return spec;
}

}  // namespace monoseg
