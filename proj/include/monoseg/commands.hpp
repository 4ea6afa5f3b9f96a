#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bench.hpp"
#include "ingest.hpp"
#include "scale_label.hpp"
#include "segment_select.hpp"
#include "series.hpp"
#include "synth.hpp"

namespace monoseg {

/// Invalid command-line usage; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExitCode : int { Ok = 0, Usage = 1, Input = 2 };

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string command;
    std::optional<std::string> input;       ///< path, "-" for stdin
    std::optional<std::string> synth_spec;  ///< see parse_synth_spec()
    std::string column;
    std::optional<std::size_t> cap;
    std::optional<std::size_t> k;
    std::optional<std::size_t> k_max;
    std::size_t repeats = 3;
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 0;
    std::string output = "-";
};

/// Shortest decimal form that reads back to the same double.
inline std::string format_number(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, end);
}

inline void validate(const RunConfig& c) {
    static constexpr const char* commands[] = {"label", "segment", "spectrum", "bench", "synth"};
    if (std::find(std::begin(commands), std::end(commands), c.command) == std::end(commands))
        throw UsageError("unknown command '" + c.command + "'");
    if (c.input && c.synth_spec) throw UsageError("--input and --synth are mutually exclusive");
    if (!c.input && !c.synth_spec) throw UsageError("one of --input or --synth is required");
    if (c.command == "synth" && !c.synth_spec) throw UsageError("synth requires --synth");
    if (c.k && *c.k == 0) throw UsageError("--k must be at least 1");
    if (c.k_max && *c.k_max == 0) throw UsageError("--kmax must be at least 1");
    if (c.repeats == 0) throw UsageError("--repeats must be at least 1");
    if (c.cap && *c.cap == 0) throw UsageError("--cap must be at least 1");
    if (c.command == "segment" && !c.k) throw UsageError("segment requires --k");
    if (c.command == "spectrum" && !c.k_max && !c.k) throw UsageError("spectrum requires --kmax");
    if (c.command == "bench" && !c.k_max && !c.k) throw UsageError("bench requires --k or --kmax");
}

/// Loads the series named by the config. Malformed synth specs are usage
/// errors; unreadable or malformed data is an InputError.
inline Series load_series(const RunConfig& c) {
    if (c.synth_spec) {
        SynthSpec spec;
        try {
            SynthSpec defaults;
            defaults.seed = c.seed;
            spec = parse_synth_spec(*c.synth_spec, defaults);
            Series s = synth(spec);
            if (c.cap && *c.cap < s.size()) {
                auto v = s.values();
                return Series(std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(*c.cap)));
            }
            return s;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (*c.input == "-") return ingest(std::cin, c.column, c.cap);
    return ingest_file(*c.input, c.column, c.cap);
}

namespace detail {

inline void write_label(const Series& s, std::ostream& out) {
    out << "index,value,kind,scale\n";
    for (const LabelledExtremum& e : scale_label(s.values()))
        out << e.source_index << ',' << format_number(s[e.source_index]) << ',' << to_string(e.kind)
            << ',' << format_number(e.scale) << '\n';
}

inline void write_segment(const Series& s, std::size_t k, OutputFormat format, std::ostream& out) {
    const Segmentation seg = segment(s, k);
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc;
        doc["n"] = s.size();
        doc["k"] = k;
        doc["boundaries"] = seg.boundaries;
        auto& dirs = doc["directions"] = nlohmann::ordered_json::array();
        for (Direction d : seg.directions) dirs.push_back(to_string(d));
        doc["segment_omafe"] = seg.segment_omafe;
        doc["omafe"] = seg.omafe;
        out << doc.dump() << '\n';
        return;
    }
    out << "segment,start,end,direction,omafe\n";
    for (std::size_t i = 0; i < seg.segment_count(); ++i)
        out << i << ',' << seg.boundaries[i] << ',' << seg.boundaries[i + 1] << ','
            << to_string(seg.directions[i]) << ',' << format_number(seg.segment_omafe[i]) << '\n';
    out << "total," << seg.boundaries.front() << ',' << seg.boundaries.back() << ",,"
        << format_number(seg.omafe) << '\n';
}

inline void write_spectrum(const Series& s, std::size_t k_max, std::ostream& out) {
    out << "k,omafe_scale,omafe_topdown,segments_used\n";
    for (const SpectrumPoint& p : spectrum(s, k_max))
        out << p.k << ',' << format_number(p.omafe) << ','
            << format_number(topdown_segmentation(s, p.k).omafe) << ',' << p.segments_used << '\n';
}

inline void write_bench(const Series& s, const RunConfig& c, std::ostream& out) {
    out << "k,n,time_scale_ms,time_topdown_ms,repeats\n";
    const std::size_t first = c.k_max ? 1 : *c.k;
    const std::size_t last = c.k_max ? *c.k_max : *c.k;
    for (std::size_t k = first; k <= last; ++k) {
        const BenchRow row = bench(s, k, c.repeats);
        char t1[32], t2[32];
        std::snprintf(t1, sizeof t1, "%.6f", row.time_scale_ms);
        std::snprintf(t2, sizeof t2, "%.6f", row.time_topdown_ms);
        out << row.k << ',' << row.n << ',' << t1 << ',' << t2 << ',' << row.repeats << '\n';
    }
}

inline void write_series(const Series& s, std::ostream& out) {
    out << "index,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) out << i << ',' << format_number(s[i]) << '\n';
}

}  // namespace detail

/// Runs one subcommand and writes its report to `out`. Throws UsageError or
/// InputError on failure.
inline void run_command(const RunConfig& c, std::ostream& out) {
    validate(c);
    const Series series = load_series(c);
    if (c.command == "label") {
        detail::write_label(series, out);
    } else if (c.command == "segment") {
        detail::write_segment(series, *c.k, c.format, out);
    } else if (c.command == "spectrum") {
        detail::write_spectrum(series, c.k_max ? *c.k_max : *c.k, out);
    } else if (c.command == "bench") {
        detail::write_bench(series, c, out);
    } else {
        detail::write_series(series, out);
    }
}

/// run_command() with output routing and exit-code mapping. Diagnostics go
/// to `err` as a single line.
inline int run(const RunConfig& c, std::ostream& err) {
    try {
        std::ostringstream report;
        run_command(c, report);
        if (c.output == "-") {
            std::cout << report.str();
        } else {
            std::ofstream file(c.output);
            if (!file) throw InputError("cannot write '" + c.output + "'");
            file << report.str();
        }
        return static_cast<int>(ExitCode::Ok);
    } catch (const UsageError& e) {
        err << "monoseg: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    } catch (const InputError& e) {
        err << "monoseg: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Input);
    } catch (const std::exception& e) {
        err << "monoseg: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Input);
    }
}

}  // namespace monoseg
