#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "series.hpp"

namespace monoseg {

/// Bad or unreadable input data (as opposed to bad command-line usage).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

/// Reads one ordinate per row from comma-separated text. A first row with a
/// non-numeric field is a header. `column` is a header name or a 0-based
/// index; empty picks the last column that is numeric on the first data row.
/// At most `cap` samples are kept.
inline Series ingest(std::istream& in, const std::string& column = {},
                     std::optional<std::size_t> cap = std::nullopt) {
    std::vector<double> ys;
    std::optional<std::vector<std::string>> header;
    std::optional<std::size_t> col;
    std::string line;
    std::size_t row = 0;

    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        if (cap && ys.size() >= *cap) break;
        const auto fields = detail::split_fields(line);

        if (!header && ys.empty() && !col) {
            const bool numeric = std::all_of(fields.begin(), fields.end(),
                                             [](auto f) { return detail::parse_number(f).has_value(); });
            if (!numeric) {
                header.emplace(fields.begin(), fields.end());
                if (!column.empty() && !detail::all_digits(column)) {
                    const auto it = std::find(header->begin(), header->end(), column);
                    if (it == header->end())
                        throw InputError("row " + std::to_string(row) + ": no column named '" + column + "'");
                    col = static_cast<std::size_t>(it - header->begin());
                }
                continue;
            }
        }

        if (!col) {
            if (detail::all_digits(column)) {
                col = std::stoul(column);
            } else if (!column.empty()) {
                throw InputError("row " + std::to_string(row) + ": column '" + column +
                                 "' requested but the input has no header row");
            } else {
                std::size_t last = fields.size();
                for (std::size_t i = fields.size(); i-- > 0;)
                    if (detail::parse_number(fields[i])) {
                        last = i;
                        break;
                    }
                if (last == fields.size())
                    throw InputError("row " + std::to_string(row) + ": no numeric column");
                col = last;
            }
        }

        if (*col >= fields.size())
            throw InputError("row " + std::to_string(row) + ": missing column " + std::to_string(*col));
        const auto v = detail::parse_number(fields[*col]);
        if (!v)
            throw InputError("row " + std::to_string(row) + ": non-numeric value '" +
                             std::string(fields[*col]) + "'");
        ys.push_back(*v);
    }

    if (ys.empty()) throw InputError(row == 0 ? "input is empty" : "input contains no samples");
    return Series(std::move(ys));
}

inline Series ingest_file(const std::string& path, const std::string& column = {},
                          std::optional<std::size_t> cap = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return ingest(in, column, cap);
}

}  // namespace monoseg
