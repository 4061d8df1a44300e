#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfractal/estimator.hpp"

namespace hyperfractal::io {

/// Street CSV schema: `street_id,piece_index,length,traffic`, UTF-8, comma
/// separated, `.` decimal point, LF line endings (a trailing CR is
/// tolerated). Pieces of a street must be contiguous from index 0.

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline double parse_double(std::string_view field, std::size_t line_number,
                           const char* what) {
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size())
        throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                 ": malformed " + what + " '" + std::string(field) + "'");
    return value;
}

inline long parse_index(std::string_view field, std::size_t line_number) {
    long value = 0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size() || value < 0)
        throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                 ": malformed piece_index '" + std::string(field) + "'");
    return value;
}

}  // namespace detail

inline std::vector<StreetRecord> import_streets_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("streets csv: empty file (missing header)");
    if (detail::strip_cr(line) != "street_id,piece_index,length,traffic")
        throw std::runtime_error(
            "streets csv: missing or wrong header, expected "
            "'street_id,piece_index,length,traffic'");

    // street -> (piece_index -> piece), streets kept in first-appearance order
    std::vector<std::string> order;
    std::map<std::string, std::map<long, StreetPiece>> grouped;

    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view row = detail::strip_cr(line);
        if (row.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = row.find(',', start);
            if (comma == std::string_view::npos) {
                fields.push_back(row.substr(start));
                break;
            }
            fields.push_back(row.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 4)
            throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                     ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        const std::string street_id(fields[0]);
        if (street_id.empty())
            throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                     ": empty street_id");
        const long piece_index = detail::parse_index(fields[1], line_number);
        const double length = detail::parse_double(fields[2], line_number, "length");
        const double traffic = detail::parse_double(fields[3], line_number, "traffic");
        if (!(length > 0.0))
            throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                     ": length must be positive");
        if (traffic < 0.0)
            throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                     ": traffic must be nonnegative");

        auto [it, inserted] = grouped.try_emplace(street_id);
        if (inserted) order.push_back(street_id);
        if (!it->second.emplace(piece_index, StreetPiece{length, traffic}).second)
            throw std::runtime_error("streets csv line " + std::to_string(line_number) +
                                     ": duplicate piece (" + street_id + ", " +
                                     std::to_string(piece_index) + ")");
    }

    std::vector<StreetRecord> streets;
    streets.reserve(order.size());
    for (const std::string& id : order) {
        const auto& pieces = grouped[id];
        long expected = 0;
        StreetRecord street{id, {}};
        street.pieces.reserve(pieces.size());
        for (const auto& [index, piece] : pieces) {
            if (index != expected)
                throw std::runtime_error("streets csv: street '" + id +
                                         "' pieces are not contiguous from 0 (missing index " +
                                         std::to_string(expected) + ")");
            ++expected;
            street.pieces.push_back(piece);
        }
        streets.push_back(std::move(street));
    }
    return streets;
}

inline std::vector<StreetRecord> import_streets_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("streets csv: cannot open '" + path + "'");
    return import_streets_csv(in);
}

}  // namespace hyperfractal::io
