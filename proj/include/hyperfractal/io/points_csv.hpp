#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfractal/city.hpp"
#include "hyperfractal/io/format.hpp"
#include "hyperfractal/manhattan.hpp"

namespace hyperfractal::io {

/// Points CSV schema: `x,y,origin,depth`, 12 decimal digits, input order
/// preserved. origin is "grid" for plain Manhattan samples, the district
/// index or "boundary" for city samples; boundary rows carry depth -1.

inline constexpr int kCoordinateDigits = 12;

inline void export_points_csv(const std::vector<SamplePoint>& points, std::ostream& out) {
    out << "x,y,origin,depth\n";
    for (const SamplePoint& p : points)
        out << format_fixed(p.x, kCoordinateDigits) << ','
            << format_fixed(p.y, kCoordinateDigits) << ",grid," << p.depth << '\n';
}

inline void export_points_csv(const std::vector<CityPoint>& points, std::ostream& out) {
    out << "x,y,origin,depth\n";
    for (const CityPoint& p : points) {
        out << format_fixed(p.location.x, kCoordinateDigits) << ','
            << format_fixed(p.location.y, kCoordinateDigits) << ',';
        if (p.is_boundary())
            out << "boundary";
        else
            out << p.district;
        out << ',' << p.depth << '\n';
    }
}

template <typename Points>
void export_points_csv(const Points& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("points csv: cannot open '" + path + "' for writing");
    export_points_csv(points, out);
    if (!out) throw std::runtime_error("points csv: write to '" + path + "' failed");
}

}  // namespace hyperfractal::io
