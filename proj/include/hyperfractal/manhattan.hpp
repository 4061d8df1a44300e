#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfractal/dyadic.hpp"
#include "hyperfractal/rng.hpp"

namespace hyperfractal {

enum class Axis : std::uint8_t { vertical, horizontal };

/// Handling of the mass truncated away at finite depth K. The infinite grid
/// carries total mass 1; cutting at K leaves 1 - (1-p)^(K+1).
///   renormalized: stored masses are divided by that total, so the truncated
///                 network is again a probability measure (default).
///   raw:          stored masses keep the per-depth values (p/2)((1-p)/4)^k;
///                 the residual (1-p)^(K+1) is folded into depth K during
///                 sampling only.
enum class TruncationMode : std::uint8_t { renormalized, raw };

/// One street segment of the recursive grid. A vertical segment lies on the
/// line x = line_offset and spans [span_start, span_end] in y; horizontal
/// segments swap the roles. Coordinates are exact dyadics.
struct GridSegment {
    Axis axis;
    std::int32_t depth;    // k >= 0; equals the level of the carrying line
    Dyadic line_offset;    // odd multiple of 2^-(depth+1)
    Dyadic span_start;     // multiple of 2^-depth
    Dyadic span_end;       // span_start + 2^-depth
    double length;         // 2^-depth
    double mass;           // per truncation mode
    double linear_density; // mass / length
};

struct ManhattanNetwork {
    double p = 0.5;
    int max_depth = 0;
    TruncationMode mode = TruncationMode::renormalized;
    std::vector<GridSegment> segments;  // grouped by depth, construction order

    /// 2 * 4^k segments at depth k.
    static std::int64_t depth_count(int k) { return std::int64_t{2} << (2 * k); }

    /// Index of the first depth-k segment: 2 * (4^k - 1) / 3.
    static std::int64_t depth_offset(int k) {
        return 2 * (((std::int64_t{1} << (2 * k)) - 1) / 3);
    }

    /// Mass removed by truncation, (1-p)^(K+1).
    double residual_mass() const { return std::pow(1.0 - p, max_depth + 1); }

    /// Total stored mass: 1 in renormalized mode, 1 - (1-p)^(K+1) raw.
    double total_mass() const {
        return mode == TruncationMode::renormalized ? 1.0 : 1.0 - residual_mass();
    }
};

struct SamplePoint {
    double x;
    double y;
    std::int32_t depth;
    Axis axis;
};

/// One row per depth: (depth, count, length, mass, linear_density) with the
/// per-segment quantities as stored in the network.
struct SegmentTableRow {
    std::int32_t depth;
    std::int64_t count;
    double length;
    double mass;
    double linear_density;
};

/// Hard cap on the recursion depth; the segment count 2*(4^(K+1)-1)/3 grows
/// fast enough that deeper grids stop fitting in memory.
inline constexpr int kMaxGridDepth = 12;

/// Per-segment raw mass (p/2)((1-p)/4)^k from the paper's measure.
inline double raw_segment_mass(double p, int depth) {
    return (p / 2.0) * std::pow((1.0 - p) / 4.0, depth);
}

/// Builds the truncated grid with all segments of depth 0..K. Level-l lines
/// sit at odd multiples of 2^-(l+1); each is cut into 2^l depth-l segments at
/// multiples of 2^-l. Depth 0 is the two full-length center lines.
inline ManhattanNetwork build_network(double p, int max_depth,
                                      TruncationMode mode = TruncationMode::renormalized) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("build_network: p outside (0,1)");
    if (max_depth < 0)
        throw std::invalid_argument("build_network: negative depth");
    if (max_depth > kMaxGridDepth)
        throw std::invalid_argument(
            "build_network: depth " + std::to_string(max_depth) + " exceeds budget (" +
            std::to_string(ManhattanNetwork::depth_offset(max_depth) +
                           ManhattanNetwork::depth_count(max_depth)) +
            " segments; max depth " + std::to_string(kMaxGridDepth) + ")");

    ManhattanNetwork network;
    network.p = p;
    network.max_depth = max_depth;
    network.mode = mode;
    network.segments.reserve(static_cast<std::size_t>(
        ManhattanNetwork::depth_offset(max_depth + 1)));

    const double renorm = 1.0 - network.residual_mass();
    for (int level = 0; level <= max_depth; ++level) {
        const double length = std::ldexp(1.0, -level);
        double mass = raw_segment_mass(p, level);
        if (mode == TruncationMode::renormalized) mass /= renorm;
        const double density = mass / length;
        for (Axis axis : {Axis::vertical, Axis::horizontal}) {
            for (std::int64_t b = 1; b < (std::int64_t{2} << level); b += 2) {
                const Dyadic offset{b, level + 1};
                for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j) {
                    network.segments.push_back(GridSegment{
                        .axis = axis,
                        .depth = level,
                        .line_offset = offset,
                        .span_start = Dyadic{j, level},
                        .span_end = Dyadic{j + 1, level},
                        .length = length,
                        .mass = mass,
                        .linear_density = density,
                    });
                }
            }
        }
    }
    return network;
}

/// Draws a depth in {0..K} from the truncated geometric law. Renormalized:
/// P(k) = p q^k / (1 - q^(K+1)). Raw: P(k) = p q^k with the residual
/// q^(K+1) assigned to depth K.
inline int sample_depth(double p, int max_depth, TruncationMode mode, Rng& rng) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("sample_depth: p outside (0,1)");
    if (max_depth < 0)
        throw std::invalid_argument("sample_depth: negative depth");
    const double q = 1.0 - p;
    const double scale =
        mode == TruncationMode::renormalized ? 1.0 - std::pow(q, max_depth + 1) : 1.0;
    double u = rng.next_double() * scale;
    double pk = p;
    for (int k = 0; k < max_depth; ++k) {
        if (u < pk) return k;
        u -= pk;
        pk *= q;
    }
    return max_depth;
}

/// n i.i.d. points from the network measure: depth, then a uniform segment
/// among the 2*4^k of that depth, then a uniform position along it. Point i
/// draws from the substream derive_stream(seed, kStreamGridPoints, i), so the
/// output is reproducible and independent of iteration order.
inline std::vector<SamplePoint> sample_points(const ManhattanNetwork& network,
                                              std::size_t n, std::uint64_t seed) {
    std::vector<SamplePoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_stream(seed, kStreamGridPoints, i));
        const int depth = sample_depth(network.p, network.max_depth, network.mode, rng);
        const std::int64_t index = static_cast<std::int64_t>(
            rng.next_below(static_cast<std::uint64_t>(ManhattanNetwork::depth_count(depth))));
        const GridSegment& segment =
            network.segments[static_cast<std::size_t>(ManhattanNetwork::depth_offset(depth) + index)];
        const double along =
            segment.span_start.to_double() + rng.next_double() * segment.length;
        const double offset = segment.line_offset.to_double();
        points.push_back(segment.axis == Axis::vertical
                             ? SamplePoint{offset, along, segment.depth, segment.axis}
                             : SamplePoint{along, offset, segment.depth, segment.axis});
    }
    return points;
}

inline std::vector<SegmentTableRow> segment_table(const ManhattanNetwork& network) {
    std::vector<SegmentTableRow> rows;
    rows.reserve(static_cast<std::size_t>(network.max_depth) + 1);
    for (int k = 0; k <= network.max_depth; ++k) {
        const GridSegment& first =
            network.segments[static_cast<std::size_t>(ManhattanNetwork::depth_offset(k))];
        rows.push_back(SegmentTableRow{
            .depth = k,
            .count = ManhattanNetwork::depth_count(k),
            .length = first.length,
            .mass = first.mass,
            .linear_density = first.linear_density,
        });
    }
    return rows;
}

/// True when (x,y) lies on some grid line of level <= max_depth within tol.
inline bool lies_on_grid(double x, double y, int max_depth, double tol) {
    if (x < -tol || x > 1.0 + tol || y < -tol || y > 1.0 + tol) return false;
    for (double coord : {x, y}) {
        for (int level = 0; level <= max_depth; ++level) {
            const double scaled = coord * std::ldexp(1.0, level + 1);
            const double b = std::round(scaled);
            if (std::abs(scaled - b) <= tol * std::ldexp(1.0, level + 1) &&
                std::fmod(std::abs(b), 2.0) == 1.0)
                return true;
        }
    }
    return false;
}

}  // namespace hyperfractal
