#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfractal/geometry.hpp"
#include "hyperfractal/manhattan.hpp"
#include "hyperfractal/measure.hpp"

namespace hyperfractal {

struct StreetPiece {
    double length;   // > 0
    double traffic;  // >= 0, measure units
};

struct StreetRecord {
    std::string street_id;
    std::vector<StreetPiece> pieces;
};

/// Street segment after the bounded-density-variation subdivision step.
struct RankedSegment {
    double length;
    double density;  // traffic per unit length
    double mass;     // length * density
};

/// Ranked cumulative-length curve: point j is (total length of all segments
/// at least as dense as level j, the density of level j).
struct RankCurve {
    struct Point {
        double xi;  // cumulative length, strictly increasing
        double nu;  // density, non-increasing
    };
    std::vector<Point> points;
};

struct PowerLawFit {
    double exponent;       // slope of ln nu against ln xi
    double log_intercept;
    double r_squared;      // in [0,1]
    std::size_t n_points;  // points used (zero densities excluded)
};

struct DimensionEstimate {
    DimensionValue dimension;
    PowerLawFit fit;
};

namespace detail {

inline void validate_street(const StreetRecord& street) {
    if (street.pieces.empty())
        throw std::invalid_argument("street '" + street.street_id + "' has no pieces");
    for (const StreetPiece& piece : street.pieces) {
        if (!(piece.length > 0.0))
            throw std::invalid_argument("street '" + street.street_id +
                                        "' has a non-positive piece length");
        if (piece.traffic < 0.0)
            throw std::invalid_argument("street '" + street.street_id +
                                        "' has negative traffic");
    }
}

}  // namespace detail

/// Greedy left-to-right merge of each street's consecutive pieces while the
/// group's max/min piece-density ratio stays within A. Zero-traffic pieces
/// always form their own segments.
inline std::vector<RankedSegment> subdivide(const std::vector<StreetRecord>& streets,
                                            double density_ratio_bound) {
    if (!(density_ratio_bound > 1.0))
        throw std::invalid_argument("subdivide: density ratio bound must exceed 1");
    std::vector<RankedSegment> segments;
    for (const StreetRecord& street : streets) {
        detail::validate_street(street);
        double group_length = 0.0;
        double group_traffic = 0.0;
        double group_min = 0.0;
        double group_max = 0.0;
        auto flush = [&] {
            if (group_length > 0.0) {
                const double density = group_traffic / group_length;
                segments.push_back(RankedSegment{group_length, density, group_traffic});
            }
            group_length = group_traffic = group_min = group_max = 0.0;
        };
        for (const StreetPiece& piece : street.pieces) {
            const double density = piece.traffic / piece.length;
            if (density == 0.0) {
                flush();
                segments.push_back(RankedSegment{piece.length, 0.0, 0.0});
                continue;
            }
            if (group_length == 0.0) {
                group_min = group_max = density;
            } else {
                const double lo = std::min(group_min, density);
                const double hi = std::max(group_max, density);
                if (hi / lo > density_ratio_bound) {
                    flush();
                    group_min = group_max = density;
                } else {
                    group_min = lo;
                    group_max = hi;
                }
            }
            group_length += piece.length;
            group_traffic += piece.traffic;
        }
        flush();
    }
    return segments;
}

/// Sorts segments by decreasing density (equal densities merge into one
/// point, lengths summed) and accumulates length.
inline RankCurve rank_curve(std::vector<RankedSegment> segments) {
    std::sort(segments.begin(), segments.end(),
              [](const RankedSegment& a, const RankedSegment& b) {
                  return a.density > b.density;
              });
    RankCurve curve;
    double cumulative = 0.0;
    std::size_t levels = 0;
    for (std::size_t i = 0; i < segments.size();) {
        const double density = segments[i].density;
        double run_length = 0.0;
        while (i < segments.size() && segments[i].density == density) {
            run_length += segments[i].length;
            ++i;
        }
        cumulative += run_length;
        curve.points.push_back(RankCurve::Point{cumulative, density});
        ++levels;
    }
    if (levels < 2)
        throw std::invalid_argument(
            "rank_curve: need at least 2 distinct density levels to fit a power law");
    return curve;
}

/// Least squares of ln nu against ln xi, each curve point weighted by its
/// length run (xi_j - xi_{j-1}) so every unit of street length counts
/// equally. Zero-density points are excluded from the fit (their length
/// still advances xi).
inline PowerLawFit fit_power_law(const RankCurve& curve) {
    std::vector<double> lx, ly, w;
    double previous_xi = 0.0;
    for (const RankCurve::Point& point : curve.points) {
        const double run = point.xi - previous_xi;
        previous_xi = point.xi;
        if (point.nu <= 0.0) continue;
        lx.push_back(std::log(point.xi));
        ly.push_back(std::log(point.nu));
        w.push_back(run);
    }
    if (lx.empty())
        throw std::invalid_argument("fit_power_law: all densities are zero");
    if (lx.size() < 2)
        throw std::invalid_argument("fit_power_law: a single usable point cannot fix a slope");

    double weight_total = 0.0, mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        weight_total += w[i];
        mean_x += w[i] * lx[i];
        mean_y += w[i] * ly[i];
    }
    mean_x /= weight_total;
    mean_y /= weight_total;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mean_x;
        const double dy = ly[i] - mean_y;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * dy;
        syy += w[i] * dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double r_squared = 1.0;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const double resid = ly[i] - (slope * lx[i] + intercept);
            ss_res += w[i] * resid * resid;
        }
        r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return PowerLawFit{slope, intercept, r_squared, lx.size()};
}

/// The full ranked-density procedure: subdivide, rank, fit, and read the
/// dimension off the decay exponent as 1 - slope.
inline DimensionEstimate estimate_dimension(const std::vector<StreetRecord>& streets,
                                            double density_ratio_bound) {
    const PowerLawFit fit =
        fit_power_law(rank_curve(subdivide(streets, density_ratio_bound)));
    return DimensionEstimate{DimensionValue{1.0 - fit.exponent}, fit};
}

/// One StreetRecord per maximal grid line; its pieces are the line's
/// constituent segments in span order, traffic = stored segment mass.
inline std::vector<StreetRecord> network_to_streets(const ManhattanNetwork& network) {
    std::vector<StreetRecord> streets;
    for (const GridSegment& segment : network.segments) {
        const bool new_line = streets.empty() || segment.span_start == Dyadic::zero();
        if (new_line) {
            StreetRecord street;
            street.street_id =
                std::string(segment.axis == Axis::vertical ? "v" : "h") + "_l" +
                std::to_string(segment.depth) + "_b" +
                std::to_string(segment.line_offset.num);
            streets.push_back(std::move(street));
        }
        streets.back().pieces.push_back(StreetPiece{segment.length, segment.mass});
    }
    return streets;
}

/// Empirical local dimension at a center point: slope of ln C(rho) against
/// ln rho, where C(rho) is the fraction of points inside the ball of radius
/// rho. Radii must be decreasing and keep every ball inside the unit square.
inline double local_dimension_estimate(const std::vector<Point2>& points, Point2 center,
                                       const std::vector<double>& radii) {
    if (points.empty())
        throw std::invalid_argument("local_dimension_estimate: no points");
    if (radii.size() < 2)
        throw std::invalid_argument("local_dimension_estimate: need at least 2 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0))
            throw std::invalid_argument("local_dimension_estimate: radii must be positive");
        if (i > 0 && radii[i] >= radii[i - 1])
            throw std::invalid_argument("local_dimension_estimate: radii must decrease");
    }
    const double rho_max = radii.front();
    if (center.x - rho_max < 0.0 || center.x + rho_max > 1.0 || center.y - rho_max < 0.0 ||
        center.y + rho_max > 1.0)
        throw std::invalid_argument(
            "local_dimension_estimate: ball of largest radius leaves the unit square");

    std::vector<double> lx, ly;
    for (double rho : radii) {
        std::size_t count = 0;
        const double rho_sq = rho * rho;
        for (const Point2& p : points) {
            const Point2 d = p - center;
            if (dot(d, d) <= rho_sq) ++count;
        }
        if (count == 0) continue;
        lx.push_back(std::log(rho));
        ly.push_back(std::log(static_cast<double>(count) /
                              static_cast<double>(points.size())));
    }
    if (lx.size() < 2)
        throw std::invalid_argument(
            "local_dimension_estimate: fewer than 2 radii have nonzero counts");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mean_x += lx[i];
        mean_y += ly[i];
    }
    mean_x /= static_cast<double>(lx.size());
    mean_y /= static_cast<double>(lx.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
        sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("local_dimension_estimate: degenerate radii");
    return sxy / sxx;
}

inline double local_dimension_estimate(const std::vector<SamplePoint>& points,
                                       Point2 center, const std::vector<double>& radii) {
    std::vector<Point2> plain;
    plain.reserve(points.size());
    for (const SamplePoint& p : points) plain.push_back(Point2{p.x, p.y});
    return local_dimension_estimate(plain, center, radii);
}

}  // namespace hyperfractal
