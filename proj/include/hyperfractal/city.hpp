#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hyperfractal/geometry.hpp"
#include "hyperfractal/manhattan.hpp"
#include "hyperfractal/rng.hpp"

namespace hyperfractal {

struct GaussianCenters {
    Point2 mean{0.5, 0.5};
    CovarianceSpec covariance;
    std::uint64_t seed = 0;
    std::size_t max_rejects = 100000;
};

/// District centers are either given explicitly or drawn from a truncated
/// Gaussian.
using CenterSource = std::variant<std::vector<Point2>, GaussianCenters>;

struct CityConfig {
    std::size_t n = 1;             // district count
    double p0 = 0.0;               // boundary road weight, in [0,1)
    CenterSource center_source;
    std::vector<double> lambdas;   // district weights, > 0
    std::vector<double> ps;        // Manhattan parameters, each in (0,1)
    int max_depth = 6;
    std::uint64_t seed = 0;        // master seed (sampling substreams)
};

/// One street segment of a district grid after the affine embedding and the
/// clip to the cell polygon.
struct CityStreetSegment {
    Point2 a;
    Point2 b;
    Axis axis;
    std::int32_t depth;
    double line_coord;  // the fixed coordinate of the carrying line
    double length;
    double mass;
    double linear_density;
};

struct District {
    std::size_t cell_index;
    double q;  // total district weight, lambda_i (1 - p0) / sum(lambda)
    std::vector<CityStreetSegment> segments;
};

struct BoundarySegment {
    Point2 a;
    Point2 b;
    double length;
    double mass;
    double linear_density;
};

struct FractalCity {
    VoronoiDiagram diagram;
    std::vector<District> districts;
    std::vector<BoundarySegment> boundary_segments;
    double p0 = 0.0;

    double boundary_mass() const {
        double total = 0.0;
        for (const BoundarySegment& e : boundary_segments) total += e.mass;
        return total;
    }

    double total_mass() const {
        double total = boundary_mass();
        for (const District& d : districts)
            for (const CityStreetSegment& s : d.segments) total += s.mass;
        return total;
    }
};

struct CityPoint {
    Point2 location;
    std::int32_t district = -1;  // -1 marks a boundary point
    std::int32_t depth = -1;     // grid depth for district points

    bool is_boundary() const { return district < 0; }
};

namespace detail {

inline void validate(const CityConfig& config) {
    if (config.n < 1) throw std::invalid_argument("CityConfig: n must be >= 1");
    if (!(config.p0 >= 0.0) || !(config.p0 < 1.0))
        throw std::invalid_argument("CityConfig: p0 outside [0,1)");
    if (config.lambdas.size() != config.n)
        throw std::invalid_argument("CityConfig: lambdas length differs from n");
    if (config.ps.size() != config.n)
        throw std::invalid_argument("CityConfig: ps length differs from n");
    for (double lambda : config.lambdas)
        if (!(lambda > 0.0))
            throw std::invalid_argument("CityConfig: district weights must be positive");
    for (double p : config.ps)
        if (!(p > 0.0) || !(p < 1.0))
            throw std::invalid_argument("CityConfig: Manhattan parameters must lie in (0,1)");
    if (const auto* centers = std::get_if<std::vector<Point2>>(&config.center_source))
        if (centers->size() != config.n)
            throw std::invalid_argument("CityConfig: explicit center count differs from n");
}

inline std::vector<Point2> resolve_centers(const CityConfig& config) {
    if (const auto* centers = std::get_if<std::vector<Point2>>(&config.center_source))
        return *centers;
    const auto& gaussian = std::get<GaussianCenters>(config.center_source);
    return sample_centers(config.n, gaussian.mean, gaussian.covariance, gaussian.seed,
                          gaussian.max_rejects);
}

struct Bbox {
    double x0, y0, x1, y1;
};

inline Bbox bounding_box(const ConvexPolygon& poly) {
    Bbox box{poly.vertices[0].x, poly.vertices[0].y, poly.vertices[0].x,
             poly.vertices[0].y};
    for (const Point2& v : poly.vertices) {
        box.x0 = std::min(box.x0, v.x);
        box.y0 = std::min(box.y0, v.y);
        box.x1 = std::max(box.x1, v.x);
        box.y1 = std::max(box.y1, v.y);
    }
    return box;
}

}  // namespace detail

/// Assembles the composite city measure:
///   1. centers resolved, Voronoi diagram built;
///   2. each cell gets a Manhattan grid with its own parameter, affinely
///      mapped onto the cell's bounding box and clipped to the cell polygon,
///      clipped masses scaled by retained length fraction, then renormalized
///      so the cell totals q_i = lambda_i (1 - p0) / sum(lambda);
///   3. interior Voronoi edges share the boundary weight p0 at uniform
///      linear density.
inline FractalCity build_city(const CityConfig& config) {
    detail::validate(config);
    const std::vector<Point2> centers = detail::resolve_centers(config);

    FractalCity city;
    city.p0 = config.p0;
    city.diagram = voronoi_partition(centers);

    double lambda_sum = 0.0;
    for (double lambda : config.lambdas) lambda_sum += lambda;

    for (std::size_t i = 0; i < config.n; ++i) {
        const double q = config.lambdas[i] * (1.0 - config.p0) / lambda_sum;
        const ConvexPolygon& polygon = city.diagram.cells[i].polygon;
        const detail::Bbox box = detail::bounding_box(polygon);
        const double width = box.x1 - box.x0;
        const double height = box.y1 - box.y0;

        const ManhattanNetwork network = build_network(config.ps[i], config.max_depth);
        District district{i, q, {}};
        double clipped_mass = 0.0;
        for (const GridSegment& segment : network.segments) {
            const double offset = segment.line_offset.to_double();
            const double s0 = segment.span_start.to_double();
            const double s1 = segment.span_end.to_double();
            Point2 a, b;
            double line_coord;
            if (segment.axis == Axis::vertical) {
                line_coord = box.x0 + offset * width;
                a = Point2{line_coord, box.y0 + s0 * height};
                b = Point2{line_coord, box.y0 + s1 * height};
            } else {
                line_coord = box.y0 + offset * height;
                a = Point2{box.x0 + s0 * width, line_coord};
                b = Point2{box.x0 + s1 * width, line_coord};
            }
            const auto clipped = clip_segment(a, b, polygon);
            if (!clipped) continue;
            const double length = norm(clipped->b - clipped->a);
            if (!(length > 0.0)) continue;
            const double mass = segment.mass * clipped->fraction;
            district.segments.push_back(CityStreetSegment{clipped->a, clipped->b,
                                                          segment.axis, segment.depth,
                                                          line_coord, length, mass, 0.0});
            clipped_mass += mass;
        }
        if (district.segments.empty() || !(clipped_mass > 0.0))
            throw std::runtime_error("build_city: cell " + std::to_string(i) +
                                     " retains no street length after clipping");
        const double scale = q / clipped_mass;
        for (CityStreetSegment& segment : district.segments) {
            segment.mass *= scale;
            segment.linear_density = segment.mass / segment.length;
        }
        city.districts.push_back(std::move(district));
    }

    const double interior_length = city.diagram.interior_length();
    if (config.p0 > 0.0 && !(interior_length > 0.0))
        throw std::runtime_error(
            "build_city: boundary weight p0 > 0 but the diagram has no interior edges "
            "(single district?)");
    if (interior_length > 0.0) {
        const double density = config.p0 / interior_length;
        for (const InteriorEdge& edge : city.diagram.interior_edges) {
            const double length = edge.length();
            city.boundary_segments.push_back(
                BoundarySegment{edge.a, edge.b, length, density * length, density});
        }
    }
    return city;
}

/// n i.i.d. points from the composite measure: component by weight
/// (q_1..q_n, p0), then length-uniform on boundary edges or mass-weighted
/// segment plus uniform position inside a district. Point i draws from
/// derive_stream(seed, kStreamCityPoints, i).
inline std::vector<CityPoint> sample_city(const FractalCity& city, std::size_t n,
                                          std::uint64_t seed) {
    const std::size_t districts = city.districts.size();

    std::vector<double> component_cumulative(districts + 1, 0.0);
    double running = 0.0;
    for (std::size_t i = 0; i < districts; ++i) {
        running += city.districts[i].q;
        component_cumulative[i] = running;
    }
    component_cumulative[districts] = running + city.p0;

    std::vector<std::vector<double>> segment_cumulative(districts);
    for (std::size_t i = 0; i < districts; ++i) {
        double acc = 0.0;
        segment_cumulative[i].reserve(city.districts[i].segments.size());
        for (const CityStreetSegment& s : city.districts[i].segments) {
            acc += s.mass;
            segment_cumulative[i].push_back(acc);
        }
    }
    std::vector<double> edge_cumulative;
    double edge_total = 0.0;
    edge_cumulative.reserve(city.boundary_segments.size());
    for (const BoundarySegment& e : city.boundary_segments) {
        edge_total += e.length;
        edge_cumulative.push_back(edge_total);
    }

    auto pick = [](const std::vector<double>& cumulative, double r) {
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        const std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
        return std::min(idx, cumulative.size() - 1);
    };

    std::vector<CityPoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_stream(seed, kStreamCityPoints, i));
        const double u = rng.next_double() * component_cumulative[districts];
        const std::size_t component = pick(component_cumulative, u);
        if (component < districts) {
            const District& district = city.districts[component];
            const double r = rng.next_double() * segment_cumulative[component].back();
            const CityStreetSegment& segment =
                district.segments[pick(segment_cumulative[component], r)];
            const double t = rng.next_double();
            points.push_back(CityPoint{segment.a + t * (segment.b - segment.a),
                                       static_cast<std::int32_t>(component),
                                       segment.depth});
        } else {
            const double r = rng.next_double() * edge_total;
            const BoundarySegment& edge = city.boundary_segments[pick(edge_cumulative, r)];
            const double t = rng.next_double();
            points.push_back(CityPoint{edge.a + t * (edge.b - edge.a), -1, -1});
        }
    }
    return points;
}

struct MassReportRow {
    std::string component;
    double mass;
};

/// One row per district plus the boundary; masses as stored (sum to 1).
inline std::vector<MassReportRow> city_mass_report(const FractalCity& city) {
    std::vector<MassReportRow> rows;
    rows.reserve(city.districts.size() + 1);
    for (const District& district : city.districts) {
        double mass = 0.0;
        for (const CityStreetSegment& s : district.segments) mass += s.mass;
        rows.push_back(MassReportRow{"district " + std::to_string(district.cell_index), mass});
    }
    rows.push_back(MassReportRow{"boundary", city.boundary_mass()});
    return rows;
}

}  // namespace hyperfractal
