#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperfractal/city.hpp"
#include "hyperfractal/io/format.hpp"
#include "hyperfractal/manhattan.hpp"

namespace hyperfractal::io {

/// GeoJSON export: an RFC 7946 FeatureCollection of LineString features with
/// properties component (district index, 0 for a bare network, or
/// "boundary"), depth (-1 for boundary roads), mass and linear_density.
/// Coordinates carry exactly 12 decimals; masses and densities use shortest
/// round-trip formatting so they reparse bit-exactly. Output bytes are a pure
/// function of the input object.

struct GeoFeature {
    Point2 a;
    Point2 b;
    std::int32_t component;  // -1 encodes "boundary"
    std::int32_t depth;
    double mass;
    double linear_density;
};

inline std::vector<GeoFeature> to_features(const ManhattanNetwork& network) {
    std::vector<GeoFeature> features;
    features.reserve(network.segments.size());
    for (const GridSegment& s : network.segments) {
        const double offset = s.line_offset.to_double();
        const double s0 = s.span_start.to_double();
        const double s1 = s.span_end.to_double();
        const Point2 a = s.axis == Axis::vertical ? Point2{offset, s0} : Point2{s0, offset};
        const Point2 b = s.axis == Axis::vertical ? Point2{offset, s1} : Point2{s1, offset};
        features.push_back(GeoFeature{a, b, 0, s.depth, s.mass, s.linear_density});
    }
    return features;
}

inline std::vector<GeoFeature> to_features(const FractalCity& city) {
    std::vector<GeoFeature> features;
    for (const District& district : city.districts)
        for (const CityStreetSegment& s : district.segments)
            features.push_back(GeoFeature{s.a, s.b,
                                          static_cast<std::int32_t>(district.cell_index),
                                          s.depth, s.mass, s.linear_density});
    std::vector<GeoFeature> boundary;
    boundary.reserve(city.boundary_segments.size());
    for (const BoundarySegment& s : city.boundary_segments) {
        Point2 a = s.a, b = s.b;
        if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
        boundary.push_back(GeoFeature{a, b, -1, -1, s.mass, s.linear_density});
    }
    std::sort(boundary.begin(), boundary.end(), [](const GeoFeature& u, const GeoFeature& v) {
        if (u.a.x != v.a.x) return u.a.x < v.a.x;
        if (u.a.y != v.a.y) return u.a.y < v.a.y;
        if (u.b.x != v.b.x) return u.b.x < v.b.x;
        return u.b.y < v.b.y;
    });
    features.insert(features.end(), boundary.begin(), boundary.end());
    return features;
}

inline void write_feature_collection(const std::vector<GeoFeature>& features,
                                     std::ostream& out) {
    constexpr int digits = 12;
    out << "{\"type\":\"FeatureCollection\",\"features\":[";
    bool first = true;
    for (const GeoFeature& f : features) {
        if (!first) out << ',';
        first = false;
        out << "{\"type\":\"Feature\",\"geometry\":{\"type\":\"LineString\","
            << "\"coordinates\":[[" << format_fixed(f.a.x, digits) << ','
            << format_fixed(f.a.y, digits) << "],[" << format_fixed(f.b.x, digits) << ','
            << format_fixed(f.b.y, digits) << "]]},\"properties\":{\"component\":";
        if (f.component < 0)
            out << "\"boundary\"";
        else
            out << f.component;
        out << ",\"depth\":" << f.depth << ",\"mass\":" << format_roundtrip(f.mass)
            << ",\"linear_density\":" << format_roundtrip(f.linear_density) << "}}";
    }
    out << "]}\n";
}

template <typename Object>
void export_geojson(const Object& object, std::ostream& out) {
    write_feature_collection(to_features(object), out);
}

template <typename Object>
void export_geojson(const Object& object, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("geojson: cannot open '" + path + "' for writing");
    export_geojson(object, out);
    if (!out) throw std::runtime_error("geojson: write to '" + path + "' failed");
}

/// Parses a FeatureCollection produced by write_feature_collection back into
/// features (round-trip helper, used by tests and tooling).
inline std::vector<GeoFeature> import_geojson(std::istream& in) {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("type", "") != "FeatureCollection")
        throw std::runtime_error("geojson: not a FeatureCollection");
    std::vector<GeoFeature> features;
    for (const auto& feature : doc.at("features")) {
        const auto& geometry = feature.at("geometry");
        if (geometry.value("type", "") != "LineString")
            throw std::runtime_error("geojson: expected LineString geometry");
        const auto& coords = geometry.at("coordinates");
        if (coords.size() != 2)
            throw std::runtime_error("geojson: expected 2-point LineStrings");
        const auto& properties = feature.at("properties");
        const auto& component = properties.at("component");
        features.push_back(GeoFeature{
            Point2{coords[0][0].get<double>(), coords[0][1].get<double>()},
            Point2{coords[1][0].get<double>(), coords[1][1].get<double>()},
            component.is_string() ? -1 : component.get<std::int32_t>(),
            properties.at("depth").get<std::int32_t>(),
            properties.at("mass").get<double>(),
            properties.at("linear_density").get<double>(),
        });
    }
    return features;
}

}  // namespace hyperfractal::io
