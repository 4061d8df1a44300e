#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfractal/city.hpp"
#include "hyperfractal/io/format.hpp"
#include "hyperfractal/manhattan.hpp"

namespace hyperfractal::io {

/// SVG 1.1 rendering on a fixed width_px x width_px canvas. The y axis is
/// flipped so (0,0) renders bottom-left. Stroke width for a depth-k segment
/// is w0 * 2^-k, clamped to 0.25 px, so the recursion hierarchy reads off
/// the line thickness. Output bytes are deterministic.

inline constexpr double kBaseStrokeWidth = 4.0;
inline constexpr double kMinStrokeWidth = 0.25;

namespace detail {

inline constexpr std::array<const char*, 8> kDistrictPalette = {
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

class SvgWriter {
  public:
    SvgWriter(std::ostream& out, int width_px) : out_(out), width_(width_px) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
             << width_px << "\" height=\"" << width_px << "\" viewBox=\"0 0 " << width_px
             << ' ' << width_px << "\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"" << width_px << "\" height=\"" << width_px
             << "\" fill=\"#ffffff\"/>\n";
    }

    void line(Point2 a, Point2 b, double stroke_width, const char* color) {
        out_ << "<line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\"" << px(b.x)
             << "\" y2=\"" << py(b.y) << "\" stroke=\"" << color << "\" stroke-width=\""
             << format_fixed(stroke_width, 3) << "\" stroke-linecap=\"square\"/>\n";
    }

    void circle(Point2 center, double radius_px, const char* color) {
        out_ << "<circle cx=\"" << px(center.x) << "\" cy=\"" << py(center.y) << "\" r=\""
             << format_fixed(radius_px, 3) << "\" fill=\"" << color << "\"/>\n";
    }

    void finish() { out_ << "</svg>\n"; }

  private:
    std::string px(double x) const { return format_fixed(x * width_, 3); }
    std::string py(double y) const { return format_fixed((1.0 - y) * width_, 3); }

    std::ostream& out_;
    double width_;
};

inline double depth_stroke(int depth, double base) {
    return std::max(std::ldexp(base, -depth), kMinStrokeWidth);
}

}  // namespace detail

inline void render_svg(const ManhattanNetwork& network,
                       const std::vector<SamplePoint>& points, std::ostream& out,
                       int width_px, double base_stroke = kBaseStrokeWidth) {
    detail::SvgWriter svg(out, width_px);
    // deepest first so thick lines draw on top
    for (int depth = network.max_depth; depth >= 0; --depth) {
        const auto begin = ManhattanNetwork::depth_offset(depth);
        const auto end = begin + ManhattanNetwork::depth_count(depth);
        const double stroke = detail::depth_stroke(depth, base_stroke);
        for (auto i = begin; i < end; ++i) {
            const GridSegment& s = network.segments[static_cast<std::size_t>(i)];
            const double offset = s.line_offset.to_double();
            const double s0 = s.span_start.to_double();
            const double s1 = s.span_end.to_double();
            if (s.axis == Axis::vertical)
                svg.line({offset, s0}, {offset, s1}, stroke, "#1a1a1a");
            else
                svg.line({s0, offset}, {s1, offset}, stroke, "#1a1a1a");
        }
    }
    const double radius = std::max(1.2, 0.003 * width_px);
    for (const SamplePoint& p : points) svg.circle({p.x, p.y}, radius, "#d62728");
    svg.finish();
}

inline void render_svg(const ManhattanNetwork& network, std::ostream& out, int width_px,
                       double base_stroke = kBaseStrokeWidth) {
    render_svg(network, {}, out, width_px, base_stroke);
}

inline void render_svg(const FractalCity& city, const std::vector<CityPoint>& points,
                       std::ostream& out, int width_px,
                       double base_stroke = kBaseStrokeWidth) {
    detail::SvgWriter svg(out, width_px);
    for (const District& district : city.districts) {
        const char* color =
            detail::kDistrictPalette[district.cell_index % detail::kDistrictPalette.size()];
        for (auto it = district.segments.rbegin(); it != district.segments.rend(); ++it)
            svg.line(it->a, it->b, detail::depth_stroke(it->depth, base_stroke), color);
    }
    for (const BoundarySegment& s : city.boundary_segments)
        svg.line(s.a, s.b, base_stroke * 1.25, "#000000");
    const double radius = std::max(1.2, 0.003 * width_px);
    for (const CityPoint& p : points) svg.circle(p.location, radius, "#d62728");
    svg.finish();
}

inline void render_svg(const FractalCity& city, std::ostream& out, int width_px,
                       double base_stroke = kBaseStrokeWidth) {
    render_svg(city, {}, out, width_px, base_stroke);
}

template <typename Object, typename Points>
void render_svg(const Object& object, const Points& points, const std::string& path,
                int width_px, double base_stroke = kBaseStrokeWidth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open '" + path + "' for writing");
    render_svg(object, points, out, width_px, base_stroke);
    if (!out) throw std::runtime_error("svg: write to '" + path + "' failed");
}

template <typename Object>
void render_svg(const Object& object, const std::string& path, int width_px,
                double base_stroke = kBaseStrokeWidth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svg: cannot open '" + path + "' for writing");
    render_svg(object, out, width_px, base_stroke);
    if (!out) throw std::runtime_error("svg: write to '" + path + "' failed");
}

}  // namespace hyperfractal::io
