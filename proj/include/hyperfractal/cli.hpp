#pragma once

#include <algorithm>
#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperfractal/city.hpp"
#include "hyperfractal/estimator.hpp"
#include "hyperfractal/io/city_config.hpp"
#include "hyperfractal/io/figures.hpp"
#include "hyperfractal/io/format.hpp"
#include "hyperfractal/io/geojson.hpp"
#include "hyperfractal/io/points_csv.hpp"
#include "hyperfractal/io/streets_csv.hpp"
#include "hyperfractal/io/svg.hpp"
#include "hyperfractal/manhattan.hpp"
#include "hyperfractal/measure.hpp"

namespace hyperfractal::cli {

namespace detail {

inline std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        double value = 0.0;
        const auto result =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (result.ec != std::errc{} || result.ptr != field.data() + field.size())
            throw CLI::ValidationError(std::string(what) + ": malformed number '" + field +
                                       "'");
        values.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

inline TruncationMode parse_mode(const std::string& mode) {
    if (mode == "renormalized") return TruncationMode::renormalized;
    if (mode == "raw") return TruncationMode::raw;
    throw CLI::ValidationError("--mode must be 'renormalized' or 'raw'");
}

inline std::string format_dimension(DimensionValue d) {
    return d.is_infinite() ? "inf" : io::format_roundtrip(d.value);
}

inline void print_segment_table(const ManhattanNetwork& network, std::ostream& out) {
    out << "depth,count,length,mass,linear_density\n";
    for (const SegmentTableRow& row : segment_table(network))
        out << row.depth << ',' << row.count << ',' << io::format_roundtrip(row.length)
            << ',' << io::format_roundtrip(row.mass) << ','
            << io::format_roundtrip(row.linear_density) << '\n';
}

}  // namespace detail

/// Command-line entry point. Subcommands: grid, sample, city, estimate, dim,
/// figures. Returns 0 on success, 2 on usage errors, 1 on runtime errors;
/// diagnostics go to err, data to files or out.
inline int dispatch(std::vector<std::string> args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"Random hyperfractal city generator and analyzer"};
    app.require_subcommand(1);

    // grid
    auto* grid = app.add_subcommand("grid", "Build a Manhattan grid and export it");
    double grid_p = 0.5;
    int grid_depth = 0;
    std::string grid_mode = "renormalized";
    std::string grid_geojson, grid_svg;
    int grid_width = 800;
    bool grid_table = false;
    grid->add_option("--p", grid_p, "axis weight p in (0,1)")->required();
    grid->add_option("--depth", grid_depth, "recursion depth K")->required();
    grid->add_option("--mode", grid_mode, "truncation mode: renormalized|raw");
    grid->add_option("--out-geojson", grid_geojson, "GeoJSON output path");
    grid->add_option("--out-svg", grid_svg, "SVG output path");
    grid->add_option("--width", grid_width, "SVG canvas width in px");
    grid->add_flag("--table", grid_table, "print the per-depth segment table");

    // sample
    auto* sample = app.add_subcommand("sample", "Sample points from a grid or a city");
    std::optional<double> sample_p;
    std::string sample_config;
    std::size_t sample_n = 1000;
    std::optional<std::uint64_t> sample_seed;
    int sample_depth_flag = 8;
    std::string sample_mode = "renormalized";
    std::string sample_csv, sample_svg;
    int sample_width = 800;
    sample->add_option("--p", sample_p, "sample a Manhattan grid with this p");
    sample->add_option("--config", sample_config, "sample a city built from this config");
    sample->add_option("--n", sample_n, "number of points")->required();
    sample->add_option("--seed", sample_seed, "sampling seed (default: config seed or 0)");
    sample->add_option("--depth", sample_depth_flag, "grid recursion depth (with --p)");
    sample->add_option("--mode", sample_mode, "truncation mode (with --p)");
    sample->add_option("--out-csv", sample_csv, "points CSV output path");
    sample->add_option("--out-svg", sample_svg, "SVG output path");
    sample->add_option("--width", sample_width, "SVG canvas width in px");

    // city
    auto* city_cmd = app.add_subcommand("city", "Build a fractal city from a config file");
    std::string city_config_path, city_geojson, city_svg;
    int city_width = 800;
    city_cmd->add_option("--config", city_config_path, "city config JSON")->required();
    city_cmd->add_option("--out-geojson", city_geojson, "GeoJSON output path");
    city_cmd->add_option("--out-svg", city_svg, "SVG output path");
    city_cmd->add_option("--width", city_width, "SVG canvas width in px");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Estimate a dimension from street data");
    std::string estimate_input;
    double estimate_factor = 1.000001;
    estimate->add_option("--input", estimate_input, "street CSV path")->required();
    estimate->add_option("--factor", estimate_factor, "density variation bound A > 1");

    // dim
    auto* dim = app.add_subcommand("dim", "Closed-form dimension of a measure");
    std::optional<double> dim_p;
    std::string dim_ifs, dim_ss;
    dim->add_option("--p", dim_p, "Manhattan grid: ln(4/(1-p))/ln 2");
    dim->add_option("--ifs", dim_ifs,
                    "IFS 'p1,p2,...:r1,r2,...' (probabilities, then contraction ratios)");
    dim->add_option("--ss", dim_ss, "uniform self-similar 'r,s': ln r / ln s");

    // figures
    auto* figures = app.add_subcommand("figures", "Regenerate the preset figure SVGs");
    std::string figures_outdir;
    figures->add_option("--outdir", figures_outdir, "output directory")->required();

    try {
        std::reverse(args.begin(), args.end());  // CLI11 takes reversed vectors
        app.parse(args);
    } catch (const CLI::CallForHelp& help) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& error) {
        err << error.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (*grid) {
            const ManhattanNetwork network =
                build_network(grid_p, grid_depth, detail::parse_mode(grid_mode));
            if (!grid_geojson.empty()) io::export_geojson(network, grid_geojson);
            if (!grid_svg.empty()) io::render_svg(network, grid_svg, grid_width);
            if (grid_table || (grid_geojson.empty() && grid_svg.empty()))
                detail::print_segment_table(network, out);
        } else if (*sample) {
            if (sample_p.has_value() == !sample_config.empty())
                throw std::runtime_error("sample: pass exactly one of --p or --config");
            if (sample_p) {
                const ManhattanNetwork network = build_network(
                    *sample_p, sample_depth_flag, detail::parse_mode(sample_mode));
                const auto points =
                    sample_points(network, sample_n, sample_seed.value_or(0));
                if (!sample_csv.empty()) io::export_points_csv(points, sample_csv);
                if (!sample_svg.empty())
                    io::render_svg(network, points, sample_svg, sample_width);
                if (sample_csv.empty() && sample_svg.empty())
                    io::export_points_csv(points, out);
            } else {
                const CityConfig config = io::load_city_config(sample_config);
                const FractalCity city = build_city(config);
                const auto points =
                    sample_city(city, sample_n, sample_seed.value_or(config.seed));
                if (!sample_csv.empty()) io::export_points_csv(points, sample_csv);
                if (!sample_svg.empty())
                    io::render_svg(city, points, sample_svg, sample_width);
                if (sample_csv.empty() && sample_svg.empty())
                    io::export_points_csv(points, out);
            }
        } else if (*city_cmd) {
            const CityConfig config = io::load_city_config(city_config_path);
            const FractalCity city = build_city(config);
            if (!city_geojson.empty()) io::export_geojson(city, city_geojson);
            if (!city_svg.empty()) io::render_svg(city, city_svg, city_width);
            out << "component,mass\n";
            for (const MassReportRow& row : city_mass_report(city))
                out << row.component << ',' << io::format_roundtrip(row.mass) << '\n';
        } else if (*estimate) {
            const auto streets = io::import_streets_csv(estimate_input);
            const DimensionEstimate result = estimate_dimension(streets, estimate_factor);
            out << "dimension " << detail::format_dimension(result.dimension) << '\n'
                << "exponent " << io::format_roundtrip(result.fit.exponent) << '\n'
                << "r_squared " << io::format_roundtrip(result.fit.r_squared) << '\n'
                << "n_points " << result.fit.n_points << '\n';
        } else if (*dim) {
            const int selected = (dim_p.has_value() ? 1 : 0) + (dim_ifs.empty() ? 0 : 1) +
                                 (dim_ss.empty() ? 0 : 1);
            if (selected != 1)
                throw std::runtime_error("dim: pass exactly one of --p, --ifs, --ss");
            if (dim_p) {
                out << detail::format_dimension(manhattan_dimension(*dim_p)) << '\n';
            } else if (!dim_ifs.empty()) {
                const std::size_t colon = dim_ifs.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error(
                        "dim: --ifs expects 'p1,p2,...:r1,r2,...' with a colon separator");
                ContractionSystem system;
                system.probabilities =
                    detail::parse_number_list(dim_ifs.substr(0, colon), "--ifs probabilities");
                system.ratios =
                    detail::parse_number_list(dim_ifs.substr(colon + 1), "--ifs ratios");
                out << detail::format_dimension(ifs_dimension(system)) << '\n';
            } else {
                const auto values = detail::parse_number_list(dim_ss, "--ss");
                if (values.size() != 2)
                    throw std::runtime_error("dim: --ss expects 'r,s'");
                out << detail::format_dimension(
                           uniform_ss_dimension(UniformSelfSimilarSpec{values[1], values[0]}))
                    << '\n';
            }
        } else if (*figures) {
            for (const std::string& path : io::write_figures(figures_outdir))
                err << "wrote " << path << '\n';
        }
    } catch (const std::exception& error) {
        err << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hyperfractal::cli
