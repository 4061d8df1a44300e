#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hyperfractal/city.hpp"
#include "hyperfractal/io/svg.hpp"
#include "hyperfractal/manhattan.hpp"

namespace hyperfractal::io {

/// Named figure presets: the grid recursion panels, the sampled-point sweep
/// over p, and the isotropic/anisotropic sprawl cities. All seeds are fixed,
/// so regenerated files are byte-identical.

inline std::vector<std::string> write_figures(const std::string& outdir) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name) {
        written.push_back((fs::path(outdir) / name).string());
        return written.back();
    };

    // recursion panels, depth 0..3
    for (int depth = 0; depth <= 3; ++depth) {
        const ManhattanNetwork network = build_network(0.5, depth);
        render_svg(network, emit("fig1_recursion_k" + std::to_string(depth) + ".svg"), 480);
    }

    // 1000 sampled points for p in {0.1, 0.3, 0.5, 0.8}
    const std::vector<std::pair<double, std::string>> sweep = {
        {0.1, "p01"}, {0.3, "p03"}, {0.5, "p05"}, {0.8, "p08"}};
    for (const auto& [p, tag] : sweep) {
        const ManhattanNetwork network = build_network(p, 8);
        const std::vector<SamplePoint> points = sample_points(network, 1000, 2024);
        render_svg(network, points, emit("fig2_points_" + tag + ".svg"), 480, 2.5);
    }

    // sprawl presets: two isotropic covariances and one anisotropic
    auto sprawl_city = [](CovarianceSpec cov, std::uint64_t center_seed) {
        CityConfig config;
        config.n = 15;
        config.p0 = 0.08;
        config.lambdas.assign(config.n, 1.0);
        config.ps.assign(config.n, 0.5);
        config.max_depth = 5;
        config.seed = 99;
        config.center_source =
            GaussianCenters{{0.5, 0.5}, cov, center_seed, 200000};
        return build_city(config);
    };
    render_svg(sprawl_city({0.1, 0.0, 0.1}, 101), emit("fig4_isotropic_low.svg"), 640, 2.5);
    render_svg(sprawl_city({0.5, 0.0, 0.5}, 102), emit("fig4_isotropic_high.svg"), 640, 2.5);
    render_svg(sprawl_city({0.02, 0.0, 0.7}, 103), emit("fig5_anisotropic.svg"), 640, 2.5);

    return written;
}

}  // namespace hyperfractal::io
