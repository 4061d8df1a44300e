#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperfractal/geometry.hpp"

using namespace hyperfractal;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_entry_error(const CovarianceSpec& a, const CovarianceSpec& b) {
    return std::max({std::abs(a.sxx - b.sxx), std::abs(a.sxy - b.sxy),
                     std::abs(a.syy - b.syy)});
}

CovarianceSpec random_psd(Rng& rng) {
    const double angle = rng.next_double() * 3.141592653589793;
    const double c = std::cos(angle), s = std::sin(angle);
    const double l1 = rng.next_double() * 2.0;
    const double l2 = rng.next_double() * l1;
    return CovarianceSpec{l1 * c * c + l2 * s * s, (l1 - l2) * c * s,
                          l1 * s * s + l2 * c * c};
}

}  // namespace

TEST_CASE("eigen_decompose of isotropic covariance returns the identity basis") {
    const EigenDecomposition eig = eigen_decompose({0.1, 0.0, 0.1});
    REQUIRE(eig.lambda1 == 0.1);
    REQUIRE(eig.lambda2 == 0.1);
    REQUIRE(eig.axis_major == Point2{1.0, 0.0});
    REQUIRE(eig.axis_minor == Point2{0.0, 1.0});
}

TEST_CASE("eigen_decompose of a diagonal anisotropic covariance") {
    const EigenDecomposition eig = eigen_decompose({0.02, 0.0, 0.7});
    REQUIRE_THAT(eig.lambda1, WithinAbs(0.7, 1e-15));
    REQUIRE_THAT(eig.lambda2, WithinAbs(0.02, 1e-15));
    REQUIRE(eig.axis_major == Point2{0.0, 1.0});
    REQUIRE(eig.axis_minor == Point2{1.0, 0.0});
}

TEST_CASE("eigen_decompose of the classic [[2,1],[1,2]]") {
    const EigenDecomposition eig = eigen_decompose({2.0, 1.0, 2.0});
    REQUIRE_THAT(eig.lambda1, WithinAbs(3.0, 1e-12));
    REQUIRE_THAT(eig.lambda2, WithinAbs(1.0, 1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE_THAT(eig.axis_major.x, WithinAbs(inv_sqrt2, 1e-12));
    REQUIRE_THAT(eig.axis_major.y, WithinAbs(inv_sqrt2, 1e-12));
    REQUIRE_THAT(eig.axis_minor.x, WithinAbs(inv_sqrt2, 1e-12));
    REQUIRE_THAT(eig.axis_minor.y, WithinAbs(-inv_sqrt2, 1e-12));
}

TEST_CASE("eigen_decompose reconstructs random PSD matrices") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const CovarianceSpec cov = random_psd(rng);
        const EigenDecomposition eig = eigen_decompose(cov);
        REQUIRE(eig.lambda1 >= eig.lambda2);
        REQUIRE(eig.lambda2 >= 0.0);
        REQUIRE_THAT(dot(eig.axis_major, eig.axis_minor), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(dot(eig.axis_major, eig.axis_major), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(dot(eig.axis_minor, eig.axis_minor), WithinAbs(1.0, 1e-12));
        REQUIRE(max_entry_error(reconstruct(eig), cov) <= 1e-10);
    }
}

TEST_CASE("eigen_decompose rejects non-PSD input") {
    REQUIRE_THROWS_AS(eigen_decompose({-0.5, 0.0, 1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(eigen_decompose({1.0, 2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("sample_centers with zero covariance collapses to the mean") {
    const auto centers = sample_centers(5, {0.4, 0.6}, {0.0, 0.0, 0.0}, 3);
    REQUIRE(centers.size() == 5);
    for (const Point2& c : centers) REQUIRE(c == Point2{0.4, 0.6});
}

TEST_CASE("sample_centers is reproducible and stays inside the square") {
    const CovarianceSpec cov{0.1, 0.02, 0.15};
    const auto a = sample_centers(200, {0.5, 0.5}, cov, 77);
    const auto b = sample_centers(200, {0.5, 0.5}, cov, 77);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i] == b[i]);
        REQUIRE(in_unit_square(a[i]));
    }
}

TEST_CASE("sample_centers reports hopeless acceptance probability") {
    REQUIRE_THROWS_WITH(sample_centers(1, {50.0, 50.0}, {0.01, 0.0, 0.01}, 1, 50),
                        Catch::Matchers::ContainsSubstring("acceptance probability"));
}

TEST_CASE("raw gaussian stream matches the requested covariance") {
    const std::size_t n = 10000;
    const auto points = sample_gaussian_raw(n, {0.5, 0.5}, {0.1, 0.0, 0.1}, 2025);
    double mx = 0.0, my = 0.0;
    for (const Point2& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double cxx = 0.0, cxy = 0.0, cyy = 0.0;
    for (const Point2& p : points) {
        cxx += (p.x - mx) * (p.x - mx);
        cxy += (p.x - mx) * (p.y - my);
        cyy += (p.y - my) * (p.y - my);
    }
    cxx /= n - 1;
    cxy /= n - 1;
    cyy /= n - 1;
    REQUIRE_THAT(cxx, WithinRel(0.1, 0.10));
    REQUIRE_THAT(cyy, WithinRel(0.1, 0.10));
    REQUIRE(std::abs(cxy) < 0.01);
}

TEST_CASE("anisotropic sprawl spreads along the large-eigenvalue axis") {
    const auto points = sample_centers(2000, {0.5, 0.5}, {0.02, 0.0, 0.7}, 9);
    double mx = 0.0, my = 0.0;
    for (const Point2& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= points.size();
    my /= points.size();
    double vx = 0.0, vy = 0.0;
    for (const Point2& p : points) {
        vx += (p.x - mx) * (p.x - mx);
        vy += (p.y - my) * (p.y - my);
    }
    REQUIRE(vy > vx);
}

TEST_CASE("voronoi_partition of one center is the unit square") {
    const VoronoiDiagram diagram = voronoi_partition({{0.3, 0.7}});
    REQUIRE(diagram.cells.size() == 1);
    REQUIRE_THAT(diagram.cells[0].polygon.area(), WithinAbs(1.0, 1e-12));
    REQUIRE(diagram.interior_edges.empty());
}

TEST_CASE("voronoi_partition of two mirrored centers splits at x = 0.5") {
    const VoronoiDiagram diagram = voronoi_partition({{0.25, 0.5}, {0.75, 0.5}});
    REQUIRE(diagram.cells.size() == 2);
    REQUIRE_THAT(diagram.cells[0].polygon.area(), WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(diagram.cells[1].polygon.area(), WithinAbs(0.5, 1e-12));
    for (const Point2& v : diagram.cells[0].polygon.vertices)
        REQUIRE(v.x <= 0.5 + 1e-12);
    REQUIRE(diagram.interior_edges.size() == 1);
    REQUIRE_THAT(diagram.interior_edges[0].length(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("voronoi_partition of four symmetric centers gives exact quadrants") {
    const VoronoiDiagram diagram = voronoi_partition(
        {{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}});
    REQUIRE(diagram.cells.size() == 4);
    for (const VoronoiCell& cell : diagram.cells) {
        REQUIRE(cell.polygon.vertices.size() == 4);
        REQUIRE(cell.polygon.area() == 0.25);  // exact dyadic arithmetic
        for (const Point2& v : cell.polygon.vertices) {
            REQUIRE((v.x == 0.0 || v.x == 0.5 || v.x == 1.0));
            REQUIRE((v.y == 0.0 || v.y == 0.5 || v.y == 1.0));
        }
    }
    REQUIRE(diagram.interior_edges.size() == 4);
    REQUIRE_THAT(diagram.interior_length(), WithinAbs(2.0, 1e-12));
}

TEST_CASE("voronoi_partition validates centers") {
    REQUIRE_THROWS_AS(voronoi_partition({}), std::invalid_argument);
    REQUIRE_THROWS_AS(voronoi_partition({{1.5, 0.5}}), std::invalid_argument);
    REQUIRE_THROWS_AS(voronoi_partition({{0.5, 0.5}, {0.5, 0.5}}), std::invalid_argument);
}

TEST_CASE("voronoi cells tile the square and honor the nearest-center rule") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.next_below(30);
        std::vector<Point2> centers;
        while (centers.size() < n) {
            const Point2 candidate{0.02 + 0.96 * rng.next_double(),
                                   0.02 + 0.96 * rng.next_double()};
            bool distinct = true;
            for (const Point2& c : centers)
                distinct = distinct && norm(candidate - c) > 1e-3;
            if (distinct) centers.push_back(candidate);
        }
        const VoronoiDiagram diagram = voronoi_partition(centers);

        double area = 0.0;
        for (const VoronoiCell& cell : diagram.cells) {
            area += cell.polygon.area();
            REQUIRE(cell.polygon.contains(cell.center, 1e-12));
        }
        REQUIRE_THAT(area, WithinAbs(1.0, 1e-9));

        for (const InteriorEdge& edge : diagram.interior_edges) {
            const Point2 mid = 0.5 * (edge.a + edge.b);
            REQUIRE_THAT(norm(mid - centers[edge.cell_a]),
                         WithinAbs(norm(mid - centers[edge.cell_b]), 1e-9));
        }

        for (int probe = 0; probe < 100; ++probe) {
            const Point2 point{rng.next_double(), rng.next_double()};
            std::size_t nearest = 0;
            double best = norm(point - centers[0]);
            double second = 1e9;
            for (std::size_t i = 1; i < centers.size(); ++i) {
                const double d = norm(point - centers[i]);
                if (d < best) {
                    second = best;
                    best = d;
                    nearest = i;
                } else {
                    second = std::min(second, d);
                }
            }
            if (second - best <= 1e-9) continue;  // tie, skip
            REQUIRE(diagram.cells[nearest].polygon.contains(point, 1e-9));
        }
    }
}

TEST_CASE("clip_segment against convex polygons") {
    const ConvexPolygon left_half{{{0.0, 0.0}, {0.5, 0.0}, {0.5, 1.0}, {0.0, 1.0}}};
    SECTION("fully inside is unchanged") {
        const auto clipped = clip_segment({0.1, 0.2}, {0.3, 0.4}, left_half);
        REQUIRE(clipped.has_value());
        REQUIRE(clipped->a == Point2{0.1, 0.2});
        REQUIRE(clipped->b == Point2{0.3, 0.4});
        REQUIRE(clipped->fraction == 1.0);
    }
    SECTION("fully outside is empty") {
        REQUIRE_FALSE(clip_segment({0.6, 0.2}, {0.9, 0.8}, left_half).has_value());
    }
    SECTION("horizontal crossing keeps the left part") {
        const auto clipped = clip_segment({0.0, 0.5}, {1.0, 0.5}, left_half);
        REQUIRE(clipped.has_value());
        REQUIRE_THAT(clipped->a.x, WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(clipped->b.x, WithinAbs(0.5, 1e-15));
        REQUIRE_THAT(clipped->fraction, WithinAbs(0.5, 1e-15));
    }
}
