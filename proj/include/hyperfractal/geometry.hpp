#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfractal/rng.hpp"

namespace hyperfractal {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }

/// Symmetric 2x2 covariance [[sxx, sxy], [sxy, syy]], positive semidefinite
/// within tolerance.
struct CovarianceSpec {
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
};

inline constexpr double kPsdTolerance = 1e-12;

/// Sigma = Q diag(lambda1, lambda2) Q^T with lambda1 >= lambda2 >= 0 and
/// orthonormal columns. Sign convention: the first nonzero component of each
/// column is positive; a repeated eigenvalue returns the identity basis.
struct EigenDecomposition {
    Point2 axis_major;  // first column of Q, eigenvector of lambda1
    Point2 axis_minor;  // second column of Q
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

namespace detail {

inline void validate(const CovarianceSpec& cov) {
    if (!std::isfinite(cov.sxx) || !std::isfinite(cov.sxy) || !std::isfinite(cov.syy))
        throw std::invalid_argument("CovarianceSpec: non-finite entry");
    if (cov.sxx < 0.0 || cov.syy < 0.0 ||
        cov.sxx * cov.syy - cov.sxy * cov.sxy < -kPsdTolerance)
        throw std::invalid_argument("CovarianceSpec: not positive semidefinite");
}

inline Point2 fix_sign(Point2 v) {
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) return {-v.x, -v.y};
    return v;
}

}  // namespace detail

inline EigenDecomposition eigen_decompose(const CovarianceSpec& cov) {
    detail::validate(cov);
    const double half_trace = 0.5 * (cov.sxx + cov.syy);
    const double half_gap = 0.5 * (cov.sxx - cov.syy);
    const double disc = std::hypot(half_gap, cov.sxy);
    double lambda1 = half_trace + disc;
    double lambda2 = half_trace - disc;
    if (lambda2 < -kPsdTolerance)
        throw std::invalid_argument("eigen_decompose: negative eigenvalue beyond tolerance");
    lambda1 = std::max(lambda1, 0.0);
    lambda2 = std::max(lambda2, 0.0);

    if (cov.sxy == 0.0) {
        if (cov.sxx == cov.syy)
            return {{1.0, 0.0}, {0.0, 1.0}, lambda1, lambda2};
        if (cov.sxx >= cov.syy)
            return {{1.0, 0.0}, {0.0, 1.0}, lambda1, lambda2};
        return {{0.0, 1.0}, {1.0, 0.0}, lambda1, lambda2};
    }

    // Eigenvector of lambda1: (sxy, lambda1 - sxx) and (lambda1 - syy, sxy)
    // are parallel; pick the longer to avoid cancellation.
    Point2 v1{cov.sxy, lambda1 - cov.sxx};
    Point2 v2{lambda1 - cov.syy, cov.sxy};
    Point2 major = dot(v1, v1) >= dot(v2, v2) ? v1 : v2;
    const double len = norm(major);
    major = (1.0 / len) * major;
    major = detail::fix_sign(major);
    const Point2 minor = detail::fix_sign(perp(major));
    return {major, minor, lambda1, lambda2};
}

/// Reconstructs Q diag(lambda) Q^T; used by tests and kept next to the
/// decomposition so the two stay in sync.
inline CovarianceSpec reconstruct(const EigenDecomposition& eig) {
    const Point2 u = eig.axis_major;
    const Point2 v = eig.axis_minor;
    return {eig.lambda1 * u.x * u.x + eig.lambda2 * v.x * v.x,
            eig.lambda1 * u.x * u.y + eig.lambda2 * v.x * v.y,
            eig.lambda1 * u.y * u.y + eig.lambda2 * v.y * v.y};
}

/// The untruncated Gaussian stream: point i is mean + Q sqrt(Lambda) z_i with
/// z_i a standard normal pair. sample_centers filters this exact stream, so
/// statistical checks can run on the unrejected draws.
inline std::vector<Point2> sample_gaussian_raw(std::size_t n, Point2 mean,
                                               const CovarianceSpec& cov,
                                               std::uint64_t seed) {
    const EigenDecomposition eig = eigen_decompose(cov);
    const double s1 = std::sqrt(eig.lambda1);
    const double s2 = std::sqrt(eig.lambda2);
    Rng rng(derive_stream(seed, kStreamCenters));
    std::vector<Point2> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [z1, z2] = rng.next_gaussian_pair();
        points.push_back(mean + (s1 * z1) * eig.axis_major + (s2 * z2) * eig.axis_minor);
    }
    return points;
}

inline bool in_unit_square(Point2 p) {
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

/// n district centers from N(mean, cov) truncated to the unit square by
/// rejection. Deterministic given the seed; throws after max_rejects
/// consecutive rejections (the acceptance probability is too small, e.g. the
/// mean lies far outside the square).
inline std::vector<Point2> sample_centers(std::size_t n, Point2 mean,
                                          const CovarianceSpec& cov, std::uint64_t seed,
                                          std::size_t max_rejects = 100000) {
    if (n < 1) throw std::invalid_argument("sample_centers: n must be >= 1");
    const EigenDecomposition eig = eigen_decompose(cov);
    const double s1 = std::sqrt(eig.lambda1);
    const double s2 = std::sqrt(eig.lambda2);
    Rng rng(derive_stream(seed, kStreamCenters));
    std::vector<Point2> points;
    points.reserve(n);
    std::size_t consecutive_rejects = 0;
    while (points.size() < n) {
        const auto [z1, z2] = rng.next_gaussian_pair();
        const Point2 candidate =
            mean + (s1 * z1) * eig.axis_major + (s2 * z2) * eig.axis_minor;
        if (in_unit_square(candidate)) {
            points.push_back(candidate);
            consecutive_rejects = 0;
        } else if (++consecutive_rejects > max_rejects) {
            throw std::runtime_error(
                "sample_centers: exceeded " + std::to_string(max_rejects) +
                " consecutive rejections; the acceptance probability of the truncated "
                "Gaussian is too small (is the mean inside the unit square?)");
        }
    }
    return points;
}

/// Counter-clockwise convex polygon. Construction cleans up duplicate and
/// collinear vertices.
struct ConvexPolygon {
    std::vector<Point2> vertices;

    double area() const {
        double total = 0.0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Point2 a = vertices[i];
            const Point2 b = vertices[(i + 1) % vertices.size()];
            total += cross(a, b);
        }
        return 0.5 * total;
    }

    bool contains(Point2 p, double tol = 1e-9) const {
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Point2 a = vertices[i];
            const Point2 b = vertices[(i + 1) % vertices.size()];
            if (cross(b - a, p - a) < -tol) return false;
        }
        return !vertices.empty();
    }
};

namespace detail {

inline ConvexPolygon cleanup_polygon(std::vector<Point2> raw) {
    constexpr double kVertexTol = 1e-12;
    std::vector<Point2> out;
    for (const Point2& p : raw) {
        if (!out.empty() && norm(p - out.back()) <= kVertexTol) continue;
        out.push_back(p);
    }
    while (out.size() > 1 && norm(out.front() - out.back()) <= kVertexTol) out.pop_back();
    if (out.size() < 3) return ConvexPolygon{{}};
    std::vector<Point2> cleaned;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Point2 prev = out[(i + out.size() - 1) % out.size()];
        const Point2 cur = out[i];
        const Point2 next = out[(i + 1) % out.size()];
        if (std::abs(cross(cur - prev, next - cur)) <= kVertexTol) continue;
        cleaned.push_back(cur);
    }
    if (cleaned.size() < 3) return ConvexPolygon{{}};
    return ConvexPolygon{std::move(cleaned)};
}

/// Sutherland-Hodgman clip against the half-plane dot(n, x) <= d.
inline std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, Point2 n,
                                          double d) {
    std::vector<Point2> out;
    const std::size_t count = poly.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % count];
        const double fa = dot(n, a) - d;
        const double fb = dot(n, b) - d;
        if (fa <= 0.0) out.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            const double t = fa / (fa - fb);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

}  // namespace detail

inline ConvexPolygon unit_square_polygon() {
    return ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
}

struct ClippedSegment {
    Point2 a;
    Point2 b;
    double fraction;  // clipped length / original length
};

/// Intersection of segment [a,b] with a convex polygon; a single sub-segment
/// or nothing.
inline std::optional<ClippedSegment> clip_segment(Point2 a, Point2 b,
                                                  const ConvexPolygon& poly) {
    if (poly.vertices.size() < 3) return std::nullopt;
    const Point2 d = b - a;
    if (d.x == 0.0 && d.y == 0.0)
        return poly.contains(a, 0.0) ? std::optional<ClippedSegment>({a, a, 1.0})
                                     : std::nullopt;
    double t0 = 0.0;
    double t1 = 1.0;
    const std::size_t count = poly.vertices.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Point2 v0 = poly.vertices[i];
        const Point2 v1 = poly.vertices[(i + 1) % count];
        const Point2 edge = v1 - v0;
        // interior is the left side of each CCW edge
        const double fa = cross(edge, a - v0);
        const double fb = cross(edge, b - v0);
        if (fa < 0.0 && fb < 0.0) return std::nullopt;
        if (fa < 0.0)
            t0 = std::max(t0, fa / (fa - fb));
        else if (fb < 0.0)
            t1 = std::min(t1, fa / (fa - fb));
        if (t0 > t1) return std::nullopt;
    }
    return ClippedSegment{a + t0 * d, a + t1 * d, t1 - t0};
}

struct VoronoiCell {
    Point2 center;
    ConvexPolygon polygon;
};

/// Edge shared by exactly two cells; lies on the perpendicular bisector of
/// their centers.
struct InteriorEdge {
    std::size_t cell_a;
    std::size_t cell_b;
    Point2 a;
    Point2 b;

    double length() const { return norm(b - a); }
};

struct VoronoiDiagram {
    std::vector<VoronoiCell> cells;
    std::vector<InteriorEdge> interior_edges;

    double interior_length() const {
        double total = 0.0;
        for (const InteriorEdge& e : interior_edges) total += e.length();
        return total;
    }
};

inline constexpr double kMinCenterSeparation = 1e-9;

/// Voronoi tessellation of the unit square by iterative half-plane clipping:
/// cell i is the square intersected with the bisector half-planes toward
/// every other center. O(n^2) per cell, fine for the district counts here.
inline VoronoiDiagram voronoi_partition(const std::vector<Point2>& centers) {
    const std::size_t n = centers.size();
    if (n < 1) throw std::invalid_argument("voronoi_partition: need at least one center");
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 c = centers[i];
        if (!(c.x > 0.0 && c.x < 1.0 && c.y > 0.0 && c.y < 1.0))
            throw std::invalid_argument("voronoi_partition: center " + std::to_string(i) +
                                        " outside the unit square");
        for (std::size_t j = i + 1; j < n; ++j)
            if (norm(c - centers[j]) < kMinCenterSeparation)
                throw std::invalid_argument("voronoi_partition: centers " +
                                            std::to_string(i) + " and " + std::to_string(j) +
                                            " coincide");
    }

    VoronoiDiagram diagram;
    diagram.cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Point2> poly = unit_square_polygon().vertices;
        for (std::size_t j = 0; j < n && !poly.empty(); ++j) {
            if (j == i) continue;
            const Point2 normal = centers[j] - centers[i];
            const double d = dot(normal, 0.5 * (centers[i] + centers[j]));
            poly = detail::clip_halfplane(poly, normal, d);
        }
        ConvexPolygon cell = detail::cleanup_polygon(std::move(poly));
        if (cell.vertices.size() < 3)
            throw std::runtime_error("voronoi_partition: degenerate cell for center " +
                                     std::to_string(i));
        diagram.cells.push_back(VoronoiCell{centers[i], std::move(cell)});
    }

    // Shared edges: the chord of cell i cut by the (i,j) bisector line.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 mid = 0.5 * (centers[i] + centers[j]);
            const Point2 normal = centers[j] - centers[i];
            const Point2 dir = (1.0 / norm(normal)) * perp(normal);
            const Point2 far_a = mid - 2.0 * dir;
            const Point2 far_b = mid + 2.0 * dir;
            const auto chord = clip_segment(far_a, far_b, diagram.cells[i].polygon);
            if (chord && norm(chord->b - chord->a) > 1e-9)
                diagram.interior_edges.push_back(InteriorEdge{i, j, chord->a, chord->b});
        }
    }
    return diagram;
}

}  // namespace hyperfractal
