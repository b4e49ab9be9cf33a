#include "skeletree/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace skeletree {

double point_segment_distance(Point2 p, Point2 a, Point2 b)
{
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * s);
}

void ToleranceConfig::validate() const
{
    if (!(solver_tol > 0.0 && solver_tol <= geom_tol && geom_tol <= verify_tol && verify_tol < 1.0))
        throw GeometryError("tolerances must satisfy 0 < solver_tol <= geom_tol <= verify_tol < 1");
}

ToleranceConfig ToleranceConfig::from_verify_tol(double tol)
{
    ToleranceConfig cfg{tol / 1e3, tol, tol / 1e6};
    cfg.validate();
    return cfg;
}

double signed_area(std::span<const Point2> pts)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        twice += cross(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * twice;
}

double Polygon::area() const { return signed_area(vertices_); }

double Polygon::perimeter() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i) sum += distance(edge_start(i), edge_end(i));
    return sum;
}

std::vector<std::size_t> Polygon::reflex_vertices() const
{
    std::vector<std::size_t> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 din = vertex(i) - vertex(i + n - 1);
        const Point2 dout = vertex(i + 1) - vertex(i);
        if (cross(din, dout) < 0.0) out.push_back(i);
    }
    return out;
}

namespace {

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d, double tol)
{
    // Proper crossing, or touching within tol.
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return point_segment_distance(c, a, b) <= tol || point_segment_distance(d, a, b) <= tol ||
           point_segment_distance(a, c, d) <= tol || point_segment_distance(b, c, d) <= tol;
}

} // namespace

struct PolygonValidator {
    static ValidationReport run(std::vector<Point2> pts, const ToleranceConfig& cfg, bool allow_collinear)
    {
        ValidationReport report;
        const std::size_t n = pts.size();
        if (n < 3) {
            report.error = "polygon needs at least 3 vertices";
            return report;
        }
        for (const auto& p : pts) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                report.error = "non-finite coordinate";
                return report;
            }
        }

        double extent = 0.0;
        for (const auto& p : pts) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
        const double tol = cfg.geom_tol * std::max(1.0, extent);

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (distance(pts[i], pts[j]) <= tol) {
                    report.error = "duplicate vertex " + std::to_string(i) + " and " + std::to_string(j);
                    return report;
                }

        if (signed_area(pts) < 0.0) {
            std::reverse(pts.begin(), pts.end());
            report.notices.push_back("clockwise input reversed to counter-clockwise");
        }

        for (std::size_t i = 0; i < n; ++i) {
            const Point2 prev = pts[(i + n - 1) % n], cur = pts[i], next = pts[(i + 1) % n];
            const Point2 din = normalized(cur - prev), dout = normalized(next - cur);
            const double c = cross(din, dout);
            if (std::abs(c) <= cfg.geom_tol) {
                if (dot(din, dout) < 0.0) {
                    report.error = "self-intersection: edges fold back at vertex " + std::to_string(i);
                    return report;
                }
                if (!allow_collinear) {
                    report.error = "collinear consecutive edges at vertex " + std::to_string(i);
                    return report;
                }
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n], tol)) {
                    report.error = "self-intersection between edges " + std::to_string(i) + " and " +
                                   std::to_string(j);
                    return report;
                }
            }
        }
        if (signed_area(pts) <= 0.0) {
            report.error = "degenerate polygon with zero area";
            return report;
        }

        bool convex = true;
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 din = pts[i] - pts[(i + n - 1) % n], dout = pts[(i + 1) % n] - pts[i];
            if (cross(din, dout) < 0.0) convex = false;
        }

        Polygon poly;
        poly.vertices_ = std::move(pts);
        poly.convex_ = convex;
        report.convex = convex;
        report.polygon = std::move(poly);
        return report;
    }
};

ValidationReport validate_polygon(std::vector<Point2> vertices, const ToleranceConfig& cfg, bool allow_collinear)
{
    return PolygonValidator::run(std::move(vertices), cfg, allow_collinear);
}

Polygon Polygon::from_points(std::vector<Point2> pts, const ToleranceConfig& cfg, bool allow_collinear)
{
    auto report = validate_polygon(std::move(pts), cfg, allow_collinear);
    if (!report.ok()) throw GeometryError(report.error);
    return std::move(*report.polygon);
}

namespace {

// Max vertex distance after the least-squares rigid alignment of a onto b
// (both already centered, a[i] paired with b[i]).
double aligned_max_distance(const std::vector<Point2>& a, const std::vector<Point2>& b)
{
    double sdot = 0.0, scross = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sdot += dot(a[i], b[i]);
        scross += cross(a[i], b[i]);
    }
    const double angle = std::atan2(scross, sdot);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, distance(rotated(a[i], angle), b[i]));
    return worst;
}

std::vector<Point2> centered(std::span<const Point2> pts)
{
    Point2 c;
    for (const auto& p : pts) c += p;
    c = c / static_cast<double>(pts.size());
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(p - c);
    return out;
}

} // namespace

double congruence_distance(const Polygon& a, const Polygon& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    const auto ca = centered(a.vertices());
    const auto cb = centered(b.vertices());

    // Mirror image of b, re-ordered to stay counter-clockwise.
    std::vector<Point2> mb(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = cb[(n - i) % n];
        mb[i] = {p.x, -p.y};
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<Point2> shifted(n);
    for (const std::vector<Point2>* target : {&cb, static_cast<const std::vector<Point2>*>(&mb)}) {
        for (std::size_t off = 0; off < n; ++off) {
            for (std::size_t i = 0; i < n; ++i) shifted[i] = (*target)[(i + off) % n];
            best = std::min(best, aligned_max_distance(ca, shifted));
        }
    }
    return best;
}

} // namespace skeletree
