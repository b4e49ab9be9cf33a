#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skeletree {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid polygon input or a violated geometric precondition.
class GeometryError : public Error {
public:
    using Error::Error;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Point2 operator-() const { return {-x, -y}; }
    Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
    Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 a) { return a / norm(a); }
/// Counter-clockwise quarter turn.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline Point2 rotated(Point2 a, double angle)
{
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Distance from p to the closed segment [a, b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Numerical thresholds shared by every module.
///
/// geom_tol is the coincidence/collinearity threshold, verify_tol the
/// tree/skeleton acceptance threshold and solver_tol the root-finding residual.
/// They must satisfy 0 < solver_tol <= geom_tol <= verify_tol < 1.
struct ToleranceConfig {
    double geom_tol = 1e-9;
    double verify_tol = 1e-6;
    double solver_tol = 1e-12;

    /// Throws GeometryError when the ordering invariant is violated.
    void validate() const;

    /// verify_tol = tol, geom_tol = tol / 1e3, solver_tol = tol / 1e6.
    static ToleranceConfig from_verify_tol(double tol);
};

/// Simple counter-clockwise polygon. Only obtainable through validation, so
/// every instance satisfies the polygon invariants.
class Polygon {
public:
    /// Validates and throws GeometryError on failure. Clockwise input is reversed.
    static Polygon from_points(std::vector<Point2> pts, const ToleranceConfig& cfg = {},
                               bool allow_collinear = false);

    std::span<const Point2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }
    const Point2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    /// Edge i runs from vertex i to vertex i+1.
    Point2 edge_start(std::size_t i) const { return vertex(i); }
    Point2 edge_end(std::size_t i) const { return vertex(i + 1); }
    Point2 edge_direction(std::size_t i) const { return normalized(edge_end(i) - edge_start(i)); }
    /// Unit normal pointing into the polygon (left of the edge).
    Point2 inward_normal(std::size_t i) const { return perp(edge_direction(i)); }
    /// Positive inside the polygon, measured from the supporting line of edge i.
    double signed_line_distance(std::size_t i, Point2 p) const
    {
        return dot(p - edge_start(i), inward_normal(i));
    }

    double area() const;
    double perimeter() const;
    bool is_convex() const { return convex_; }
    /// Index of reflex vertices (interior angle > pi).
    std::vector<std::size_t> reflex_vertices() const;

private:
    Polygon() = default;
    friend struct PolygonValidator;

    std::vector<Point2> vertices_;
    bool convex_ = false;
};

struct ValidationReport {
    std::optional<Polygon> polygon;
    /// Empty on success, otherwise names the first violated invariant.
    std::string error;
    std::vector<std::string> notices;
    bool convex = false;

    bool ok() const { return polygon.has_value(); }
};

ValidationReport validate_polygon(std::vector<Point2> vertices, const ToleranceConfig& cfg = {},
                                  bool allow_collinear = false);

/// Signed area (positive for counter-clockwise) of an arbitrary vertex loop.
double signed_area(std::span<const Point2> pts);

/// Minimum over cyclic relabelings, reflections and rigid motions of the
/// maximum vertex distance. Infinity when the vertex counts differ.
double congruence_distance(const Polygon& a, const Polygon& b);

} // namespace skeletree
