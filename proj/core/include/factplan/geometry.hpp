#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace factplan {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec2 to_vec2(std::span<const double> xy) { return {xy[0], xy[1]}; }

/// Closed axis-aligned rectangle.
struct Rect {
    Vec2 lo;
    Vec2 hi;

    [[nodiscard]] bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
    [[nodiscard]] Vec2 center() const { return 0.5 * (lo + hi); }
    [[nodiscard]] double width() const { return hi.x - lo.x; }
    [[nodiscard]] double height() const { return hi.y - lo.y; }
    [[nodiscard]] double half_diagonal() const { return 0.5 * std::hypot(width(), height()); }
    [[nodiscard]] bool valid() const { return hi.x > lo.x && hi.y > lo.y; }
    [[nodiscard]] Vec2 clamp(Vec2 p) const;
    [[nodiscard]] double distance_to(Vec2 p) const;

    friend bool operator==(const Rect&, const Rect&) = default;
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// True if the closed segment [a, b] touches the closed rectangle.
bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r);

/// Exact Euclidean distance between a segment and a rectangle (0 when they touch).
double segment_rect_distance(Vec2 a, Vec2 b, const Rect& r);

/// Minimum over tau in [0,1] of |(p0 + tau (p1 - p0)) - (q0 + tau (q1 - q0))|^2.
double min_sq_distance_linear_motion(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1);

/// Convex polygon, vertices counter-clockwise.
using ConvexPolygon = std::vector<Vec2>;

bool polygon_contains(const ConvexPolygon& poly, Vec2 p, double tol = 1e-12);
ConvexPolygon clip_to_rect(const ConvexPolygon& poly, const Rect& r);
/// Euclidean distance between two convex polygons (0 if they overlap or touch).
double polygon_distance(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace factplan
