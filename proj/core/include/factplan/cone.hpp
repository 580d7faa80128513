#pragma once

#include <numbers>

#include "factplan/geometry.hpp"

namespace factplan {

inline constexpr double kDefaultConeHalfAngle = std::numbers::pi / 8.0;

/// Goal-directed region of one agent: the isosceles triangle around the beeline
/// from `apex` toward the goal-region centre, long enough to pass the goal
/// region, clipped to the workspace. An agent sitting on its goal centre gets a
/// polygon circumscribing the disc that covers its goal region instead.
struct Cone {
    Vec2 apex;
    Vec2 axis{1.0, 0.0};
    double half_angle = kDefaultConeHalfAngle;
    double length = 0.0;
    bool degenerate = false;
    ConvexPolygon region;

    [[nodiscard]] bool contains(Vec2 p, double tol = 1e-12) const { return polygon_contains(region, p, tol); }
};

Cone make_cone(Vec2 position, const Rect& goal, const Rect& bounds, double half_angle = kDefaultConeHalfAngle);

}  // namespace factplan
