#include "factplan/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace factplan {

Vec2 Rect::clamp(Vec2 p) const { return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)}; }

double Rect::distance_to(Vec2 p) const { return norm(p - clamp(p)); }

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    }
    return norm(p - (a + t * ab));
}

bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r) {
    // Liang-Barsky clipping against the closed box.
    double t0 = 0.0;
    double t1 = 1.0;
    const Vec2 d = b - a;
    const std::array<double, 4> p{-d.x, d.x, -d.y, d.y};
    const std::array<double, 4> q{a.x - r.lo.x, r.hi.x - a.x, a.y - r.lo.y, r.hi.y - a.y};
    for (std::size_t i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) {
                return false;
            }
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
        if (t0 > t1) {
            return false;
        }
    }
    return true;
}

double segment_rect_distance(Vec2 a, Vec2 b, const Rect& r) {
    if (segment_intersects_rect(a, b, r)) {
        return 0.0;
    }
    // Disjoint convex sets: the closest pair involves a vertex of one of them.
    double best = std::min(r.distance_to(a), r.distance_to(b));
    const std::array<Vec2, 4> corners{r.lo, Vec2{r.hi.x, r.lo.y}, r.hi, Vec2{r.lo.x, r.hi.y}};
    for (auto c : corners) {
        best = std::min(best, point_segment_distance(c, a, b));
    }
    return best;
}

double min_sq_distance_linear_motion(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1) {
    const Vec2 rel0 = p0 - q0;
    const Vec2 vel = (p1 - q1) - rel0;
    const double a = dot(vel, vel);
    double tau = 0.0;
    if (a > 0.0) {
        tau = std::clamp(-dot(rel0, vel) / a, 0.0, 1.0);
    }
    const Vec2 at = rel0 + tau * vel;
    const Vec2 end = p1 - q1;
    return std::min({dot(at, at), dot(rel0, rel0), dot(end, end)});
}

bool polygon_contains(const ConvexPolygon& poly, Vec2 p, double tol) {
    if (poly.size() < 3) {
        return false;
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % poly.size()];
        const Vec2 e = b - a;
        const double len = norm(e);
        if (len == 0.0) {
            continue;
        }
        if (cross(e, p - a) / len < -tol) {
            return false;
        }
    }
    return true;
}

ConvexPolygon clip_to_rect(const ConvexPolygon& poly, const Rect& r) {
    // Sutherland-Hodgman against the four half-planes of the box.
    ConvexPolygon out = poly;
    const auto clip = [&out](auto inside, auto intersect) {
        ConvexPolygon in = std::move(out);
        out.clear();
        for (std::size_t i = 0; i < in.size(); ++i) {
            const Vec2 cur = in[i];
            const Vec2 prev = in[(i + in.size() - 1) % in.size()];
            const bool cur_in = inside(cur);
            const bool prev_in = inside(prev);
            if (cur_in) {
                if (!prev_in) {
                    out.push_back(intersect(prev, cur));
                }
                out.push_back(cur);
            } else if (prev_in) {
                out.push_back(intersect(prev, cur));
            }
        }
    };
    const auto at_x = [](double x) {
        return [x](Vec2 a, Vec2 b) { return Vec2{x, a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)}; };
    };
    const auto at_y = [](double y) {
        return [y](Vec2 a, Vec2 b) { return Vec2{a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y), y}; };
    };
    clip([&](Vec2 p) { return p.x >= r.lo.x; }, at_x(r.lo.x));
    clip([&](Vec2 p) { return p.x <= r.hi.x; }, at_x(r.hi.x));
    clip([&](Vec2 p) { return p.y >= r.lo.y; }, at_y(r.lo.y));
    clip([&](Vec2 p) { return p.y <= r.hi.y; }, at_y(r.hi.y));
    return out;
}

namespace {

// Separating axis test on the edge normals of `a`.
bool separated_by_edges_of(const ConvexPolygon& a, const ConvexPolygon& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec2 p = a[i];
        const Vec2 e = a[(i + 1) % a.size()] - p;
        bool all_outside = true;
        for (auto v : b) {
            if (cross(e, v - p) >= 0.0) {
                all_outside = false;
                break;
            }
        }
        if (all_outside) {
            return true;
        }
    }
    return false;
}

}  // namespace

double polygon_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() || b.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() >= 3 && b.size() >= 3 && !separated_by_edges_of(a, b) && !separated_by_edges_of(b, a)) {
        return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec2 a0 = a[i];
        const Vec2 a1 = a[(i + 1) % a.size()];
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Vec2 b0 = b[j];
            const Vec2 b1 = b[(j + 1) % b.size()];
            best = std::min({best, point_segment_distance(a0, b0, b1), point_segment_distance(b0, a0, a1)});
        }
    }
    return best;
}

}  // namespace factplan
