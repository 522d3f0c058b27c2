#pragma once

#include <cmath>
#include <cstddef>

namespace ddorbit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Planar rotation acting on row vectors from the right:
/// (x, y) R(theta) = (x cos - y sin, x sin + y cos).
/// All rotation conventions in this library go through here.
Vec2 rotate(Vec2 v, double theta);

/// Reflection across the horizontal axis, (x, y) -> (x, -y).
inline Vec2 reflect_x(Vec2 v) { return {v.x, -v.y}; }

/// Positions of the two independent bodies; the other two are the
/// central reflections q3 = -q2, q4 = -q1 (parallelogram symmetry).
struct ReducedConfig {
    Vec2 q1, q2;

    Vec2 q3() const { return -q2; }
    Vec2 q4() const { return -q1; }
    Vec2 body(int i) const;  // i in 1..4
};

/// Start line: all four bodies on the horizontal axis,
/// q1 = (-a1-a2, 0), q2 = (-a1, 0), ordered q1 <= q2 <= q3 <= q4.
struct StartParams {
    double a1 = 0.0;
    double a2 = 0.0;
};

/// End rectangle rotated by theta:
/// q1 = (-b1, -b2) R(theta), q2 = (-b1, b2) R(theta).
struct EndParams {
    double b1 = 0.0;
    double b2 = 0.0;
    double theta = 0.0;
};

/// Throws std::invalid_argument if a1 < 0 or a2 < 0.
ReducedConfig start_config(const StartParams& p);

/// Throws std::invalid_argument if b1 < 0 or b2 < 0.
ReducedConfig end_config(const EndParams& p);

/// Signed variant: b1, b2 unrestricted (degenerate rectangles allowed).
ReducedConfig end_config_signed(const EndParams& p);

enum class BoundaryFamily {
    CollinearAxis,           // start line, a1, a2 >= 0
    RotatedRectangle,        // rotated rectangle, b1, b2 >= 0
    RotatedRectangleSigned,  // rotated rectangle, b1, b2 unrestricted
};

struct Membership {
    bool ok = false;
    double p1 = 0.0;  // recovered a1 or b1
    double p2 = 0.0;  // recovered a2 or b2
};

/// Tests whether a configuration matches the parametric form of the given
/// boundary family within a componentwise absolute tolerance, and recovers
/// the parameters. theta is ignored for the collinear family.
Membership membership(const ReducedConfig& c, BoundaryFamily family,
                      double theta, double tol);

}  // namespace ddorbit
