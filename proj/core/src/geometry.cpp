#include "ddorbit/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ddorbit {

Vec2 rotate(Vec2 v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {v.x * c - v.y * s, v.x * s + v.y * c};
}

Vec2 ReducedConfig::body(int i) const {
    switch (i) {
        case 1: return q1;
        case 2: return q2;
        case 3: return q3();
        case 4: return q4();
        default: throw std::invalid_argument("body index must be 1..4");
    }
}

ReducedConfig start_config(const StartParams& p) {
    if (p.a1 < 0.0 || p.a2 < 0.0)
        throw std::invalid_argument("start_config: a1, a2 must be >= 0");
    return {{-p.a1 - p.a2, 0.0}, {-p.a1, 0.0}};
}

ReducedConfig end_config_signed(const EndParams& p) {
    return {rotate({-p.b1, -p.b2}, p.theta), rotate({-p.b1, p.b2}, p.theta)};
}

ReducedConfig end_config(const EndParams& p) {
    if (p.b1 < 0.0 || p.b2 < 0.0)
        throw std::invalid_argument("end_config: b1, b2 must be >= 0");
    return end_config_signed(p);
}

namespace {

// Componentwise |actual - rebuilt| <= tol against the constructor output.
bool config_close(const ReducedConfig& a, const ReducedConfig& b, double tol) {
    return std::fabs(a.q1.x - b.q1.x) <= tol && std::fabs(a.q1.y - b.q1.y) <= tol &&
           std::fabs(a.q2.x - b.q2.x) <= tol && std::fabs(a.q2.y - b.q2.y) <= tol;
}

}  // namespace

Membership membership(const ReducedConfig& c, BoundaryFamily family,
                      double theta, double tol) {
    Membership m;
    if (family == BoundaryFamily::CollinearAxis) {
        // q2 = (-a1, 0), q1 = (-a1-a2, 0)
        double a1 = -c.q2.x;
        double a2 = c.q2.x - c.q1.x;
        if (a1 < -tol || a2 < -tol) return m;
        a1 = std::max(a1, 0.0);
        a2 = std::max(a2, 0.0);
        ReducedConfig rebuilt = start_config({a1, a2});
        m.ok = config_close(c, rebuilt, tol);
        m.p1 = a1;
        m.p2 = a2;
        return m;
    }
    // Un-rotate, then q1' = (-b1, -b2), q2' = (-b1, b2).
    Vec2 u1 = rotate(c.q1, -theta);
    Vec2 u2 = rotate(c.q2, -theta);
    double b1 = 0.5 * (-u1.x - u2.x);
    double b2 = 0.5 * (u2.y - u1.y);
    if (family == BoundaryFamily::RotatedRectangle) {
        if (b1 < -tol || b2 < -tol) return m;
        b1 = std::max(b1, 0.0);
        b2 = std::max(b2, 0.0);
    }
    ReducedConfig rebuilt = end_config_signed({b1, b2, theta});
    m.ok = config_close(c, rebuilt, tol);
    m.p1 = b1;
    m.p2 = b2;
    return m;
}

}  // namespace ddorbit
