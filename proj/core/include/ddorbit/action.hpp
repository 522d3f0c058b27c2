#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ddorbit/geometry.hpp"

namespace ddorbit {

/// Piecewise-linear path of the reduced configuration on a uniform time grid.
struct DiscretePath {
    double t_start = 0.0;
    double t_end = 1.0;
    std::vector<ReducedConfig> nodes;  // size segments()+1

    int segments() const { return static_cast<int>(nodes.size()) - 1; }
    double dt() const { return (t_end - t_start) / segments(); }

    /// Linear interpolation; t clamped to [t_start, t_end].
    ReducedConfig at(double t) const;
};

/// Per-binary decomposition of the action of a path. Each aXY term carries
/// its own kinetic share; total = a12+a13+a14+a23 = kinetic + potential.
struct ActionBreakdown {
    double total = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double a12 = 0.0;  // pair (1,2): quarter relative kinetic + 2/|q1-q2|
    double a13 = 0.0;  // pair (1,3): quarter kinetic of q1+q2 + 2/|q1+q2|
    double a14 = 0.0;  // pair (1,4): half kinetic of q1 + 1/(2|q1|)
    double a23 = 0.0;  // pair (2,3): half kinetic of q2 + 1/(2|q2|)
};

/// A segment of some interbody vector passes within 1e-12 of the origin.
class CollisionSingularity : public std::runtime_error {
public:
    CollisionSingularity(const std::string& pair, int segment);
    std::string pair;
    int segment;
};

/// Segment with zero relative displacement fed to the log closed form.
class DegenerateSegment : public std::runtime_error {
public:
    DegenerateSegment() : std::runtime_error(
        "segment_log_integral: zero displacement (b,d); use the constant formula") {}
};

/// Exact integral(0..1) du / |(a+b u, c+d u)| for a linearly interpolated
/// planar vector. Throws DegenerateSegment when (b,d) = (0,0) and
/// CollisionSingularity when the segment passes within 1e-12 of the origin.
double segment_log_integral(double a, double b, double c, double d);

/// Exact integral of dt/|p(t)| over one segment of duration dt where p
/// interpolates p0 -> p1 linearly. Near-zero displacements fall back to a
/// constant-integrand evaluation at the midpoint.
double pair_segment_potential(Vec2 p0, Vec2 p1, double dt);

/// Minimum of |p0 + u (p1 - p0)| over u in [0,1].
double segment_min_distance(Vec2 p0, Vec2 p1);

/// Exact kinetic integral of the interpolated path:
/// sum over segments of (|dq1|^2 + |dq2|^2) / dt.
double path_kinetic(const DiscretePath& path);

/// Exact action of the interpolated path, with per-binary breakdown.
ActionBreakdown path_action(const DiscretePath& path);

/// Softened segment potential integral(0..1) du / sqrt(|p(u)|^2 + eps^2)
/// together with its partial derivatives in the endpoints. eps = 0 gives the
/// exact integrand (collision checked); eps > 0 never throws.
struct SegmentIntegral {
    double value = 0.0;
    Vec2 d_p0, d_p1;
};
SegmentIntegral segment_potential_gradient(Vec2 p0, Vec2 p1, double eps);

}  // namespace ddorbit
