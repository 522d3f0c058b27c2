#include "ddorbit/action.hpp"

#include <algorithm>
#include <cmath>

namespace ddorbit {

namespace {

constexpr double kCollisionDist = 1e-12;   // center passes closer than this: singular
constexpr double kDegenerateG = 1e-24;     // |displacement|^2 below this: constant branch

// Shared quantities of the integrand 1/sqrt((a+bu)^2 + (c+du)^2 + eps^2).
// x(u) = (g u + e)/sqrt(g) is the signed projection along the displacement,
// rho(u)^2 = x(u)^2 + h^2 with h^2 = Delta/g the squared line-origin distance.
struct SegGeom {
    double g, e, f;      // f includes eps^2
    double sg;           // sqrt(g)
    double rho0, rho1;   // |p(0)|, |p(1)| (softened)
    double x0, x1;
    double delta;        // (ad-bc)^2 + eps^2 g, cancellation-free
};

SegGeom seg_geom(double a, double b, double c, double d, double eps) {
    SegGeom s;
    s.g = b * b + d * d;
    s.e = a * b + c * d;
    s.f = a * a + c * c + eps * eps;
    s.sg = std::sqrt(s.g);
    s.rho0 = std::sqrt(s.f);
    s.rho1 = std::sqrt((a + b) * (a + b) + (c + d) * (c + d) + eps * eps);
    s.x0 = s.e / s.sg;
    s.x1 = (s.g + s.e) / s.sg;
    double cr = a * d - b * c;
    s.delta = cr * cr + eps * eps * s.g;
    return s;
}

// Stable log form: (1/sqrt(g)) ln((x1+rho1)/(x0+rho0)). Negative x sides are
// rewritten via x+rho = h^2/(rho-x); when both ends are negative h^2 cancels.
double log_form(const SegGeom& s) {
    double ratio;
    if (s.x0 >= 0.0) {
        ratio = (s.x1 + s.rho1) / (s.x0 + s.rho0);
    } else if (s.x1 < 0.0) {
        ratio = (s.rho0 - s.x0) / (s.rho1 - s.x1);
    } else {
        double h2 = s.delta / s.g;
        ratio = (s.x1 + s.rho1) * (s.rho0 - s.x0) / h2;
    }
    return std::log(ratio) / s.sg;
}

double min_distance(const SegGeom& s) {
    double ustar = -s.e / s.g;
    if (ustar >= 0.0 && ustar <= 1.0) return std::sqrt(s.delta / s.g);
    return std::min(s.rho0, s.rho1);
}

}  // namespace

CollisionSingularity::CollisionSingularity(const std::string& pair_, int segment_)
    : std::runtime_error("collision singularity on pair " + pair_ +
                         ", segment " + std::to_string(segment_)),
      pair(pair_), segment(segment_) {}

double segment_log_integral(double a, double b, double c, double d) {
    SegGeom s = seg_geom(a, b, c, d, 0.0);
    if (s.g == 0.0) throw DegenerateSegment();
    if (min_distance(s) < kCollisionDist) throw CollisionSingularity("segment", -1);
    return log_form(s);
}

double segment_min_distance(Vec2 p0, Vec2 p1) {
    Vec2 d = p1 - p0;
    SegGeom s = seg_geom(p0.x, d.x, p0.y, d.y, 0.0);
    if (s.g == 0.0) return p0.norm();
    return min_distance(s);
}

double pair_segment_potential(Vec2 p0, Vec2 p1, double dt) {
    Vec2 d = p1 - p0;
    double g = d.norm2();
    if (g < kDegenerateG) {
        if (segment_min_distance(p0, p1) < kCollisionDist)
            throw CollisionSingularity("segment", -1);
        Vec2 m = (p0 + p1) * 0.5;
        return dt / m.norm();
    }
    return dt * segment_log_integral(p0.x, d.x, p0.y, d.y);
}

SegmentIntegral segment_potential_gradient(Vec2 p0, Vec2 p1, double eps) {
    const double a = p0.x, c = p0.y;
    const double b = p1.x - p0.x, d = p1.y - p0.y;
    SegGeom s = seg_geom(a, b, c, d, eps);

    SegmentIntegral out;
    if (s.g < kDegenerateG * std::max(1.0, s.f)) {
        // constant integrand at the midpoint
        Vec2 m = (p0 + p1) * 0.5;
        double rm2 = m.norm2() + eps * eps;
        double rm = std::sqrt(rm2);
        if (eps == 0.0 && rm < kCollisionDist)
            throw CollisionSingularity("segment", -1);
        out.value = 1.0 / rm;
        Vec2 dm = m * (-0.5 / (rm2 * rm));
        out.d_p0 = dm;
        out.d_p1 = dm;
        return out;
    }
    if (eps == 0.0 && min_distance(s) < kCollisionDist)
        throw CollisionSingularity("segment", -1);

    out.value = log_form(s);

    // J_m = integral(0..1) u^m rho^-3 du
    double J0;
    if (s.x0 < 0.0 && s.x1 >= 0.0) {
        J0 = (s.x1 / s.rho1 - s.x0 / s.rho0) * s.sg / s.delta;
    } else {
        // same-sign ends: numerator rho1^2 - rho0^2 = g + 2e exactly
        J0 = (s.g + 2.0 * s.e) /
             (s.sg * s.rho0 * s.rho1 * (s.x1 * s.rho0 + s.x0 * s.rho1));
    }
    double J1 = (1.0 / s.rho0 - 1.0 / s.rho1 - s.e * J0) / s.g;
    double J2 = (out.value - 2.0 * s.e * J1 - s.f * J0) / s.g;

    double dIa = -(a * J0 + b * J1);
    double dIb = -(a * J1 + b * J2);
    double dIc = -(c * J0 + d * J1);
    double dId = -(c * J1 + d * J2);
    out.d_p0 = {dIa - dIb, dIc - dId};
    out.d_p1 = {dIb, dId};
    return out;
}

ReducedConfig DiscretePath::at(double t) const {
    const int n = segments();
    double s = (t - t_start) / (t_end - t_start) * n;
    int j = static_cast<int>(std::floor(s));
    j = std::clamp(j, 0, n - 1);
    double u = std::clamp(s - j, 0.0, 1.0);
    const ReducedConfig& p = nodes[j];
    const ReducedConfig& q = nodes[j + 1];
    return {p.q1 + (q.q1 - p.q1) * u, p.q2 + (q.q2 - p.q2) * u};
}

double path_kinetic(const DiscretePath& path) {
    const double dt = path.dt();
    double k = 0.0;
    for (int j = 0; j < path.segments(); ++j) {
        Vec2 d1 = path.nodes[j + 1].q1 - path.nodes[j].q1;
        Vec2 d2 = path.nodes[j + 1].q2 - path.nodes[j].q2;
        k += (d1.norm2() + d2.norm2()) / dt;
    }
    return k;
}

ActionBreakdown path_action(const DiscretePath& path) {
    const double dt = path.dt();
    ActionBreakdown ab;

    struct Pair {
        const char* name;
        double kin_coeff;  // action share: kin_coeff |dr|^2 / dt per segment
        double pot_coeff;
        double* slot;
    };
    Pair pairs[4] = {
        {"12", 0.25, 2.0, &ab.a12},
        {"13", 0.25, 2.0, &ab.a13},
        {"14", 0.5, 0.5, &ab.a14},
        {"23", 0.5, 0.5, &ab.a23},
    };

    for (int j = 0; j < path.segments(); ++j) {
        const ReducedConfig& p = path.nodes[j];
        const ReducedConfig& q = path.nodes[j + 1];
        Vec2 r0[4] = {p.q1 - p.q2, p.q1 + p.q2, p.q1, p.q2};
        Vec2 r1[4] = {q.q1 - q.q2, q.q1 + q.q2, q.q1, q.q2};
        for (int k = 0; k < 4; ++k) {
            double kin = pairs[k].kin_coeff * (r1[k] - r0[k]).norm2() / dt;
            double pot;
            try {
                pot = pairs[k].pot_coeff * pair_segment_potential(r0[k], r1[k], dt);
            } catch (const CollisionSingularity&) {
                throw CollisionSingularity(pairs[k].name, j);
            }
            *pairs[k].slot += kin + pot;
            ab.kinetic += kin;
            ab.potential += pot;
        }
    }
    ab.total = ab.kinetic + ab.potential;
    return ab;
}

}  // namespace ddorbit
