#include "ddorbit/zgeometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddorbit {

namespace {
constexpr double kPi = std::numbers::pi;
}

ZState to_z(const ReducedConfig& c) {
    return {c.q1 - c.q2, c.q1 + c.q2};
}

ReducedConfig from_z(const ZState& z) {
    return {(z.z1 + z.z2) * 0.5, (z.z2 - z.z1) * 0.5};
}

double mutual_angle(const ZState& z) {
    if ((z.z1.x == 0.0 && z.z1.y == 0.0) || (z.z2.x == 0.0 && z.z2.y == 0.0))
        throw std::domain_error("mutual_angle: zero vector");
    // atan2(|cross|, |dot|) lands in [0, pi/2] and, unlike the acos form,
    // stays exact where the lines (anti)align or meet at a right angle
    double cross = z.z1.x * z.z2.y - z.z1.y * z.z2.x;
    return std::atan2(std::fabs(cross), std::fabs(z.z1.dot(z.z2)));
}

double potential_direct(const ZState& z) {
    return 2.0 / z.z1.norm() + 2.0 / z.z2.norm() +
           1.0 / (z.z1 + z.z2).norm() + 1.0 / (z.z1 - z.z2).norm();
}

double potential_polar(double r1, double r2, double delta) {
    if (!(r1 > 0.0 && r2 > 0.0))
        throw std::domain_error("potential_polar: radii must be positive");
    double c = std::cos(delta);
    double plus = r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * c;
    double minus = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c;
    return 2.0 / r1 + 2.0 / r2 + 1.0 / std::sqrt(plus) + 1.0 / std::sqrt(minus);
}

double dU_ddelta(double r1, double r2, double delta) {
    if (!(r1 > 0.0 && r2 > 0.0))
        throw std::domain_error("dU_ddelta: radii must be positive");
    double c = std::cos(delta), s = std::sin(delta);
    double plus = r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * c;
    double minus = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c;
    double rr = r1 * r2 * s;
    return rr / (plus * std::sqrt(plus)) - rr / (minus * std::sqrt(minus));
}

ZState reflect_quadrants(const ZState& z) {
    return {{-std::fabs(z.z1.x), std::fabs(z.z1.y)},
            {-std::fabs(z.z2.x), -std::fabs(z.z2.y)}};
}

DiscretePath reflect_path_quadrants(const DiscretePath& path) {
    DiscretePath out = path;
    for (ReducedConfig& c : out.nodes) c = from_z(reflect_quadrants(to_z(c)));
    return out;
}

bool quadrant_confinement(const DiscretePath& path, double tol) {
    for (const ReducedConfig& c : path.nodes) {
        ZState z = to_z(c);
        if (z.z1.x > tol || z.z1.y < -tol) return false;
        if (z.z2.x > tol || z.z2.y > tol) return false;
    }
    return true;
}

FamilyComparison compare_families(double theta, int n,
                                  const MinimizeOptions& options) {
    FamilyComparison fc;
    Problem pro;
    pro.theta = theta;
    pro.n = n;
    pro.family = Family::Prograde;
    pro.init = InitKind::TestPath;
    pro.options = options;
    fc.prograde = minimize(pro);

    DiscretePath folded = reflect_path_quadrants(fc.prograde.path);
    fc.reflected_action = path_action(folded).total;

    Problem retro = pro;
    retro.family = Family::Retrograde;
    retro.init = InitKind::Given;
    retro.init_path = folded;
    fc.retrograde = minimize(retro);

    fc.gap = fc.prograde.action.total - fc.retrograde.action.total;
    fc.confinement = quadrant_confinement(fc.retrograde.path, 1e-6);
    return fc;
}

}  // namespace ddorbit
