#include "ddorbit/extension.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddorbit {

namespace {

ReducedConfig apply_B(const ReducedConfig& c) {
    return {reflect_x(c.q1), reflect_x(c.q2)};
}

ReducedConfig apply_rot(const ReducedConfig& c, double ang) {
    return {rotate(c.q1, ang), rotate(c.q2, ang)};
}

ReducedConfig swap12(const ReducedConfig& c) {
    return {c.q2, c.q1};
}

}  // namespace

DiscretePath reflect_even(const DiscretePath& path) {
    if (std::fabs(path.nodes.front().q1.y) > 1e-9 ||
        std::fabs(path.nodes.front().q2.y) > 1e-9)
        throw std::invalid_argument("reflect_even: first node must lie on the axis");
    const int n = path.segments();
    DiscretePath out;
    out.t_start = -1.0;
    out.t_end = 1.0;
    out.nodes.resize(2 * n + 1);
    for (int i = 0; i <= n; ++i) {
        out.nodes[n - i] = apply_B(path.nodes[i]);  // t = -i/n
        out.nodes[n + i] = path.nodes[i];
    }
    return out;
}

DiscretePath reflect_forward(const DiscretePath& path, double theta) {
    const int n = path.segments();
    DiscretePath out;
    out.t_start = 0.0;
    out.t_end = 2.0;
    out.nodes.resize(2 * n + 1);
    for (int i = 0; i <= n; ++i) {
        // t = 2 - i/n maps from node i with swap, axis flip, rotation; the
        // seam node i = n is its own image, so the verbatim copy below wins
        out.nodes[2 * n - i] = apply_rot(apply_B(swap12(path.nodes[i])), 2.0 * theta);
        out.nodes[i] = path.nodes[i];
    }
    return out;
}

Closure detect_closure(double theta, long denom_max, double tol) {
    Closure res;
    double x = theta / std::numbers::pi;
    // continued-fraction convergents p/q of x
    double frac = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // p1/q1 tracks the latest convergent
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(frac);
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > denom_max) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1 > 0 && std::fabs(x - static_cast<double>(p1) / q1) <= tol) {
            res.periodic = true;
            res.k1 = p1;
            res.l1 = q1;
            res.period = 4.0 * static_cast<double>(q1);
            return res;
        }
        double rem = frac - a;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return res;
}

ExtendedOrbit extend_full(const DiscretePath& path, double theta, int k) {
    if (k < 1) throw std::invalid_argument("extend_full: k >= 1");
    const int n = path.segments();
    ExtendedOrbit orb;
    orb.base = path;
    orb.theta = theta;
    orb.k = k;
    orb.closure = detect_closure(theta);
    orb.full.t_start = 0.0;
    orb.full.t_end = 4.0 * k;
    orb.full.nodes.resize(static_cast<size_t>(4) * k * n + 1);

    // [0, 2]: arc plus its forward reflection
    DiscretePath half = reflect_forward(path, theta);
    for (int i = 0; i <= 2 * n; ++i) orb.full.nodes[i] = half.nodes[i];
    // [2, 4]: swapped copy of [0, 2] rotated by 2 theta
    for (int i = 0; i <= 2 * n; ++i)
        orb.full.nodes[2 * n + i] = apply_rot(swap12(half.nodes[i]), 2.0 * theta);
    // [4k, 4k+4]: previous block rotated by 4 theta
    for (int blk = 1; blk < k; ++blk)
        for (int i = 0; i <= 4 * n; ++i)
            orb.full.nodes[4 * n * blk + i] =
                apply_rot(orb.full.nodes[4 * n * (blk - 1) + i], 4.0 * theta);
    return orb;
}

std::vector<double> junction_velocity_mismatch(const ExtendedOrbit& orbit) {
    const DiscretePath& f = orbit.full;
    const int n = orbit.base.segments();
    if (n < 4)
        throw std::invalid_argument("junction check needs >= 4 segments per unit");
    const double h = f.dt();
    double vmax = 0.0;
    for (int j = 0; j < f.segments(); ++j) {
        vmax = std::max(vmax, (f.nodes[j + 1].q1 - f.nodes[j].q1).norm() / h);
        vmax = std::max(vmax, (f.nodes[j + 1].q2 - f.nodes[j].q2).norm() / h);
    }
    // 4th order one-sided stencils on each side of every unit-time junction
    auto deriv = [&](int at, int dir, auto get) {
        return (25.0 * get(at) - 48.0 * get(at + dir) + 36.0 * get(at + 2 * dir) -
                16.0 * get(at + 3 * dir) + 3.0 * get(at + 4 * dir)) *
               (dir > 0 ? -1.0 : 1.0) * (1.0 / (12.0 * h));
    };
    std::vector<double> out;
    for (int junction = 1; junction < 4 * orbit.k; ++junction) {
        int idx = junction * n;
        Vec2 l1 = deriv(idx, -1, [&](int j) { return f.nodes[j].q1; });
        Vec2 r1 = deriv(idx, +1, [&](int j) { return f.nodes[j].q1; });
        Vec2 l2 = deriv(idx, -1, [&](int j) { return f.nodes[j].q2; });
        Vec2 r2 = deriv(idx, +1, [&](int j) { return f.nodes[j].q2; });
        out.push_back(std::max((l1 - r1).norm(), (l2 - r2).norm()) / vmax);
    }
    return out;
}

}  // namespace ddorbit
