#include "ddorbit/kepler_bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddorbit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < kPi / 6.0))
        throw std::domain_error("case bounds require theta in (0, pi/6)");
}

double pw23(double x) { return std::cbrt(x * x); }  // |x|^(2/3)

}  // namespace

double kepler_inf(double mu, double alpha, double T, double theta) {
    if (!(mu > 0.0 && alpha > 0.0 && T > 0.0))
        throw std::domain_error("kepler_inf requires mu, alpha, T > 0");
    if (!(theta > 0.0 && theta <= kPi))
        throw std::domain_error("kepler_inf requires theta in (0, pi]");
    return 1.5 * std::cbrt(mu * alpha * alpha * theta * theta * T);
}

double kepler_collision_inf(double mu, double alpha, double T) {
    if (!(mu > 0.0 && alpha > 0.0 && T > 0.0))
        throw std::domain_error("kepler_collision_inf requires mu, alpha, T > 0");
    return 1.5 * std::cbrt(mu * alpha * alpha * kPi * kPi * T);
}

double case_bound(int k, double theta) {
    check_theta(theta);
    switch (k) {
        case 1:
            // outer pair collides; inner binaries sweep at least theta
            return 1.5 * (std::cbrt(2.0 * kPi * kPi) + std::cbrt(2.0 * theta * theta) +
                          pw23(theta));
        case 2:
            // one binary collides, the other sweeps at least theta + pi/2
            return 1.5 * (std::cbrt(kPi * kPi / 2.0) + std::cbrt(2.0 * theta * theta) +
                          std::cbrt(2.0 * (theta + kPi / 2.0) * (theta + kPi / 2.0)));
        case 3:
            // outer pair collides, both binary sweeps bounded below by theta
            return 1.5 * (std::cbrt(2.0 * kPi * kPi) + 2.0 * std::cbrt(2.0 * theta * theta));
        case 4:
            // outer pair collides, binaries sweep theta + pi/2 and pi/2 - theta
            return 1.5 * (std::cbrt(2.0 * kPi * kPi) +
                          3.0 * pw23((theta + kPi / 2.0) / 2.0) +
                          pw23((kPi / 2.0 - theta) / 2.0));
        default:
            throw std::invalid_argument("case_bound: k must be 1..4");
    }
}

double case1_alpha_bound(double theta, double alpha) {
    check_theta(theta);
    if (!(alpha > 0.0 && alpha < kPi / 2.0))
        throw std::domain_error("case1_alpha_bound requires alpha in (0, pi/2)");
    return 1.5 * (std::cbrt(2.0 * kPi * kPi) + std::cbrt(2.0 * theta * theta) +
                  pw23((theta - alpha) / 2.0) + pw23((theta + alpha) / 2.0));
}

double g1(double theta) {
    // case 1 is the minimum throughout (0, pi/6); asserted by tests
    return case_bound(1, theta);
}

double total_collision_bound() {
    return 3.0 * std::cbrt(2.0 * kPi * kPi) + 3.0 * std::cbrt(kPi * kPi / 4.0);
}

}  // namespace ddorbit
