#pragma once

#include "ddorbit/action.hpp"
#include "ddorbit/geometry.hpp"

namespace ddorbit {

/// Even reflection through t = 0: q(-t) = q(t) B with B = diag(1, -1).
/// Requires the first node on the horizontal axis. [0,1] -> [-1,1].
DiscretePath reflect_even(const DiscretePath& path);

/// Reflection through t = 1 with the body swap 1<->2 (and 3<->4):
/// q1(t) = q2(2-t) B R(2 theta), q2(t) = q1(2-t) B R(2 theta) for t in [1,2].
/// Fixes end configurations of the rotated-rectangle family. [0,1] -> [0,2].
DiscretePath reflect_forward(const DiscretePath& path, double theta);

struct Closure {
    bool periodic = false;
    long k1 = 0, l1 = 0;   // theta/pi = k1/l1 in lowest terms when periodic
    double period = 0.0;   // 4 l1 time units
};

/// Rational closure of the rotation number theta/pi by continued-fraction
/// convergents with denominators capped at denom_max; a convergent within
/// tol declares periodicity with period 4 l1. (A rational theta/pi whose
/// reduced denominator exceeds the cap reports as non-periodic.)
Closure detect_closure(double theta, long denom_max = 64, double tol = 1e-9);

struct ExtendedOrbit {
    DiscretePath base;   // the generating arc on [0, 1]
    double theta = 0.0;
    int k = 1;           // number of 4-unit blocks
    DiscretePath full;   // on [0, 4k], same node density as base
    Closure closure;
};

/// Unfolds the arc to [0, 4k] with the two reflections and the block
/// rotation q(t + 4) = q(t) R(4 theta).
ExtendedOrbit extend_full(const DiscretePath& path, double theta, int k);

/// Velocity mismatch at each interior junction t = 1, 2, ..., 4k-1 of the
/// extension, by one-sided finite differences, relative to the peak speed.
std::vector<double> junction_velocity_mismatch(const ExtendedOrbit& orbit);

}  // namespace ddorbit
