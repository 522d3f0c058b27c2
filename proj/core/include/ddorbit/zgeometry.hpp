#pragma once

#include "ddorbit/action.hpp"
#include "ddorbit/geometry.hpp"
#include "ddorbit/minimizer.hpp"

namespace ddorbit {

/// Relative coordinates z1 = q1 - q2 (inner binary) and z2 = q1 + q2
/// (binary centers); the configuration potential splits over them.
struct ZState {
    Vec2 z1, z2;
};

ZState to_z(const ReducedConfig& c);
ReducedConfig from_z(const ZState& z);

/// Acute angle between the lines spanned by z1 and z2, in [0, pi/2].
/// Throws std::domain_error if either vector vanishes.
double mutual_angle(const ZState& z);

/// Potential of the four-body configuration in relative coordinates:
/// 2/|z1| + 2/|z2| + 1/|z1+z2| + 1/|z1-z2|.
double potential_direct(const ZState& z);

/// Same potential through the polar form (r1, r2, delta):
/// 2/r1 + 2/r2 + 1/sqrt(r1^2+r2^2+2 r1 r2 cos d) + 1/sqrt(r1^2+r2^2-2 r1 r2 cos d).
double potential_polar(double r1, double r2, double delta);

/// Derivative of potential_polar in delta; <= 0 on [0, pi/2] with zeros
/// exactly at the endpoints.
double dU_ddelta(double r1, double r2, double delta);

/// Quadrant folding: z1 -> (-|x|, |y|) (second closed quadrant),
/// z2 -> (-|x|, -|y|) (third closed quadrant). Never increases the
/// potential; preserves it exactly when z1, z2 lie in adjacent closed
/// quadrants.
ZState reflect_quadrants(const ZState& z);

/// Nodewise quadrant folding of a path, mapped back to configurations.
DiscretePath reflect_path_quadrants(const DiscretePath& path);

/// True when every node satisfies z1 in the closed second quadrant and
/// z2 in the closed third quadrant, within an absolute tolerance.
bool quadrant_confinement(const DiscretePath& path, double tol);

struct FamilyComparison {
    Solution prograde;
    Solution retrograde;
    double gap = 0.0;              // prograde.action.total - retrograde.action.total
    double reflected_action = 0.0; // action of the folded prograde minimizer
    bool confinement = false;      // retrograde minimizer quadrant-confined (tol 1e-6)
};

/// Minimizes both families at a common (theta, n). The retrograde run is
/// seeded with the folded prograde minimizer, which also yields the bound
/// retrograde.action.total <= reflected_action by descent.
FamilyComparison compare_families(double theta, int n,
                                  const MinimizeOptions& options = {});

}  // namespace ddorbit
