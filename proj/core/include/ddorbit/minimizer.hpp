#pragma once

#include <vector>

#include "ddorbit/action.hpp"
#include "ddorbit/geometry.hpp"

namespace ddorbit {

/// Orientation family of the end rectangle parameters: Prograde constrains
/// b1, b2 >= 0; Retrograde leaves them signed. Start parameters a1, a2 are
/// always >= 0.
enum class Family { Prograde, Retrograde };

enum class InitKind { TestPath, StraightLine, Given };

struct MinimizeOptions {
    long max_iters = 100000;
    double grad_tol = 1e-8;      // scaled by sqrt(dim) internally
    int lbfgs_memory = 12;
    /// Softening stages for the potential, ending in 0. Empty = automatic:
    /// {0} when the initial path is collision-free, else {1e-3, 1e-5, 0}.
    std::vector<double> softening;
    bool verbose = false;
};

struct Problem {
    double theta = 0.0;
    int n = 160;  // segments
    Family family = Family::Prograde;
    InitKind init = InitKind::TestPath;
    DiscretePath init_path;  // used when init == Given
    MinimizeOptions options;
};

struct Solution {
    double theta = 0.0;
    Family family = Family::Prograde;
    int n = 0;
    DiscretePath path;
    ActionBreakdown action;
    StartParams start;
    EndParams end;
    // dimension-scaled projected gradient ||pg|| / sqrt(dim) at the last
    // iterate, the quantity grad_tol applies to; converged implies
    // grad_norm <= grad_tol
    double grad_norm = 0.0;
    long iterations = 0;
    bool converged = false;
};

/// Decision vector layout: [a1, a2, (q1x q1y q2x q2y) for interior nodes
/// 1..n-1, b1, b2], dimension 4n. Endpoints are generated through the
/// boundary constructors, so feasible vectors decode to admissible paths.
std::vector<double> encode_path(const DiscretePath& path, double theta);
DiscretePath decode_path(const std::vector<double>& v, int n, double theta);

/// Softened action value of the decoded path. eps = 0 gives the exact
/// action and throws CollisionSingularity on singular segments.
double objective(const std::vector<double>& v, int n, double theta, double eps);

/// Value plus analytic gradient (chained through the boundary constructors
/// and the end rotation).
double objective_gradient(const std::vector<double>& v, int n, double theta,
                          double eps, std::vector<double>& grad);

/// Initial path for a problem. TestPath linearly upsamples the covering
/// candidate path (theta must lie in its domain); StraightLine interpolates
/// between scaled boundary configurations. For the retrograde family both
/// are pushed through the quadrant reflection so the search starts in the
/// retrograde basin.
DiscretePath initial_path(const Problem& p);

/// Projected limited-memory quasi-Newton descent of the exact action.
Solution minimize(const Problem& p);

/// Residuals of the interior stationarity conditions: for each interior
/// node, |second difference / dt^2 - acceleration| (per body, max of the
/// two). First-order consistent; O(dt^2) small at a discrete minimizer.
std::vector<double> stationarity_residuals(const DiscretePath& path);

/// Interbody acceleration of body 1 and 2 in the reduced configuration.
ReducedConfig acceleration(const ReducedConfig& c);

/// Natural boundary condition residuals of a converged path, measured by
/// 4th order one-sided finite differences and scaled by the peak node speed:
/// t0_rel: max |xdot_i(0)| / vmax (horizontal velocities vanish),
/// t1_rel: |q1dot(1) + q2dot(1) B R(2 theta)| / vmax (reflection matching).
struct BoundaryResiduals {
    double t0_rel = 0.0;
    double t1_rel = 0.0;
    double vmax = 0.0;
};
BoundaryResiduals first_variation_residuals(const DiscretePath& path, double theta);

/// Direct minimization of the two-body action integral(0..T)
/// mu/2 |rdot|^2 + alpha/|r| over discrete paths whose endpoints subtend
/// the angle theta; cross-validates the closed-form infimum. Returns the
/// converged action (n segments).
double kepler_direct_minimum(double mu, double alpha, double T, double theta,
                             int n, long max_iters = 200000);

}  // namespace ddorbit
