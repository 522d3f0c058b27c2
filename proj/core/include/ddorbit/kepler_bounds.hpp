#pragma once

namespace ddorbit {

/// Infimum of the two-body action integral(0..T) mu/2 |rdot|^2 + alpha/|r|
/// over paths whose endpoints subtend the angle theta at the origin:
/// (3/2) (mu alpha^2 theta^2 T)^(1/3). Valid for theta in (0, pi].
double kepler_inf(double mu, double alpha, double T, double theta);

/// Same infimum over paths forced through a collision with the center:
/// (3/2) (mu alpha^2 pi^2 T)^(1/3), the theta = pi value.
double kepler_collision_inf(double mu, double alpha, double T);

/// Lower bounds for the action of boundary-collision paths, one per
/// degeneration case of the end rectangle. k in 1..4, theta in (0, pi/6).
double case_bound(int k, double theta);

/// The binding lower bound: min over the four cases, which case 1 attains
/// throughout (0, pi/6).
double g1(double theta);

/// Case-1 bound before the sweep angle alpha of the inner binaries is
/// eliminated; >= g1(theta) for every alpha in (0, pi/2).
double case1_alpha_bound(double theta, double alpha);

/// Lower bound for paths through total collapse:
/// 3 (2 pi^2)^(1/3) + 3 (pi^2/4)^(1/3) = 12.1615... > 12.16.
double total_collision_bound();

}  // namespace ddorbit
