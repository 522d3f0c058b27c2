#pragma once

#include <iosfwd>
#include <string>

#include "ddorbit/extension.hpp"
#include "ddorbit/minimizer.hpp"
#include "ddorbit/test_paths.hpp"

namespace ddorbit {

/// Lossless (17 significant digits) decimal rendering of a double.
std::string format_double(double v);

/// Solution <-> JSON document (theta, family, segment count, action
/// breakdown, boundary parameters, node list, convergence diagnostics).
std::string solution_to_json(const Solution& sol);
Solution solution_from_json(const std::string& text);
void save_solution(const Solution& sol, const std::string& path);
Solution load_solution(const std::string& path);

/// Certification samples as CSV with header theta,a_test,g1,margin.
void write_cert_csv(const CertReport& rep, std::ostream& os);

/// Extended orbit as CSV with header t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y.
void write_orbit_csv(const ExtendedOrbit& orb, std::ostream& os);

/// Built-in candidate tables as CSV (one row per node).
void write_tables_csv(std::ostream& os);

}  // namespace ddorbit
