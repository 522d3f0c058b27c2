#pragma once

#include <string>

namespace ddorbit {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad arguments or I/O failure
inline constexpr int kExitNumeric = 2;  // computation ran but did not certify/converge

/// Angle arguments accept plain radians ("0.157"), multiples of pi
/// ("0.05pi"), and simple fractions ("pi/7", "2pi/7").
double parse_angle(const std::string& text);

/// Entry point behind the command line tool; also callable in-process.
int cli_main(int argc, const char* const* argv);

}  // namespace ddorbit
