#include "ddorbit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddorbit/action.hpp"
#include "ddorbit/extension.hpp"
#include "ddorbit/kepler_bounds.hpp"
#include "ddorbit/minimizer.hpp"
#include "ddorbit/serialize.hpp"
#include "ddorbit/test_paths.hpp"
#include "ddorbit/zgeometry.hpp"

namespace ddorbit {
namespace {

Family parse_family(const std::string& name) {
  if (name == "prograde") return Family::Prograde;
  if (name == "retrograde") return Family::Retrograde;
  throw CLI::ValidationError("--family", "expected 'prograde' or 'retrograde'");
}

// --init accepts testpath | straight | file=<solution.json>
void apply_init(Problem& prob, const std::string& name) {
  if (name == "testpath") {
    prob.init = InitKind::TestPath;
  } else if (name == "straight") {
    prob.init = InitKind::StraightLine;
  } else if (name.rfind("file=", 0) == 0) {
    prob.init = InitKind::Given;
    prob.init_path = load_solution(name.substr(5)).path;
  } else {
    throw std::invalid_argument(
        "--init expects 'testpath', 'straight', or 'file=<solution.json>'");
  }
}

void print_solution_summary(const Solution& sol) {
  const char* fam = sol.family == Family::Prograde ? "prograde" : "retrograde";
  std::printf("theta      %.12g\n", sol.theta);
  std::printf("family     %s\n", fam);
  std::printf("segments   %d\n", sol.n);
  std::printf("action     %.12g\n", sol.action.total);
  std::printf("kinetic    %.12g\n", sol.action.kinetic);
  std::printf("potential  %.12g\n", sol.action.potential);
  std::printf("grad norm  %.3e\n", sol.grad_norm);
  std::printf("iterations %ld\n", sol.iterations);
  std::printf("converged  %s\n", sol.converged ? "yes" : "no");
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open for writing: " + path);
  fn(os);
  if (!os) throw std::invalid_argument("write failed: " + path);
}

void write_cert_json(const CertReport& rep, std::ostream& os) {
  nlohmann::json j;
  j["min_margin"] = rep.min_margin;
  j["argmin_theta"] = rep.argmin_theta;
  j["grid_safety_margin"] = rep.grid_safety_margin;
  j["intervals"] = nlohmann::json::array();
  for (const CertInterval& iv : rep.intervals)
    j["intervals"].push_back({{"lo", iv.lo},
                              {"hi", iv.hi},
                              {"min_margin", iv.min_margin},
                              {"argmin", iv.argmin},
                              {"lipschitz", iv.lipschitz},
                              {"safety", iv.safety}});
  j["samples"] = nlohmann::json::array();
  for (size_t i = 0; i < rep.theta_grid.size(); ++i)
    j["samples"].push_back({{"theta", rep.theta_grid[i]},
                            {"a_test", rep.a_test[i]},
                            {"g1", rep.g1_curve[i]},
                            {"margin", rep.margin[i]}});
  os << j.dump(1, '\t') << '\n';
}

int run_certify(int grid, const std::string& out, const std::string& format,
                bool quiet) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("--format must be csv or json");
  CertReport report = certify(grid);
  if (!out.empty())
    write_file(out, [&](std::ostream& os) {
      format == "csv" ? write_cert_csv(report, os) : write_cert_json(report, os);
    });
  if (!quiet) {
    std::printf("tables        %zu\n", report.intervals.size());
    std::printf("grid points   %d per interval\n", grid);
    std::printf("min margin    %.6e at theta = %.12g\n", report.min_margin,
                report.argmin_theta);
    std::printf("grid safety   %.6e\n", report.grid_safety_margin);
    for (const CertInterval& iv : report.intervals) {
      std::printf("  [%.6f, %.6f] margin %.6e lipschitz %.3e safety %.3e\n",
                  iv.lo, iv.hi, iv.min_margin, iv.lipschitz, iv.safety);
    }
  }
  return report.min_margin > 0.0 ? kExitOk : kExitNumeric;
}

constexpr double kCertifiedThetaMax = 0.143 * std::numbers::pi;

void check_theta_range(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0))
    throw std::invalid_argument("theta must lie in (0, pi/2)");
}

int run_minimize(double theta, const std::string& family_name,
                 const std::string& init_name, int n, double grad_tol,
                 int max_iters, const std::vector<double>& softening,
                 const std::string& out) {
  check_theta_range(theta);
  Problem prob;
  prob.theta = theta;
  prob.n = n;
  prob.family = parse_family(family_name);
  apply_init(prob, init_name);
  prob.options.grad_tol = grad_tol;
  prob.options.max_iters = max_iters;
  prob.options.softening = softening;
  Solution sol = minimize(prob);
  print_solution_summary(sol);
  if (theta > kCertifiedThetaMax)
    std::printf(
        "note: theta exceeds the certified window (0, 0.143pi]; "
        "no collision-exclusion certificate applies to this minimizer\n");
  if (!out.empty()) save_solution(sol, out);
  return sol.converged ? kExitOk : kExitNumeric;
}

int run_extend(const std::string& in, int k, const std::string& out) {
  Solution sol = load_solution(in);
  ExtendedOrbit orbit = extend_full(sol.path, sol.theta, k);
  std::vector<double> mismatch = junction_velocity_mismatch(orbit);
  std::printf("theta     %.12g\n", sol.theta);
  std::printf("blocks    %d\n", k);
  std::printf("time span [%.12g, %.12g]\n", orbit.full.t_start, orbit.full.t_end);
  if (orbit.closure.periodic) {
    std::printf("closure   Periodic, period %g (theta/pi = %ld/%ld)\n",
                orbit.closure.period, orbit.closure.k1, orbit.closure.l1);
  } else {
    std::printf("closure   QuasiPeriodic (no small rational multiple of pi)\n");
  }
  double worst =
      mismatch.empty() ? 0.0 : *std::max_element(mismatch.begin(), mismatch.end());
  std::printf("junction velocity mismatch (max of %zu) %.6e\n", mismatch.size(),
              worst);
  if (!out.empty())
    write_file(out, [&](std::ostream& os) { write_orbit_csv(orbit, os); });
  return kExitOk;
}

int run_compare(double theta, int n) {
  check_theta_range(theta);
  FamilyComparison cmp = compare_families(theta, n);
  std::printf("theta               %.12g\n", theta);
  std::printf("prograde action     %.12g (grad %.3e, %s)\n",
              cmp.prograde.action.total, cmp.prograde.grad_norm,
              cmp.prograde.converged ? "converged" : "NOT converged");
  std::printf("retrograde action   %.12g (grad %.3e, %s)\n",
              cmp.retrograde.action.total, cmp.retrograde.grad_norm,
              cmp.retrograde.converged ? "converged" : "NOT converged");
  std::printf("reflected action    %.12g\n", cmp.reflected_action);
  std::printf("gap (pro - retro)   %.12g\n", cmp.gap);
  std::printf("retro confinement   %s\n", cmp.confinement ? "yes" : "no");
  bool ok = cmp.prograde.converged && cmp.retrograde.converged && cmp.gap > 0.0;
  return ok ? kExitOk : kExitNumeric;
}

int run_tables(const std::string& out) {
  if (!out.empty()) {
    write_file(out, [](std::ostream& os) { write_tables_csv(os); });
    return kExitOk;
  }
  const auto& tabs = builtin_tables();
  for (const TestPathTable& tab : tabs) {
    std::printf("table %d: theta0 %.12g, interval [%.6f, %.6f]\n", tab.index + 1,
                tab.theta0, tab.theta_lo, tab.theta_hi);
  }
  return kExitOk;
}

int run_kepler(double mu, double alpha, double T, double theta, bool validate,
               int n) {
  double inf = kepler_inf(mu, alpha, T, theta);
  double coll = kepler_collision_inf(mu, alpha, T);
  std::printf("infimum (angle %.12g)  %.12g\n", theta, inf);
  std::printf("collision bound        %.12g\n", coll);
  if (validate) {
    double direct = kepler_direct_minimum(mu, alpha, T, theta, n);
    double rel = std::abs(direct - inf) / inf;
    std::printf("direct minimum (n=%d)  %.12g\n", n, direct);
    std::printf("relative error         %.3e\n", rel);
    return rel < 1e-2 ? kExitOk : kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

double parse_angle(const std::string& text) {
  auto fail = [&]() -> double {
    throw std::invalid_argument("bad angle '" + text +
                                "' (use radians, Xpi, or pi/N)");
  };
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != s.size()) fail();
    return v;
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail();
  auto pos = s.find("pi");
  if (pos == std::string::npos) return number(s);
  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  double coef = head.empty() ? 1.0 : (head == "-" ? -1.0 : number(head));
  double div = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') fail();
    div = number(tail.substr(1));
    if (div == 0.0) fail();
  }
  return coef * std::numbers::pi / div;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"variational laboratory for parallelogram four-body orbits"};
  app.require_subcommand(1);

  unsigned long seed = 0;
  app.add_option("--seed", seed,
                 "seed for auxiliary randomness (all commands are deterministic)");

  // certify
  auto* cert = app.add_subcommand(
      "certify", "sweep the test-path actions against the lower bound g1");
  int grid = 4096;
  std::string cert_out;
  std::string cert_format = "csv";
  bool cert_quiet = false;
  cert->add_option("--grid", grid, "samples per angle interval")
      ->check(CLI::Range(2, 1 << 22));
  cert->add_option("-o,--output", cert_out, "write the per-sample report here");
  cert->add_option("--format", cert_format, "output format: csv or json");
  cert->add_flag("--quiet", cert_quiet, "suppress the per-interval report");

  // minimize
  auto* min = app.add_subcommand(
      "minimize", "minimize the action over paths with sliding endpoints");
  std::string min_theta_text;
  std::string family_name = "prograde";
  std::string init_name = "testpath";
  int min_n = 160;
  double grad_tol = 1e-8;
  int max_iters = 100000;
  std::vector<double> softening;
  std::string min_out;
  min->add_option("--theta", min_theta_text, "rotation angle (radians, Xpi, or pi/N)")
      ->required();
  min->add_option("--family", family_name, "prograde or retrograde");
  min->add_option("--init", init_name,
                  "initial path: testpath, straight, or file=<solution.json>");
  min->add_option("--n", min_n, "number of time segments")->check(CLI::Range(2, 100000));
  min->add_option("--grad-tol", grad_tol, "projected gradient tolerance");
  min->add_option("--max-iters", max_iters, "iteration budget");
  min->add_option("--softening", softening,
                  "explicit softening schedule (default: automatic)");
  min->add_option("-o,--output", min_out, "write the solution as JSON here");

  // extend
  auto* ext = app.add_subcommand(
      "extend", "extend a minimizer over [0,1] to [0,4k] by reflection");
  std::string ext_in;
  int ext_k = 1;
  std::string ext_out;
  ext->add_option("-i,--input", ext_in, "solution JSON from 'minimize'")->required();
  ext->add_option("--k", ext_k, "number of 4-unit blocks")->check(CLI::Range(1, 4096));
  ext->add_option("-o,--output", ext_out, "write the sampled orbit as CSV here");

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "minimize both families at one angle and report the action gap");
  std::string cmp_theta_text;
  int cmp_n = 160;
  cmp->add_option("--theta", cmp_theta_text, "rotation angle (radians, Xpi, or pi/N)")
      ->required();
  cmp->add_option("--n", cmp_n, "number of time segments")->check(CLI::Range(2, 100000));

  // tables
  auto* tab = app.add_subcommand("tables", "show or export the built-in test paths");
  std::string tab_out;
  tab->add_option("-o,--output", tab_out, "write all table nodes as CSV here");

  // kepler
  auto* kep = app.add_subcommand(
      "kepler", "closed-form two-body action bounds, optionally cross-checked");
  double mu = 1.0, alpha = 1.0, T = 1.0;
  std::string kep_theta_text = "pi/2";
  bool validate = false;
  int kep_n = 200;
  kep->add_option("--mu", mu, "reduced mass (kinetic weight mu/2)");
  kep->add_option("--alpha", alpha, "potential strength alpha/r");
  kep->add_option("--T", T, "transfer time");
  kep->add_option("--theta", kep_theta_text, "transfer angle in (0, pi]");
  kep->add_flag("--validate", validate, "cross-check by direct minimization");
  kep->add_option("--n", kep_n, "segments for the direct minimization")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cert->parsed()) return run_certify(grid, cert_out, cert_format, cert_quiet);
    if (min->parsed())
      return run_minimize(parse_angle(min_theta_text), family_name, init_name,
                          min_n, grad_tol, max_iters, softening, min_out);
    if (ext->parsed()) return run_extend(ext_in, ext_k, ext_out);
    if (cmp->parsed()) return run_compare(parse_angle(cmp_theta_text), cmp_n);
    if (tab->parsed()) return run_tables(tab_out);
    if (kep->parsed())
      return run_kepler(mu, alpha, T, parse_angle(kep_theta_text), validate, kep_n);
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error both signal bad inputs
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace ddorbit
