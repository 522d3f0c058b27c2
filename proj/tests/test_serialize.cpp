#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "ddorbit/extension.hpp"
#include "ddorbit/serialize.hpp"
#include "ddorbit/test_paths.hpp"

using namespace ddorbit;

namespace {

constexpr double kPi = std::numbers::pi;

Solution sample_solution() {
    Solution sol;
    sol.theta = 0.05 * kPi;
    sol.family = Family::Retrograde;
    sol.n = 3;
    sol.action = {4.5, 2.25, 2.25, 1.0, 1.1, 1.2, 1.2};
    sol.start = {0.7071067811865476, 1.3};
    sol.end = {0.25, 1.0 / 3.0, sol.theta};
    sol.grad_norm = 9.5e-9;
    sol.iterations = 1843;
    sol.converged = true;
    sol.path.t_start = 0.0;
    sol.path.t_end = 1.0;
    sol.path.nodes = {
        {{-2.0, 0.0}, {-0.5, 0.0}},
        {{-1.9, 0.1}, {-0.4, -0.25}},
        {{-1.7, 0.3}, {-0.3, -0.5}},
        {{-1.5, 0.5}, {-0.25, -0.75}},
    };
    return sol;
}

std::string temp_path(const char* stem) {
    return std::string("ser_test_") + stem + ".json";
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text)
        if (ch == '\n') ++n;
    return n;
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("format_double round-trips through strtod") {
    const double vals[] = {0.1,     1.0 / 3.0, 1e300,  1e-300, -0.0,
                           kPi,     -kPi,      1.0,    2.0 / 7.0,
                           6.02e23, 4.940656458412465e-324};
    for (double v : vals) {
        std::string s = format_double(v);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
    // Signed zero survives textually.
    CHECK(format_double(-0.0)[0] == '-');
}

TEST_CASE("solution JSON round trip is exact") {
    Solution sol = sample_solution();
    std::string text = solution_to_json(sol);
    Solution back = solution_from_json(text);

    CHECK(back.theta == sol.theta);
    CHECK(back.family == sol.family);
    CHECK(back.n == sol.n);
    CHECK(back.action.total == sol.action.total);
    CHECK(back.action.kinetic == sol.action.kinetic);
    CHECK(back.action.potential == sol.action.potential);
    CHECK(back.action.a12 == sol.action.a12);
    CHECK(back.action.a13 == sol.action.a13);
    CHECK(back.action.a14 == sol.action.a14);
    CHECK(back.action.a23 == sol.action.a23);
    CHECK(back.start.a1 == sol.start.a1);
    CHECK(back.start.a2 == sol.start.a2);
    CHECK(back.end.b1 == sol.end.b1);
    CHECK(back.end.b2 == sol.end.b2);
    CHECK(back.end.theta == sol.end.theta);
    CHECK(back.grad_norm == sol.grad_norm);
    CHECK(back.iterations == sol.iterations);
    CHECK(back.converged == sol.converged);
    REQUIRE(back.path.nodes.size() == sol.path.nodes.size());
    CHECK(back.path.t_start == 0.0);
    CHECK(back.path.t_end == 1.0);
    for (std::size_t i = 0; i < sol.path.nodes.size(); ++i) {
        CHECK(back.path.nodes[i].q1.x == sol.path.nodes[i].q1.x);
        CHECK(back.path.nodes[i].q1.y == sol.path.nodes[i].q1.y);
        CHECK(back.path.nodes[i].q2.x == sol.path.nodes[i].q2.x);
        CHECK(back.path.nodes[i].q2.y == sol.path.nodes[i].q2.y);
    }
}

TEST_CASE("save_solution / load_solution file round trip") {
    Solution sol = sample_solution();
    std::string path = temp_path("roundtrip");
    save_solution(sol, path);
    Solution back = load_solution(path);
    CHECK(back.action.total == sol.action.total);
    CHECK(back.path.nodes.size() == sol.path.nodes.size());
    CHECK(back.path.nodes[2].q2.y == sol.path.nodes[2].q2.y);
    std::remove(path.c_str());
}

TEST_CASE("malformed input is rejected as invalid_argument") {
    CHECK_THROWS_AS(solution_from_json("not json at all"), std::invalid_argument);
    CHECK_THROWS_AS(solution_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(solution_from_json("{\"theta\": 0.1}"), std::invalid_argument);

    Solution sol = sample_solution();
    std::string text = solution_to_json(sol);
    std::string truncated = text.substr(0, text.size() / 2);
    CHECK_THROWS_AS(solution_from_json(truncated), std::invalid_argument);

    // Unknown family tag.
    std::string bad_family = text;
    auto pos = bad_family.find("retrograde");
    REQUIRE(pos != std::string::npos);
    bad_family.replace(pos, 10, "sideways11");
    CHECK_THROWS_AS(solution_from_json(bad_family), std::invalid_argument);

    CHECK_THROWS_AS(load_solution("definitely_missing_file.json"), std::invalid_argument);
}

TEST_CASE("node count must match the declared segment count") {
    Solution sol = sample_solution();
    sol.path.nodes.pop_back();  // 3 nodes vs n_segments = 3
    std::string text = solution_to_json(sol);
    CHECK_THROWS_AS(solution_from_json(text), std::invalid_argument);
}

TEST_CASE("certification CSV has the documented shape") {
    CertReport rep = certify(4);
    std::ostringstream os;
    write_cert_csv(rep, os);
    std::string text = os.str();

    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    CHECK(header == "theta,a_test,g1,margin");
    CHECK(count_lines(text) == 1 + static_cast<int>(rep.theta_grid.size()));
    CHECK(text.find('\r') == std::string::npos);

    // First data row round-trips the first sample.
    std::string row;
    std::getline(is, row);
    double th = 0, at = 0, g = 0, m = 0;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf", &th, &at, &g, &m) == 4);
    CHECK(th == rep.theta_grid[0]);
    CHECK(at == rep.a_test[0]);
    CHECK(g == rep.g1_curve[0]);
    CHECK(m == rep.margin[0]);
    CHECK(m == g - at);
}

TEST_CASE("orbit CSV lists all four bodies with the parallelogram symmetry") {
    DiscretePath base = build_test_path(0.05 * kPi);
    ExtendedOrbit orb = extend_full(base, 0.05 * kPi, 1);
    std::ostringstream os;
    write_orbit_csv(orb, os);
    std::istringstream is(os.str());

    std::string header;
    std::getline(is, header);
    CHECK(header == "t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y");

    int rows = 0;
    std::string row;
    double prev_t = -1.0;
    while (std::getline(is, row)) {
        double v[9];
        REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &v[0],
                            &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7], &v[8]) == 9);
        CHECK(v[0] > prev_t);
        prev_t = v[0];
        CHECK(v[5] == -v[3]);  // q3 = -q2
        CHECK(v[6] == -v[4]);
        CHECK(v[7] == -v[1]);  // q4 = -q1
        CHECK(v[8] == -v[2]);
        ++rows;
    }
    CHECK(rows == orb.full.segments() + 1);
    CHECK(prev_t == doctest::Approx(orb.full.t_end).epsilon(1e-15));
}

TEST_CASE("tables CSV covers all eight candidate tables") {
    std::ostringstream os;
    write_tables_csv(os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "table,theta0,theta_lo,theta_hi,t,q1x,q1y,q2x,q2y");
    int rows = 0;
    int max_table = 0;
    std::string row;
    while (std::getline(is, row)) {
        int tab = 0;
        REQUIRE(std::sscanf(row.c_str(), "%d,", &tab) == 1);
        max_table = std::max(max_table, tab);
        ++rows;
    }
    CHECK(rows == 8 * 11);
    CHECK(max_table == 8);
}

}  // TEST_SUITE
