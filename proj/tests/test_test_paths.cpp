#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddorbit/kepler_bounds.hpp"
#include "ddorbit/test_paths.hpp"
#include "support/oracles.hpp"

using namespace ddorbit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("test_paths") {

TEST_CASE("eight tables tile the certified angle range") {
    const auto& tabs = builtin_tables();
    REQUIRE(tabs.size() == 8);
    CHECK(tabs[0].theta_lo == 0.0);
    CHECK(tabs[7].theta_hi == doctest::Approx(0.143 * kPi).epsilon(1e-15));
    for (int k = 0; k < 8; ++k) {
        const TestPathTable& t = tabs[k];
        CHECK(t.index == k);
        CHECK(t.theta_lo < t.theta_hi);
        CHECK(t.theta0 > t.theta_lo);
        CHECK(t.theta0 <= t.theta_hi);
        if (k > 0) CHECK(t.theta_lo == doctest::Approx(tabs[k - 1].theta_hi));
    }
}

TEST_CASE("table nodes are anchored on the boundary sets") {
    for (const TestPathTable& t : builtin_tables()) {
        // start nodes sit on the axis with the collinear ordering
        CHECK(t.nodes[0].q1.y == 0.0);
        CHECK(t.nodes[0].q2.y == 0.0);
        CHECK(t.nodes[0].q1.x <= t.nodes[0].q2.x);
        CHECK(t.nodes[0].q2.x <= 0.0);
        // stored end nodes are un-rotated rectangles
        CHECK(t.nodes[10].q1.x == doctest::Approx(t.nodes[10].q2.x).epsilon(1e-12));
        CHECK(t.nodes[10].q1.y ==
              doctest::Approx(-t.nodes[10].q2.y).epsilon(1e-12));
        CHECK(t.endpoint_radii.x == doctest::Approx(-t.nodes[10].q2.x));
        CHECK(t.endpoint_radii.y == doctest::Approx(t.nodes[10].q2.y));
        CHECK(t.endpoint_radii.x > 0.0);
        CHECK(t.endpoint_radii.y > 0.0);
    }
}

TEST_CASE("angle to table resolution") {
    const auto& tabs = builtin_tables();
    CHECK(table_index_for(1e-8) == 0);
    CHECK(table_index_for(0.05 * kPi) == 3);
    CHECK(table_index_for(kPi / 7.0) == 7);
    CHECK(table_index_for(0.143 * kPi) == 7);
    // shared interval endpoints resolve to the lower table
    for (int k = 1; k < 8; ++k)
        CHECK(table_index_for(tabs[k].theta_lo) == k - 1);
    CHECK_THROWS_AS(table_index_for(0.0), std::domain_error);
    CHECK_THROWS_AS(table_index_for(-0.1), std::domain_error);
    CHECK_THROWS_AS(table_index_for(0.1431 * kPi), std::domain_error);
}

TEST_CASE("candidate path construction") {
    double theta = 0.05 * kPi;
    DiscretePath p = build_test_path(theta);
    REQUIRE(p.segments() == 10);
    CHECK(p.t_start == 0.0);
    CHECK(p.t_end == 1.0);
    const TestPathTable& t = builtin_tables()[3];
    for (int j = 0; j < 10; ++j) {
        CHECK(p.nodes[j].q1.x == t.nodes[j].q1.x);
        CHECK(p.nodes[j].q2.y == t.nodes[j].q2.y);
    }
    CHECK(p.nodes[10].q1.x ==
          doctest::Approx(rotate(t.nodes[10].q1, theta).x).epsilon(1e-14));
    CHECK(membership(p.nodes[0], BoundaryFamily::CollinearAxis, theta, 1e-12).ok);
    CHECK(membership(p.nodes[10], BoundaryFamily::RotatedRectangle, theta, 1e-9).ok);
}

TEST_CASE("first segment kinetic share of the smallest angle table") {
    DiscretePath p = build_test_path(0.004 * kPi);
    Vec2 d1 = p.nodes[1].q1 - p.nodes[0].q1;
    Vec2 d2 = p.nodes[1].q2 - p.nodes[0].q2;
    double kin = (d1.norm2() + d2.norm2()) / 0.1;
    CHECK(kin == doctest::Approx(0.11349584149186714).epsilon(1e-13));
}

TEST_CASE("candidate action agrees with quadrature") {
    for (double theta : {0.02 * kPi, 0.05 * kPi, kPi / 7.0}) {
        DiscretePath p = build_test_path(theta);
        ActionBreakdown a = test_action(theta);
        CHECK(a.total == doctest::Approx(a.kinetic + a.potential).epsilon(1e-13));
        double dt = p.dt();
        double pot = 0.0;
        for (int j = 0; j < 10; ++j) {
            const ReducedConfig& c0 = p.nodes[j];
            const ReducedConfig& c1 = p.nodes[j + 1];
            pot += 2.0 * dt *
                   oracle::soft_segment_reference(c0.q1 - c0.q2, c1.q1 - c1.q2, 0);
            pot += 2.0 * dt *
                   oracle::soft_segment_reference(c0.q1 + c0.q2, c1.q1 + c1.q2, 0);
            pot += 0.5 * dt * oracle::soft_segment_reference(c0.q1, c1.q1, 0);
            pot += 0.5 * dt * oracle::soft_segment_reference(c0.q2, c1.q2, 0);
        }
        CHECK(a.potential == doctest::Approx(pot).epsilon(1e-11));
    }
}

TEST_CASE("candidate action beats the collision bound at every anchor") {
    for (const TestPathTable& t : builtin_tables()) {
        double margin = g1(t.theta0) - test_action(t.theta0).total;
        CHECK(margin > 0.0);
    }
}

TEST_CASE("certification sweep structure") {
    CertReport rep = certify(16);
    REQUIRE(rep.theta_grid.size() == 8 * 16);
    REQUIRE(rep.a_test.size() == rep.theta_grid.size());
    REQUIRE(rep.g1_curve.size() == rep.theta_grid.size());
    REQUIRE(rep.margin.size() == rep.theta_grid.size());
    CHECK(rep.min_margin > 0.0);
    CHECK(rep.theta_grid.front() > 0.0);  // open left end stays excluded
    CHECK(rep.theta_grid.back() == doctest::Approx(0.143 * kPi));
    // nondecreasing; shared interval endpoints appear once per covering table
    for (size_t i = 1; i < rep.theta_grid.size(); ++i)
        CHECK(rep.theta_grid[i] >= rep.theta_grid[i - 1]);
    for (size_t i = 0; i < rep.margin.size(); ++i) {
        CHECK(rep.margin[i] == doctest::Approx(rep.g1_curve[i] - rep.a_test[i])
                                   .epsilon(1e-15));
        CHECK(rep.margin[i] >= rep.min_margin);
    }
    double lo = 1e300;
    for (const CertInterval& iv : rep.intervals) {
        CHECK(iv.min_margin >= rep.min_margin);
        CHECK(iv.lo < iv.hi);
        CHECK(iv.lipschitz >= 0.0);
        lo = std::min(lo, iv.min_margin);
    }
    CHECK(lo == doctest::Approx(rep.min_margin));
    CHECK_THROWS_AS(certify(1), std::invalid_argument);
}

}  // TEST_SUITE
