#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ddorbit/geometry.hpp"
#include "ddorbit/test_paths.hpp"

using namespace ddorbit;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(Vec2 a, Vec2 b, double tol) {
    return std::fabs(a.x - b.x) <= tol && std::fabs(a.y - b.y) <= tol;
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("rotation is counterclockwise and orthogonal") {
    CHECK(close(rotate({1, 0}, kPi / 2), {0, 1}, 1e-15));
    CHECK(close(rotate({0, 1}, kPi / 2), {-1, 0}, 1e-15));
    CHECK(close(rotate({1, 0}, kPi), {-1, 0}, 1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        Vec2 v{u(rng), u(rng)};
        double a = u(rng), b = u(rng);
        CHECK(rotate(v, a).norm() == doctest::Approx(v.norm()).epsilon(1e-14));
        CHECK(close(rotate(rotate(v, a), b), rotate(v, a + b), 1e-12));
        CHECK(close(rotate(rotate(v, a), -a), v, 1e-12));
        // reflection conjugates rotation into its inverse
        CHECK(close(reflect_x(rotate(v, a)), rotate(reflect_x(v), -a), 1e-12));
    }
}

TEST_CASE("rotating the first candidate endpoint by its anchor angle") {
    Vec2 q1 = builtin_tables()[0].nodes[10].q1;
    Vec2 r = rotate(q1, 0.004 * kPi);
    CHECK(r.x == doctest::Approx(-14.68340597701760).epsilon(1e-13));
    CHECK(r.y == doctest::Approx(-0.6487615086121072).epsilon(1e-13));
}

TEST_CASE("reduced configuration exposes the parallelogram") {
    ReducedConfig c{{1.0, 2.0}, {-3.0, 4.0}};
    CHECK(c.q3().x == 3.0);
    CHECK(c.q3().y == -4.0);
    CHECK(c.q4().x == -1.0);
    CHECK(c.q4().y == -2.0);
    CHECK(c.body(1).x == c.q1.x);
    CHECK(c.body(2).y == c.q2.y);
    CHECK(c.body(3).x == -c.body(2).x);
    CHECK(c.body(4).x == -c.body(1).x);
}

TEST_CASE("start line ordering and signs") {
    ReducedConfig c = start_config({0.7, 1.3});
    CHECK(c.q1.x == doctest::Approx(-2.0));
    CHECK(c.q2.x == doctest::Approx(-0.7));
    CHECK(c.q1.y == 0.0);
    CHECK(c.q2.y == 0.0);
    CHECK(c.q1.x <= c.q2.x);
    CHECK(c.q2.x <= 0.0);
    CHECK_THROWS_AS(start_config({-0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(start_config({0.1, -1.0}), std::invalid_argument);
    // degenerate parameters are allowed (collinear collisions are the
    // boundary of the admissible set, not outside it)
    CHECK_NOTHROW(start_config({0.0, 0.0}));
}

TEST_CASE("end rectangle geometry") {
    double theta = 0.3;
    ReducedConfig c = end_config({1.2, 0.5, theta});
    CHECK(close(c.q1, rotate({-1.2, -0.5}, theta), 1e-15));
    CHECK(close(c.q2, rotate({-1.2, 0.5}, theta), 1e-15));
    // the four bodies form a rectangle: diagonals equal and bisecting
    CHECK((c.q1 - c.q3()).norm() == doctest::Approx((c.q2 - c.q4()).norm()));
    CHECK_THROWS_AS(end_config({-1.0, 0.5, theta}), std::invalid_argument);
    CHECK_THROWS_AS(end_config({1.0, -0.5, theta}), std::invalid_argument);
    ReducedConfig s = end_config_signed({-1.0, 0.5, theta});
    CHECK(close(s.q1, rotate({1.0, -0.5}, theta), 1e-15));
}

TEST_CASE("membership recovers parameters on both families") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 1.4);
    for (int i = 0; i < 100; ++i) {
        double theta = ang(rng);

        StartParams sp{u(rng), u(rng)};
        Membership ms =
            membership(start_config(sp), BoundaryFamily::CollinearAxis, theta, 1e-12);
        CHECK(ms.ok);
        CHECK(ms.p1 == doctest::Approx(sp.a1).epsilon(1e-12));
        CHECK(ms.p2 == doctest::Approx(sp.a2).epsilon(1e-12));

        EndParams ep{u(rng), u(rng), theta};
        Membership me = membership(end_config(ep), BoundaryFamily::RotatedRectangle,
                                   theta, 1e-10);
        CHECK(me.ok);
        CHECK(me.p1 == doctest::Approx(ep.b1).epsilon(1e-9));
        CHECK(me.p2 == doctest::Approx(ep.b2).epsilon(1e-9));

        EndParams es{u(rng) - 1.5, u(rng) - 1.5, theta};
        Membership msig = membership(end_config_signed(es),
                                     BoundaryFamily::RotatedRectangleSigned, theta,
                                     1e-10);
        CHECK(msig.ok);
        CHECK(msig.p1 == doctest::Approx(es.b1).epsilon(1e-9));
    }
}

TEST_CASE("membership rejects off-family configurations") {
    ReducedConfig c = start_config({1.0, 1.0});
    c.q1.y = 1e-6;  // off the axis
    CHECK_FALSE(membership(c, BoundaryFamily::CollinearAxis, 0.0, 1e-9).ok);

    ReducedConfig r = end_config({1.0, 0.5, 0.3});
    r.q2 += {1e-5, 0.0};  // breaks the rectangle
    CHECK_FALSE(membership(r, BoundaryFamily::RotatedRectangle, 0.3, 1e-9).ok);

    // negative parameters are off the constrained rectangle family but on
    // the signed one
    ReducedConfig s = end_config_signed({-0.4, 0.7, 0.3});
    CHECK_FALSE(membership(s, BoundaryFamily::RotatedRectangle, 0.3, 1e-9).ok);
    CHECK(membership(s, BoundaryFamily::RotatedRectangleSigned, 0.3, 1e-9).ok);
}

}  // TEST_SUITE
