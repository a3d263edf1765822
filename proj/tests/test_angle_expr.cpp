#include <doctest.h>

#include "hvlab/angle_expr.hpp"
#include "hvlab/angles.hpp"
#include "hvlab/errors.hpp"

using namespace hvlab;

TEST_CASE("angle expressions") {
    CHECK(parse_angle_expr("pi") == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(parse_angle_expr("pi/8") == doctest::Approx(kPi / 8.0).epsilon(1e-15));
    CHECK(parse_angle_expr("3*pi/8") == doctest::Approx(3.0 * kPi / 8.0).epsilon(1e-15));
    CHECK(parse_angle_expr("0.5") == 0.5);
    CHECK(parse_angle_expr("-pi/4") == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(parse_angle_expr("2*(pi/8+pi/8)") == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(parse_angle_expr(" 1e-3 ") == 1e-3);
    CHECK(parse_angle_expr("pi-pi") == 0.0);
    CHECK(parse_angle_expr("1/2/2") == 0.25);  // left associative
}

TEST_CASE("angle expression errors") {
    CHECK_THROWS_AS(parse_angle_expr(""), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("foo"), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("pi//2"), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("(pi"), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("pi)"), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_angle_expr("2 3"), ConfigError);
}

TEST_CASE("angle grids") {
    const auto grid = parse_angle_grid("0:pi:pi/16");
    REQUIRE(grid.size() == 17);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(grid[4] == doctest::Approx(kPi / 4.0).epsilon(1e-12));

    const auto single = parse_angle_grid("pi/4:pi/4:pi");
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(kPi / 4.0));

    CHECK_THROWS_AS(parse_angle_grid("0:pi"), ConfigError);
    CHECK_THROWS_AS(parse_angle_grid("0:pi:0"), ConfigError);
    CHECK_THROWS_AS(parse_angle_grid("pi:0:pi/16"), ConfigError);
    CHECK_THROWS_AS(parse_angle_grid("0:1:0.3"), ConfigError);  // step must divide
}
