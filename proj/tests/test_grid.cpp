#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "lsplit/grid.hpp"

using namespace lsplit;
using Catch::Matchers::WithinAbs;

TEST_CASE("uniform grid of four steps") {
    const auto g = make_uniform_grid(1.0, 4);
    CHECK(g.dt == 0.25);
    REQUIRE(g.points.size() == 5);
    const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int m = 0; m < 5; ++m) CHECK(g.points[m] == expected[m]);
}

TEST_CASE("single step grid") {
    const auto g = make_uniform_grid(1.0, 1);
    REQUIRE(g.points.size() == 2);
    CHECK(g.points[0] == 0.0);
    CHECK(g.points[1] == 1.0);
}

TEST_CASE("path comparison grid") {
    const auto g = make_uniform_grid(0.4, 50);
    CHECK_THAT(g.dt, WithinAbs(0.008, 1e-17));
    CHECK(g.points.back() == 0.4);
    CHECK(g.steps == 50);
}

TEST_CASE("grid rejects bad input") {
    CHECK_THROWS_AS(make_uniform_grid(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(-1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(std::nan(""), 4), std::invalid_argument);
}

TEST_CASE("domain membership is strict") {
    const Domain d(0.0, 1.0);
    CHECK(d.contains(0.5));
    CHECK_FALSE(d.contains(0.0));
    CHECK_FALSE(d.contains(1.0));
    CHECK_FALSE(d.contains(std::nan("")));
    CHECK(d.width() == 1.0);
    CHECK_THROWS_AS(Domain(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("nudge moves boundary values inside") {
    const Domain d(-1.0, 1.0);
    CHECK(d.contains(nudge_into_interior(1.0, d)));
    CHECK(d.contains(nudge_into_interior(-1.0, d)));
    CHECK(nudge_into_interior(1.0, d) == std::nextafter(1.0, 0.0));
    CHECK(nudge_into_interior(0.3, d) == 0.3);
}
