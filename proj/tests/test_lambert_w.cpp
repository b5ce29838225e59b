#include <catch_amalgamated.hpp>

#include <cmath>

#include "lsplit/lambert_w.hpp"
#include "oracles.hpp"

using namespace lsplit;

TEST_CASE("lambert w special values") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(std::abs(lambert_w0(std::exp(1.0)) - 1.0) < 1e-15);
    const double w1 = oracle::bisect([](double w) { return w * std::exp(w) - 1.0; }, 0.0, 1.0);
    CHECK(std::abs(w1 - 0.567143290409783) < 1e-14);
    CHECK(std::abs(lambert_w0(1.0) - w1) < 1e-14);
}

TEST_CASE("lambert w rejects bad arguments") {
    CHECK_THROWS_AS(lambert_w0(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(lambert_w0(std::nan("")), std::invalid_argument);
}

TEST_CASE("defining identity on a log grid") {
    double prev = -1.0;
    for (int i = 0; i <= 6000; ++i) {
        const double x = std::pow(10.0, -300.0 + 0.1 * i);
        const double w = lambert_w0(x);
        INFO("x = " << x);
        REQUIRE(std::abs(w * std::exp(w) - x) / (1.0 + x) <= 1e-12);
        REQUIRE(w > prev);
        prev = w;
    }
}

TEST_CASE("log form") {
    CHECK(std::abs(lambert_w0_from_log(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(lambert_w0_from_log(0.0) - lambert_w0(1.0)) < 1e-15);
    const double ref = oracle::newton([](double w) { return w + std::log(w) - 800.0; },
                                      [](double w) { return 1.0 + 1.0 / w; }, 800.0);
    CHECK(std::abs(ref - 793.32376857848894) < 1e-10);
    CHECK(std::abs(lambert_w0_from_log(800.0) - ref) <= 1e-13 * ref);
    for (double lx = std::log(1e-6); lx <= std::log(1e6); lx += 0.01) {
        const double a = lambert_w0_from_log(lx);
        const double b = lambert_w0(std::exp(lx));
        REQUIRE(std::abs(a - b) <= 1e-10 * std::abs(b));
    }
}
