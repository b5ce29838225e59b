#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "lsplit/brownian.hpp"

using namespace lsplit;

TEST_CASE("same key gives the same path") {
    const auto a = sample_brownian_path(7, 3, 1000, 1.0);
    const auto b = sample_brownian_path(7, 3, 1000, 1.0);
    CHECK(a.increments == b.increments);
    const auto c = sample_brownian_path(7, 4, 1000, 1.0);
    CHECK(a.increments != c.increments);
    const auto d = sample_brownian_path(8, 3, 1000, 1.0);
    CHECK(a.increments != d.increments);
}

TEST_CASE("increment variance matches dt") {
    const std::size_t n = std::size_t{1} << 20;
    const auto p = sample_brownian_path(1, 0, n, 1.0);
    double mean = 0.0;
    for (double v : p.increments) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : p.increments) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    CHECK(std::abs(var / p.fine_dt() - 1.0) < 0.01);
}

TEST_CASE("terminal values have mean zero") {
    double sum = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        const auto p = sample_brownian_path(1, i, 16, 1.0);
        sum += std::accumulate(p.increments.begin(), p.increments.end(), 0.0);
    }
    CHECK(std::abs(sum / samples) < 0.03);
}

TEST_CASE("coarsening") {
    const auto p = sample_brownian_path(11, 0, 64, 1.0);

    SECTION("factor one is the identity") { CHECK(coarsen_increments(p, 1) == p.increments); }

    SECTION("full factor is the left to right total") {
        double total = 0.0;
        for (double v : p.increments) total += v;
        const auto one = coarsen_increments(p, 64);
        REQUIRE(one.size() == 1);
        CHECK(one[0] == total);
        CHECK(cumulative_path(p.increments).back() == total);
    }

    SECTION("nested coarsening composes") {
        const auto ab = coarsen_increments(coarsen_increments(p, 4), 8);
        const auto direct = coarsen_increments(p, 32);
        REQUIRE(ab.size() == direct.size());
        for (std::size_t i = 0; i < ab.size(); ++i) CHECK(std::abs(ab[i] - direct[i]) <= 1e-14);
    }

    SECTION("factor must divide") { CHECK_THROWS_AS(coarsen_increments(p, 5), std::invalid_argument); }
}

TEST_CASE("cumulative path starts at zero") {
    const double inc[] = {0.5, -0.25, 1.0};
    const auto b = cumulative_path(inc);
    REQUIRE(b.size() == 4);
    CHECK(b[0] == 0.0);
    CHECK(b[3] == 1.25);
}

TEST_CASE("uniform draws are open, repeatable and roughly uniform") {
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = sample_uniform_open(5, i);
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000 - 0.5) < 0.01);
    CHECK(sample_uniform_open(5, 1) == sample_uniform_open(5, 1));
}
