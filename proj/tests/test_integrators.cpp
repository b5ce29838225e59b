#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lsplit/brownian.hpp"
#include "lsplit/experiments.hpp"
#include "oracles.hpp"

using namespace lsplit;

namespace {
const ModelKind kAll[] = {ModelKind::sis, ModelKind::nagumo, ModelKind::allen_cahn};
}

TEST_CASE("scheme ids") {
    for (auto k : {SchemeKind::ls_exact, SchemeKind::ls_euler, SchemeKind::em, SchemeKind::sem, SchemeKind::te}) {
        CHECK(scheme_from_id(scheme_id(k)) == k);
    }
    try {
        scheme_from_id("milstein");
        FAIL("no throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("milstein") != std::string::npos);
        CHECK(msg.find("ls-euler") != std::string::npos);
        CHECK(msg.find("te") != std::string::npos);
    }
}

TEST_CASE("euler substep") {
    CHECK(euler_ode_substep([](double) { return 0.0; }, 1.25, 0.1) == 1.25);
    const auto ac = allen_cahn_model({3.0});
    CHECK(euler_ode_substep(ac.transformed_drift, 0.0, 0.1) == 0.0);
    CHECK_THROWS_AS(euler_ode_substeps(ac.transformed_drift, 0.0, 0.1, 0), std::invalid_argument);
    const auto H = [](double y) { return -y; };
    CHECK(std::abs(euler_ode_substeps(H, 1.0, 1.0, 4) - std::pow(0.75, 4)) < 1e-15);
}

TEST_CASE("euler substep local error is second order") {
    const auto sis = sis_model({4.0, 0.5});
    const auto local = [&](double dt) {
        return std::abs(euler_ode_substep(sis.transformed_drift, 0.3, dt) - sis.exact_flow(0.3, dt));
    };
    const double ratio = local(1e-3) / local(5e-4);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("splitting step") {
    const auto sis = sis_model({4.0, 0.5});
    for (double y : {-3.0, 0.0, 2.5}) {
        CHECK(ls_step(sis, LsVariant::exact, y, 0.0, 0.0) == y);
        CHECK(ls_step(sis, LsVariant::euler, y, 0.0, 0.0) == y);
    }
    const auto ac = allen_cahn_model({3.0});
    CHECK(std::abs(ls_step(ac, LsVariant::exact, 0.0, 0.01, 0.7) - 3.0 * 0.7) < 1e-15);
    for (double y : {-2.0, 0.0, 0.3, 4.0}) {
        const double a = ls_step(sis, LsVariant::exact, y, 1e-5, 0.001);
        const double b = ls_step(sis, LsVariant::euler, y, 1e-5, 0.001);
        CHECK(std::abs(a - b) <= 1e-8);
    }
    SdeModel bare = sis;
    bare.exact_flow = nullptr;
    CHECK_THROWS_AS(ls_step(bare, LsVariant::exact, 0.0, 0.01, 0.0), UnsupportedOperation);
}

TEST_CASE("Euler-Maruyama step") {
    const auto sis = sis_model({4.0, 0.5});
    CHECK(em_step(sis, 0.42, 0.0, 0.0) == 0.42);
    CHECK(em_step(sis, 1.0, 0.01, 0.3) == 1.0);
    CHECK(std::abs(em_step(sis, 0.9, 0.008, -0.3) - 0.79272) < 1e-14);
}

TEST_CASE("semi-implicit step") {
    const auto ac = allen_cahn_model({3.0});
    CHECK(sem_step(ac, 0.5, 0.0, 0.02) == 0.5 + ac.diffusion(0.5) * 0.02);

    const double rhs = 0.5 + 3.0 * 0.75 * 0.02;
    const double dt = 1e-3;
    const double root = oracle::bisect([&](double xi) { return xi - dt * (xi - xi * xi * xi) - rhs; }, 0.0, 1.0);
    CHECK(std::abs(sem_step(ac, 0.5, dt, 0.02) - root) <= 1e-10);

    const auto sis = sis_model({4.0, 0.5});
    CHECK(sem_step(sis, 0.0, 0.01, 0.0) == 0.0);

    // Difference to EM shrinks linearly in dt at fixed (x, dB).
    const double d1 = std::abs(sem_step(sis, 0.7, 1e-3, 0.05) - em_step(sis, 0.7, 1e-3, 0.05));
    const double d2 = std::abs(sem_step(sis, 0.7, 5e-4, 0.05) - em_step(sis, 0.7, 5e-4, 0.05));
    CHECK(d1 / d2 > 1.8);
    CHECK(d1 / d2 < 2.2);
}

TEST_CASE("semi-implicit failure is reported") {
    SdeModel m = sis_model({4.0, 0.5});
    m.drift = [](double x) { return 10.0 * x + 1.0; };  // xi - dt f(xi) is constant: no root
    CHECK_THROWS_AS(sem_step(m, 0.6, 0.1, 0.0), SolverFailure);
}

TEST_CASE("tamed step") {
    const auto sis = sis_model({4.0, 0.5});
    CHECK(te_step(sis, 1.0, 0.01, 0.4, 100) == 1.0);
    CHECK(te_step(sis, 0.0, 0.01, 0.4, 100) == 0.0);

    const double f = 0.9 * 0.1;
    const double g = 4.0 * f;
    const double den = 1.0 + (f + g * g) / std::sqrt(125.0);
    const double expected = 0.9 + (f * 0.008 + g * -0.3) / den;
    CHECK(std::abs(te_step(sis, 0.9, 0.008, -0.3, 125) - expected) < 1e-15);
    // Written out: 0.9 + (0.00072 - 0.108) / (1 + 0.2196 / sqrt(125)).
    CHECK(std::abs(expected - (0.9 + (0.00072 - 0.108) / (1.0 + 0.2196 / std::sqrt(125.0)))) < 1e-15);

    // Tamed drift is bounded by sqrt(M).
    const auto ac = allen_cahn_model({3.0});
    for (double x = -50.0; x <= 50.0; x += 0.5) {
        const double fx = ac.drift(x);
        const double gx = ac.diffusion(x);
        const double taming = 1.0 + (std::abs(fx) + gx * gx) / std::sqrt(100.0);
        CHECK(taming >= 1.0);
        CHECK(std::abs(fx / taming) <= std::sqrt(100.0));
        CHECK(std::abs(te_step(ac, x, 1.0, 0.0, 100) - x) <= std::sqrt(100.0) + 1e-12);
    }

    CHECK(std::abs(te_step(sis, 0.9, 0.008, -0.3, std::size_t{100000000000000}) - em_step(sis, 0.9, 0.008, -0.3)) <= 1e-6);
}

TEST_CASE("trajectory edges") {
    const auto ac = allen_cahn_model({3.0});
    const TimeGrid empty{0.0, 0, 0.0, {0.0}};
    const auto t0 = simulate_trajectory(ac, SchemeKind::ls_exact, 0.2, empty, {});
    CHECK(t0.values == std::vector<double>{0.2});

    const auto grid = make_uniform_grid(1.0, 20);
    const std::vector<double> zeros(20, 0.0);
    const auto flat = simulate_trajectory(ac, SchemeKind::ls_exact, 0.0, grid, zeros);
    for (double v : flat.values) CHECK(v == 0.0);

    CHECK_THROWS_AS(simulate_trajectory(ac, SchemeKind::em, 0.0, grid, std::vector<double>(19, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_trajectory(ac, SchemeKind::ls_euler, 1.0, grid, zeros), std::invalid_argument);
}

TEST_CASE("splitting paths stay strictly inside") {
    const auto grid = make_uniform_grid(1.0, 1000);
    for (auto kind : kAll) {
        for (double lambda : {3.0, 4.0, 6.0, 7.0, 8.0}) {
            const auto model = make_model(kind, lambda);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto path = sample_brownian_path(seed, 0, 1000, 1.0);
                const double x0 = draw_initial(InitialCondition::uniform(), model.domain, seed, 0);
                for (auto scheme : {SchemeKind::ls_euler, SchemeKind::ls_exact}) {
                    const auto traj = simulate_trajectory(model, scheme, x0, grid, path.increments);
                    for (double v : traj.values) REQUIRE(model.domain.contains(v));
                }
            }
        }
    }
}

TEST_CASE("fine path coarsened equals the direct coarse input") {
    const auto model = sis_model({6.0, 0.5});
    const auto path = sample_brownian_path(3, 0, 800, 1.0);
    const auto coarse = coarsen_increments(path, 8);
    const auto grid = make_uniform_grid(1.0, 100);
    const auto a = simulate_trajectory(model, SchemeKind::ls_euler, 0.4, grid, coarse);
    const auto b = simulate_trajectory(model, SchemeKind::ls_euler, 0.4, grid, coarsen_increments(path.increments, 8));
    CHECK(a.values == b.values);
}

TEST_CASE("representation formula") {
    for (auto kind : {ModelKind::sis, ModelKind::nagumo}) {
        const auto model = make_model(kind, 4.0);
        const auto grid = make_uniform_grid(1.0, 100);
        const auto path = sample_brownian_path(17, 2, 100, 1.0);
        const auto traj = simulate_trajectory(model, SchemeKind::ls_euler, 0.35, grid, path.increments);
        const double y = traj.y_values.back();
        CHECK(std::abs(reconstruct_via_representation(model, 0.35, grid, path.increments) - y) <= 1e-10 * (1 + std::abs(y)));
    }
    const auto model = sis_model({4.0, 0.5});
    const auto one = make_uniform_grid(0.01, 1);
    const double inc[] = {0.05};
    CHECK(std::abs(reconstruct_via_representation(model, 0.6, one, inc) -
                   ls_step(model, LsVariant::euler, model.transform(0.6), 0.01, 0.05)) < 1e-14);
}

TEST_CASE("substep constant") {
    for (auto kind : kAll) {
        const auto model = make_model(kind, 4.0);
        const auto report = estimate_substep_constant(model, 1e-3);
        CHECK(report.substep_constant > 0.0);
        CHECK(std::isfinite(report.substep_constant));
        CHECK_FALSE(exceeds_step_restriction(report, 1.0, 1e-6));
        CHECK(exceeds_step_restriction(report, 1.0, 2.0 / report.substep_constant));
    }
}
