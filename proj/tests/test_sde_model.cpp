#include <catch_amalgamated.hpp>

#include <cmath>

#include "lsplit/models.hpp"

using namespace lsplit;

TEST_CASE("built-in models pass the audit") {
    for (auto kind : {ModelKind::sis, ModelKind::nagumo, ModelKind::allen_cahn}) {
        for (double lambda : {1.0, 3.0, 4.0, 8.0}) {
            const auto report = audit_model(make_model(kind, lambda), 7);
            for (const auto& c : report.checks) {
                INFO(model_id(kind) << " lambda=" << lambda << " " << c.name << ": " << c.detail);
                CHECK(c.passed);
            }
            CHECK(report.checks.size() == 6);
        }
    }
}

TEST_CASE("escaping inverse transform fails the range check") {
    SdeModel m = sis_model({4.0, 0.5});
    m.inverse_transform = [](double y) { return y; };
    const auto report = audit_model(m, 7);
    REQUIRE(report.find("inverse-range") != nullptr);
    CHECK_FALSE(report.find("inverse-range")->passed);
    CHECK_FALSE(report.all_passed());
}

TEST_CASE("sign-changing diffusion fails the sign check") {
    SdeModel m = allen_cahn_model({3.0});
    m.diffusion = [](double x) { return x; };
    CHECK_FALSE(audit_model(m, 5).find("diffusion-sign")->passed);
}

TEST_CASE("wrong drift bound is caught") {
    SdeModel m = sis_model({4.0, 0.5});
    m.drift_bound = 1.0;
    CHECK_FALSE(audit_model(m, 5).find("drift-bound")->passed);
}

TEST_CASE("inconsistent split drift is caught") {
    SdeModel m = nagumo_model({4.0, 0.5});
    m.split_constant += 0.1;
    CHECK_FALSE(audit_model(m, 5).find("drift-consistency")->passed);
}

TEST_CASE("SIS drift over diffusion at boundary probes") {
    const double lambda = 4.0;
    const auto m = sis_model({lambda, 0.5});
    for (int k = 2; k <= 8; ++k) {
        for (double x : {std::pow(10.0, -k), 1.0 - std::pow(10.0, -k)}) {
            CHECK(std::abs(m.drift(x) / m.diffusion(x)) <= 1.0 / lambda + 1e-12);
        }
    }
}

TEST_CASE("audit needs enough probes") { CHECK_THROWS_AS(audit_model(sis_model({}), 2), std::invalid_argument); }
