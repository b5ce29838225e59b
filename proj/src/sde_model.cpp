#include "lsplit/sde_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lsplit {
namespace {

std::string fmt_value(const char* label, double v) {
    std::ostringstream os;
    os.precision(6);
    os << label << "=" << v;
    return os.str();
}

AuditCheck check_diffusion_sign(const SdeModel& m) {
    const Domain& d = m.domain;
    constexpr int kSamples = 199;
    int positive = 0;
    int negative = 0;
    for (int i = 1; i <= kSamples; ++i) {
        const double x = d.lower() + d.width() * static_cast<double>(i) / (kSamples + 1);
        const double g = m.diffusion(x);
        if (g > 0.0) ++positive;
        else if (g < 0.0) ++negative;
    }
    const bool ok = positive == kSamples || negative == kSamples;
    return {"diffusion-sign", ok,
            "positive=" + std::to_string(positive) + " negative=" + std::to_string(negative)};
}

AuditCheck check_boundary_ratio(const SdeModel& m, int probes) {
    const Domain& d = m.domain;
    double worst_change = 0.0;
    bool finite = true;
    for (int side = 0; side < 2; ++side) {
        double previous = 0.0;
        for (int k = 2; k <= probes + 1; ++k) {
            const double offset = d.width() * std::pow(10.0, -k);
            const double x = side == 0 ? d.lower() + offset : d.upper() - offset;
            const double ratio = m.drift(x) / m.diffusion(x);
            if (!std::isfinite(ratio)) finite = false;
            if (k == probes + 1) {
                worst_change = std::max(worst_change, std::abs(ratio - previous) / (1.0 + std::abs(previous)));
            }
            previous = ratio;
        }
    }
    return {"boundary-ratio", finite && worst_change <= 1e-3, fmt_value("relative change at deepest probe", worst_change)};
}

AuditCheck check_inverse_range(const SdeModel& m) {
    constexpr int kSamples = 2801;
    int outside = 0;
    double first_bad = std::nan("");
    for (int i = 0; i < kSamples; ++i) {
        const double y = -700.0 + 1400.0 * static_cast<double>(i) / (kSamples - 1);
        if (!m.domain.contains(m.inverse_transform(y))) {
            if (outside == 0) first_bad = y;
            ++outside;
        }
    }
    return {"inverse-range", outside == 0,
            "outside=" + std::to_string(outside) + (outside ? " " + fmt_value("first y", first_bad) : "")};
}

AuditCheck check_round_trip(const SdeModel& m) {
    constexpr int kSamples = 1601;
    double worst = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double y = -8.0 + 16.0 * static_cast<double>(i) / (kSamples - 1);
        const double err = std::abs(m.transform(m.inverse_transform(y)) - y) / (1.0 + std::abs(y));
        worst = std::max(worst, std::isfinite(err) ? err : INFINITY);
    }
    return {"round-trip", worst <= 1e-10, fmt_value("max scaled error", worst)};
}

// Ito: Y = Phi(X) with Phi' = sigma / g has drift sigma f/g - (sigma/2) g'.
AuditCheck check_drift_consistency(const SdeModel& m) {
    const Domain& d = m.domain;
    const double sigma = m.transformed_noise();
    const double h = 1e-6 * d.width();
    constexpr int kSamples = 99;
    double worst = 0.0;
    for (int i = 1; i <= kSamples; ++i) {
        const double x = d.lower() + d.width() * (0.005 + 0.99 * static_cast<double>(i) / (kSamples + 1));
        const double g = m.diffusion(x);
        const double dg = (m.diffusion(x + h) - m.diffusion(x - h)) / (2.0 * h);
        const double ito = sigma * m.drift(x) / g - 0.5 * sigma * dg;
        const double split = m.transformed_drift(m.transform(x)) + m.split_constant;
        worst = std::max(worst, std::abs(ito - split) / (1.0 + std::abs(ito)));
    }
    return {"drift-consistency", worst <= 1e-6, fmt_value("max scaled mismatch", worst)};
}

AuditCheck check_drift_bound(const SdeModel& m) {
    constexpr int kSamples = 10000;
    double sup = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double y = -50.0 + 100.0 * static_cast<double>(i) / (kSamples - 1);
        sup = std::max(sup, std::abs(m.transformed_drift(y) + m.split_constant));
    }
    for (double y : {-700.0, 700.0}) sup = std::max(sup, std::abs(m.transformed_drift(y) + m.split_constant));
    return {"drift-bound", sup <= m.drift_bound,
            fmt_value("sampled sup", sup) + " " + fmt_value("bound", m.drift_bound)};
}

}  // namespace

bool AuditReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
}

const AuditCheck* AuditReport::find(const std::string& name) const noexcept {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

AuditReport audit_model(const SdeModel& model, int probes) {
    if (probes < 3) throw std::invalid_argument("audit_model: probes must be >= 3");
    AuditReport report;
    report.checks.push_back(check_diffusion_sign(model));
    report.checks.push_back(check_boundary_ratio(model, probes));
    report.checks.push_back(check_inverse_range(model));
    report.checks.push_back(check_round_trip(model));
    report.checks.push_back(check_drift_consistency(model));
    report.checks.push_back(check_drift_bound(model));
    return report;
}

}  // namespace lsplit
