#include "lsplit/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsplit {
namespace {

constexpr int kNewtonIterations = 60;
constexpr int kBisectionIterations = 200;
constexpr double kResidualTolerance = 1e-12;

std::vector<double> checked_increments(const TimeGrid& grid, std::span<const double> increments) {
    if (increments.size() != grid.steps) {
        throw std::invalid_argument("simulate: expected " + std::to_string(grid.steps) + " increments, got " +
                                    std::to_string(increments.size()));
    }
    return {increments.begin(), increments.end()};
}

LsVariant variant_of(SchemeKind scheme) {
    return scheme == SchemeKind::ls_exact ? LsVariant::exact : LsVariant::euler;
}

}  // namespace

SchemeKind scheme_from_id(std::string_view id) {
    if (id == "ls-exact") return SchemeKind::ls_exact;
    if (id == "ls-euler") return SchemeKind::ls_euler;
    if (id == "em") return SchemeKind::em;
    if (id == "sem") return SchemeKind::sem;
    if (id == "te") return SchemeKind::te;
    throw std::invalid_argument("unknown scheme '" + std::string(id) + "' (valid: ls-exact, ls-euler, em, sem, te)");
}

std::string_view scheme_id(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::ls_exact: return "ls-exact";
        case SchemeKind::ls_euler: return "ls-euler";
        case SchemeKind::em: return "em";
        case SchemeKind::sem: return "sem";
        case SchemeKind::te: return "te";
    }
    return "unknown";
}

bool is_splitting(SchemeKind kind) noexcept { return kind == SchemeKind::ls_exact || kind == SchemeKind::ls_euler; }

double euler_ode_substep(const ScalarMap& transformed_drift, double y, double dt) {
    return y + dt * transformed_drift(y);
}

double euler_ode_substeps(const ScalarMap& transformed_drift, double y, double dt, int count) {
    if (count < 1) throw std::invalid_argument("euler_ode_substeps: count must be >= 1");
    const double h = dt / count;
    for (int i = 0; i < count; ++i) y = euler_ode_substep(transformed_drift, y, h);
    return y;
}

double ls_step(const SdeModel& model, LsVariant variant, double y, double dt, double dB, int euler_substeps) {
    double advanced = 0.0;
    if (variant == LsVariant::exact) {
        if (!model.has_exact_flow()) {
            throw UnsupportedOperation("ls_step: model '" + model.id + "' has no exact flow");
        }
        advanced = model.exact_flow(y, dt);
    } else {
        advanced = euler_ode_substeps(model.transformed_drift, y, dt, euler_substeps);
    }
    return advanced + model.split_constant * dt + model.transformed_noise() * dB;
}

double em_step(const SdeModel& model, double x, double dt, double dB) {
    return x + model.drift(x) * dt + model.diffusion(x) * dB;
}

double sem_step(const SdeModel& model, double x, double dt, double dB) {
    const double rhs = x + model.diffusion(x) * dB;
    if (dt == 0.0) return rhs;

    const auto residual = [&](double xi) { return xi - dt * model.drift(xi) - rhs; };
    const auto tolerance = [](double xi) { return kResidualTolerance * (1.0 + std::abs(xi)); };

    const double predictor = rhs + dt * model.drift(x);
    double xi = predictor;
    double r = residual(xi);
    for (int it = 0; it < kNewtonIterations && std::isfinite(r); ++it) {
        if (std::abs(r) <= tolerance(xi)) return xi;
        const double h = 1e-7 * (1.0 + std::abs(xi));
        const double slope = 1.0 - dt * (model.drift(xi + h) - model.drift(xi - h)) / (2.0 * h);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        double step = r / slope;
        double candidate = xi - step;
        double r_candidate = residual(candidate);
        int halvings = 0;
        while (!(std::abs(r_candidate) < std::abs(r)) && halvings < 40) {
            step *= 0.5;
            candidate = xi - step;
            r_candidate = residual(candidate);
            ++halvings;
        }
        if (!(std::abs(r_candidate) < std::abs(r))) break;
        xi = candidate;
        r = r_candidate;
    }
    if (std::isfinite(r) && std::abs(r) <= tolerance(xi)) return xi;

    // Bisection fallback around the predictor.
    const double half_width = 4.0 * (std::abs(model.drift(x)) + 1.0) * dt;
    double lo = predictor - half_width;
    double hi = predictor + half_width;
    double r_lo = residual(lo);
    double r_hi = residual(hi);
    if (!(std::isfinite(r_lo) && std::isfinite(r_hi)) || std::signbit(r_lo) == std::signbit(r_hi)) {
        std::ostringstream os;
        os << "sem_step: no root bracketed near predictor " << predictor << " (x=" << x << ", dt=" << dt
           << ", dB=" << dB << ")";
        throw SolverFailure(os.str(), std::abs(r));
    }
    double mid = 0.5 * (lo + hi);
    double r_mid = residual(mid);
    for (int it = 0; it < kBisectionIterations; ++it) {
        mid = 0.5 * (lo + hi);
        r_mid = residual(mid);
        if (std::abs(r_mid) <= tolerance(mid) || mid == lo || mid == hi) break;
        if (std::signbit(r_mid) == std::signbit(r_lo)) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
    if (!(std::abs(r_mid) <= tolerance(mid))) {
        throw SolverFailure("sem_step: bisection stalled above tolerance", std::abs(r_mid));
    }
    return mid;
}

double te_step(const SdeModel& model, double x, double dt, double dB, std::size_t total_steps) {
    if (total_steps == 0) throw std::invalid_argument("te_step: total step count must be >= 1");
    const double f = model.drift(x);
    const double g = model.diffusion(x);
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(total_steps));
    const double taming = 1.0 + inv_sqrt_m * std::abs(f) + inv_sqrt_m * g * g;
    return x + (f * dt + g * dB) / taming;
}

Trajectory simulate_trajectory(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& grid,
                               std::span<const double> increments, SimulationOptions options) {
    const auto dB = checked_increments(grid, increments);
    Trajectory traj;
    traj.grid = grid;
    traj.scheme = scheme;
    traj.values.reserve(grid.steps + 1);
    traj.values.push_back(x0);

    if (is_splitting(scheme)) {
        if (!model.domain.contains(x0)) {
            throw std::invalid_argument("simulate_trajectory: splitting schemes need x0 strictly inside the domain");
        }
        if (scheme == SchemeKind::ls_exact && !model.has_exact_flow()) {
            throw UnsupportedOperation("simulate_trajectory: model '" + model.id + "' has no exact flow");
        }
        const LsVariant variant = variant_of(scheme);
        traj.y_values.reserve(grid.steps + 1);
        double y = model.transform(x0);
        traj.y_values.push_back(y);
        for (std::size_t m = 0; m < grid.steps; ++m) {
            y = ls_step(model, variant, y, grid.dt, dB[m], options.euler_substeps);
            traj.y_values.push_back(y);
            traj.values.push_back(model.inverse_transform(y));
        }
        return traj;
    }

    if (!std::isfinite(x0)) throw std::invalid_argument("simulate_trajectory: x0 must be finite");
    double x = x0;
    for (std::size_t m = 0; m < grid.steps; ++m) {
        switch (scheme) {
            case SchemeKind::em: x = em_step(model, x, grid.dt, dB[m]); break;
            case SchemeKind::sem: x = sem_step(model, x, grid.dt, dB[m]); break;
            case SchemeKind::te: x = te_step(model, x, grid.dt, dB[m], grid.steps); break;
            default: break;
        }
        traj.values.push_back(x);
    }
    return traj;
}

double reconstruct_via_representation(const SdeModel& model, double x0, const TimeGrid& grid,
                                      std::span<const double> increments, int euler_substeps) {
    const auto dB = checked_increments(grid, increments);
    if (!model.domain.contains(x0)) {
        throw std::invalid_argument("reconstruct_via_representation: x0 must lie strictly inside the domain");
    }
    const double y0 = model.transform(x0);

    // Recursion states feed the substeps; the sums are kept apart and only
    // combined at the end.
    double state = y0;
    double defect_sum = 0.0;  // sum of yhat_k(t_{k+1}) - ytilde_k(t_{k+1})
    double drift_sum = 0.0;   // sum of ytilde_k(t_{k+1}) - Y_k = int H(ytilde_k)
    double brownian = 0.0;    // B(t_M)
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double approx = euler_ode_substeps(model.transformed_drift, state, grid.dt, euler_substeps);
        const double exact = model.has_exact_flow() ? model.exact_flow(state, grid.dt) : approx;
        defect_sum += approx - exact;
        drift_sum += exact - state;
        brownian += dB[k];
        state = approx + model.split_constant * grid.dt + model.transformed_noise() * dB[k];
    }
    const double t_end = static_cast<double>(grid.steps) * grid.dt;
    return y0 + defect_sum + drift_sum + model.split_constant * t_end + model.transformed_noise() * brownian;
}

SubstepReport estimate_substep_constant(const SdeModel& model, double max_dt, int euler_substeps) {
    if (!model.has_exact_flow()) {
        throw UnsupportedOperation("estimate_substep_constant: model '" + model.id + "' has no exact flow");
    }
    if (!(max_dt > 0.0)) throw std::invalid_argument("estimate_substep_constant: max_dt must be positive");
    constexpr int kStarts = 401;
    constexpr int kTimes = 8;
    double k = 0.0;
    for (int i = 0; i < kStarts; ++i) {
        const double y0 = -20.0 + 40.0 * static_cast<double>(i) / (kStarts - 1);
        for (int j = 1; j <= kTimes; ++j) {
            const double t = max_dt * static_cast<double>(j) / kTimes;
            const double err = std::abs(euler_ode_substeps(model.transformed_drift, y0, t, euler_substeps) -
                                        model.exact_flow(y0, t));
            k = std::max(k, err / (std::sqrt(1.0 + y0 * y0) * t * t));
        }
    }
    return {k};
}

bool exceeds_step_restriction(const SubstepReport& report, double horizon, double dt) noexcept {
    return report.substep_constant * horizon * dt > 1.0;
}

}  // namespace lsplit
