#include "lsplit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lsplit/brownian.hpp"
#include "lsplit/parallel.hpp"

namespace lsplit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SchemeKind default_reference(const SdeModel& model, SchemeKind scheme) {
    if (is_splitting(scheme)) return scheme;
    return model.has_exact_flow() ? SchemeKind::ls_exact : SchemeKind::ls_euler;
}

double moment_root(double sum_pow, std::size_t count, double p) {
    return std::pow(sum_pow / static_cast<double>(count), 1.0 / p);
}

}  // namespace

double draw_initial(const InitialCondition& init, const Domain& domain, std::uint64_t seed,
                    std::uint64_t sample_index) {
    if (init.kind == InitialCondition::Kind::fixed) {
        if (!domain.contains(init.value)) throw std::invalid_argument("fixed x0 must lie strictly inside the domain");
        return init.value;
    }
    const double u = sample_uniform_open(seed, sample_index);
    return nudge_into_interior(domain.lower() + domain.width() * u, domain);
}

std::size_t steps_for(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw std::invalid_argument("horizon and dt must be positive");
    const double ratio = horizon / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw std::invalid_argument("dt must divide T");
    }
    return static_cast<std::size_t>(rounded);
}

bool path_preserves_domain(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& grid,
                           std::span<const double> increments) {
    if (increments.size() != grid.steps) throw std::invalid_argument("path_preserves_domain: increment count mismatch");
    const Domain& d = model.domain;
    if (!d.contains(x0)) return false;

    if (is_splitting(scheme)) {
        const LsVariant variant = scheme == SchemeKind::ls_exact ? LsVariant::exact : LsVariant::euler;
        double y = model.transform(x0);
        for (std::size_t m = 0; m < grid.steps; ++m) {
            y = ls_step(model, variant, y, grid.dt, increments[m]);
            if (!d.contains(model.inverse_transform(y))) return false;
        }
        return true;
    }

    double x = x0;
    try {
        for (std::size_t m = 0; m < grid.steps; ++m) {
            switch (scheme) {
                case SchemeKind::em: x = em_step(model, x, grid.dt, increments[m]); break;
                case SchemeKind::sem: x = sem_step(model, x, grid.dt, increments[m]); break;
                case SchemeKind::te: x = te_step(model, x, grid.dt, increments[m], grid.steps); break;
                default: break;
            }
            if (!d.contains(x)) return false;
        }
    } catch (const SolverFailure&) {
        return false;
    }
    return true;
}

std::vector<BoundaryStats> boundary_experiment(const BoundaryExperimentConfig& config) {
    if (config.samples == 0) throw std::invalid_argument("boundary_experiment: need at least one sample");
    if (config.lambdas.empty() || config.schemes.empty()) {
        throw std::invalid_argument("boundary_experiment: need at least one lambda and one scheme");
    }
    const std::size_t steps = steps_for(config.horizon, config.dt);
    const TimeGrid grid = make_uniform_grid(config.horizon, steps);

    std::vector<SdeModel> models;
    models.reserve(config.lambdas.size());
    for (double lambda : config.lambdas) models.push_back(make_model(config.model, lambda));

    const std::size_t cells = config.lambdas.size() * config.schemes.size();
    // preserved_flags[sample][cell]
    std::vector<std::vector<char>> flags(config.samples, std::vector<char>(cells, 0));
    parallel_for_index(config.samples, config.threads, [&](std::size_t i) {
        const auto path = sample_brownian_path(config.seed, i, steps, config.horizon);
        const double x0 = draw_initial(config.init, models.front().domain, config.seed, i);
        for (std::size_t l = 0; l < models.size(); ++l) {
            for (std::size_t s = 0; s < config.schemes.size(); ++s) {
                flags[i][l * config.schemes.size() + s] =
                    path_preserves_domain(models[l], config.schemes[s], x0, grid, path.increments) ? 1 : 0;
            }
        }
    });

    std::vector<BoundaryStats> out;
    out.reserve(cells);
    for (std::size_t l = 0; l < models.size(); ++l) {
        for (std::size_t s = 0; s < config.schemes.size(); ++s) {
            BoundaryStats stats;
            stats.model_id = std::string(model_id(config.model));
            stats.scheme = config.schemes[s];
            stats.lambda = config.lambdas[l];
            stats.samples = config.samples;
            for (std::size_t i = 0; i < config.samples; ++i) stats.preserved += flags[i][l * config.schemes.size() + s];
            out.push_back(stats);
        }
    }
    return out;
}

Trajectory reference_trajectory(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& fine_grid,
                                std::span<const double> fine_increments, const TimeGrid& coarse_grid) {
    if (coarse_grid.steps == 0 || fine_grid.steps % coarse_grid.steps != 0 ||
        std::abs(fine_grid.horizon - coarse_grid.horizon) > 1e-12 * coarse_grid.horizon) {
        throw std::invalid_argument("reference_trajectory: fine grid does not nest the coarse grid");
    }
    const std::size_t factor = fine_grid.steps / coarse_grid.steps;
    const Trajectory fine = simulate_trajectory(model, scheme, x0, fine_grid, fine_increments);

    Trajectory coarse;
    coarse.grid = coarse_grid;
    coarse.scheme = scheme;
    coarse.values.reserve(coarse_grid.steps + 1);
    for (std::size_t m = 0; m <= coarse_grid.steps; ++m) {
        coarse.values.push_back(fine.values[m * factor]);
        if (!fine.y_values.empty()) coarse.y_values.push_back(fine.y_values[m * factor]);
    }
    return coarse;
}

double sup_error(const Trajectory& a, const Trajectory& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("sup_error: trajectories differ in length");
    double sup = 0.0;
    for (std::size_t m = 1; m < a.values.size(); ++m) {
        const double e = std::abs(a.values[m] - b.values[m]);
        if (std::isnan(e)) return kNaN;
        sup = std::max(sup, e);
    }
    return sup;
}

std::vector<std::vector<double>> coupled_sup_errors(const StrongErrorConfig& config) {
    if (config.dt_list.empty()) throw std::invalid_argument("strong error: dt_list is empty");
    if (config.ref_refinement == 0) throw std::invalid_argument("strong error: ref_refinement must be >= 1");
    if (config.samples == 0) throw std::invalid_argument("strong error: need at least one sample");
    for (std::size_t j = 1; j < config.dt_list.size(); ++j) {
        if (!(config.dt_list[j] < config.dt_list[j - 1])) {
            throw std::invalid_argument("strong error: dt_list must be strictly decreasing");
        }
    }

    const SdeModel model = make_model(config.model, config.lambda);
    const SchemeKind ref_scheme = config.reference_scheme.value_or(default_reference(model, config.scheme));

    std::vector<TimeGrid> grids;
    for (double dt : config.dt_list) grids.push_back(make_uniform_grid(config.horizon, steps_for(config.horizon, dt)));
    const std::size_t fine_steps = grids.back().steps * config.ref_refinement;
    for (const auto& g : grids) {
        if (fine_steps % g.steps != 0) {
            throw std::invalid_argument("strong error: reference grid does not nest every dt in dt_list");
        }
    }
    const TimeGrid fine_grid = make_uniform_grid(config.horizon, fine_steps);

    std::vector<std::vector<double>> errors(config.samples, std::vector<double>(grids.size(), 0.0));
    parallel_for_index(config.samples, config.threads, [&](std::size_t i) {
        const auto path = sample_brownian_path(config.seed, i, fine_steps, config.horizon);
        const double x0 = draw_initial(config.init, model.domain, config.seed, i);
        const Trajectory fine_ref = simulate_trajectory(model, ref_scheme, x0, fine_grid, path.increments);
        for (std::size_t j = 0; j < grids.size(); ++j) {
            const std::size_t factor = fine_steps / grids[j].steps;
            const auto coarse_dB = coarsen_increments(path, factor);
            const Trajectory approx = simulate_trajectory(model, config.scheme, x0, grids[j], coarse_dB);
            double sup = 0.0;
            for (std::size_t m = 1; m <= grids[j].steps; ++m) {
                sup = std::max(sup, std::abs(approx.values[m] - fine_ref.values[m * factor]));
            }
            errors[i][j] = sup;
        }
    });
    return errors;
}

ErrorReport strong_error_experiment(const StrongErrorConfig& config) {
    if (config.ref_refinement < 16) throw std::invalid_argument("strong error: ref_refinement must be >= 16");
    if (!(config.moment >= 1.0)) throw std::invalid_argument("strong error: moment order p must be >= 1");

    const auto per_sample = coupled_sup_errors(config);
    const SdeModel model = make_model(config.model, config.lambda);

    ErrorReport report;
    report.model_id = std::string(model_id(config.model));
    report.scheme = config.scheme;
    report.reference_scheme = config.reference_scheme.value_or(default_reference(model, config.scheme));
    report.lambda = config.lambda;
    report.moment = config.moment;
    report.dt_list = config.dt_list;
    report.samples = config.samples;
    report.reference_dt = config.horizon / static_cast<double>(steps_for(config.horizon, config.dt_list.back()) *
                                                               config.ref_refinement);

    const std::size_t n = config.samples;
    const std::size_t batches = std::max<std::size_t>(1, std::min(config.batches, n));
    const double p = config.moment;
    for (std::size_t j = 0; j < config.dt_list.size(); ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += std::pow(per_sample[i][j], p);
        report.errors.push_back(moment_root(total, n, p));

        // Contiguous index batches; the last one absorbs the remainder.
        std::vector<double> batch_estimates;
        const std::size_t per_batch = n / batches;
        for (std::size_t b = 0; b < batches; ++b) {
            const std::size_t begin = b * per_batch;
            const std::size_t end = b + 1 == batches ? n : begin + per_batch;
            double s = 0.0;
            for (std::size_t i = begin; i < end; ++i) s += std::pow(per_sample[i][j], p);
            batch_estimates.push_back(moment_root(s, end - begin, p));
        }
        double se = 0.0;
        if (batches > 1) {
            const double mean =
                std::accumulate(batch_estimates.begin(), batch_estimates.end(), 0.0) / static_cast<double>(batches);
            double var = 0.0;
            for (double e : batch_estimates) var += (e - mean) * (e - mean);
            var /= static_cast<double>(batches - 1);
            se = std::sqrt(var / static_cast<double>(batches));
        }
        report.std_errors.push_back(se);
    }

    const bool fittable = report.errors.size() >= 3 &&
                          std::all_of(report.errors.begin(), report.errors.end(), [](double e) { return e > 0.0; });
    report.fitted_slope = fittable ? fit_convergence_rate(report.dt_list, report.errors) : kNaN;
    return report;
}

double fit_convergence_rate(std::span<const double> dt_list, std::span<const double> errors) {
    if (dt_list.size() != errors.size()) throw std::invalid_argument("fit_convergence_rate: size mismatch");
    if (dt_list.size() < 3) throw std::invalid_argument("fit_convergence_rate: need at least 3 points");
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
            throw std::invalid_argument("fit_convergence_rate: errors must be positive and finite");
        }
        if (!(dt_list[i] > 0.0)) throw std::invalid_argument("fit_convergence_rate: dt values must be positive");
    }
    const auto n = static_cast<double>(dt_list.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        sx += std::log(dt_list[i]);
        sy += std::log(errors[i]);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        const double dx = std::log(dt_list[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(errors[i]) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_convergence_rate: dt values must not all be equal");
    return sxy / sxx;
}

PathComparison path_comparison(ModelKind model_kind, double lambda, double x0, double horizon, std::size_t steps,
                               std::uint64_t seed, SchemeKind ls_scheme) {
    if (!is_splitting(ls_scheme)) throw std::invalid_argument("path_comparison: ls_scheme must be a splitting scheme");
    const SdeModel model = make_model(model_kind, lambda);
    PathComparison out;
    out.grid = make_uniform_grid(horizon, steps);
    out.ls_scheme = ls_scheme;
    const auto path = sample_brownian_path(seed, 0, steps, horizon);

    out.ls = simulate_trajectory(model, ls_scheme, x0, out.grid, path.increments).values;
    out.em = simulate_trajectory(model, SchemeKind::em, x0, out.grid, path.increments).values;
    out.te = simulate_trajectory(model, SchemeKind::te, x0, out.grid, path.increments).values;

    out.sem.assign(steps + 1, kNaN);
    out.sem[0] = x0;
    double x = x0;
    try {
        for (std::size_t m = 0; m < steps; ++m) {
            x = sem_step(model, x, out.grid.dt, path.increments[m]);
            out.sem[m + 1] = x;
        }
    } catch (const SolverFailure&) {
        // Remaining entries stay NaN.
    }
    return out;
}

double splitting_path_bound(double substep_constant, double drift_bound, double horizon, double dt, double y0,
                            double max_abs_noise) {
    const double ktd = substep_constant * horizon * dt;
    return (ktd + drift_bound * horizon + std::abs(y0) + max_abs_noise) * std::exp(ktd);
}

}  // namespace lsplit
