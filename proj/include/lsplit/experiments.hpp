#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsplit/integrators.hpp"
#include "lsplit/models.hpp"

namespace lsplit {

inline constexpr std::uint64_t kDefaultSeed = 20240501;

struct InitialCondition {
    enum class Kind { fixed, uniform };
    Kind kind = Kind::uniform;
    double value = 0.0;

    static InitialCondition fixed(double x) { return {Kind::fixed, x}; }
    static InitialCondition uniform() { return {Kind::uniform, 0.0}; }
};

/// x0 for one sample. Uniform draws come from the (seed, sample_index) key
/// on a stream separate from the Brownian increments.
double draw_initial(const InitialCondition& init, const Domain& domain, std::uint64_t seed,
                    std::uint64_t sample_index);

/// Number of whole steps of size dt in horizon; throws unless dt divides
/// horizon to within 1e-9 relative.
std::size_t steps_for(double horizon, double dt);

// -- boundary preservation ---------------------------------------------------

struct BoundaryStats {
    std::string model_id;
    SchemeKind scheme = SchemeKind::ls_euler;
    double lambda = 0.0;
    std::size_t samples = 0;
    std::size_t preserved = 0;  // paths with every grid value strictly interior
};

struct BoundaryExperimentConfig {
    ModelKind model = ModelKind::sis;
    std::vector<SchemeKind> schemes;
    std::vector<double> lambdas;
    double horizon = 1.0;
    double dt = 1e-3;
    std::size_t samples = 100;
    std::uint64_t seed = kDefaultSeed;
    InitialCondition init = InitialCondition::uniform();
    unsigned threads = 1;
};

/// True when every value of the scheme's path stays strictly inside the
/// domain. Stops at the first violation; an SEM solver failure counts as one.
bool path_preserves_domain(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& grid,
                           std::span<const double> increments);

/// One row per (lambda, scheme), lambdas outer. All schemes and lambdas see
/// the same Brownian path and x0 for a given sample index.
std::vector<BoundaryStats> boundary_experiment(const BoundaryExperimentConfig& config);

// -- strong error --------------------------------------------------------------

/// Fine-step run of `scheme` sampled at the coarse grid points.
/// Throws std::invalid_argument unless the fine grid nests the coarse one.
Trajectory reference_trajectory(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& fine_grid,
                                std::span<const double> fine_increments, const TimeGrid& coarse_grid);

/// max_{m=1..M} |a_m - b_m| over two trajectories on the same grid.
double sup_error(const Trajectory& a, const Trajectory& b);

struct ErrorReport {
    std::string model_id;
    SchemeKind scheme = SchemeKind::ls_euler;
    SchemeKind reference_scheme = SchemeKind::ls_euler;
    double lambda = 0.0;
    double moment = 2.0;
    std::vector<double> dt_list;     // strictly decreasing
    std::vector<double> errors;      // (E sup_m |X_m - X^ref_m|^p)^{1/p}
    std::vector<double> std_errors;  // batch-means standard error of each estimate
    std::size_t samples = 0;
    double reference_dt = 0.0;
    double fitted_slope = 0.0;  // NaN when the fit is undefined
};

struct StrongErrorConfig {
    ModelKind model = ModelKind::sis;
    SchemeKind scheme = SchemeKind::ls_euler;
    /// Defaults to `scheme` for splitting schemes, otherwise to the exact
    /// splitting scheme.
    std::optional<SchemeKind> reference_scheme;
    double lambda = 4.0;
    double horizon = 1.0;
    std::vector<double> dt_list;
    std::size_t ref_refinement = 64;  // reference dt = min(dt_list) / ref_refinement
    std::size_t samples = 300;
    double moment = 2.0;
    std::uint64_t seed = kDefaultSeed;
    InitialCondition init = InitialCondition::uniform();
    unsigned threads = 1;
    std::size_t batches = 10;
};

/// Per-sample sup errors against a coupled reference, errors[sample][dt].
/// Accepts any refinement >= 1; refinement 1 with the same scheme gives
/// exact zeros.
std::vector<std::vector<double>> coupled_sup_errors(const StrongErrorConfig& config);

/// Strong L^p error per dt and the fitted log-log slope. Requires
/// ref_refinement >= 16.
ErrorReport strong_error_experiment(const StrongErrorConfig& config);

/// Least-squares slope of log(error) against log(dt). Needs >= 3 points and
/// strictly positive errors.
double fit_convergence_rate(std::span<const double> dt_list, std::span<const double> errors);

// -- path comparison -----------------------------------------------------------

struct PathComparison {
    TimeGrid grid;
    SchemeKind ls_scheme = SchemeKind::ls_euler;
    std::vector<double> ls, em, sem, te;  // NaN after an SEM solver failure
};

/// All four schemes on one Brownian path from a fixed x0.
PathComparison path_comparison(ModelKind model, double lambda, double x0, double horizon, std::size_t steps,
                               std::uint64_t seed, SchemeKind ls_scheme);

/// Almost-sure bound on max_m |Y_m| for the Euler-substep splitting scheme:
/// (K T dt + L_H T + |y0| + max_m |sigma B(t_m)|) e^{K T dt}.
double splitting_path_bound(double substep_constant, double drift_bound, double horizon, double dt, double y0,
                            double max_abs_noise);

}  // namespace lsplit
