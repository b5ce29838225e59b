#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsplit/grid.hpp"
#include "lsplit/sde_model.hpp"

namespace lsplit {

enum class SchemeKind { ls_exact, ls_euler, em, sem, te };

/// "ls-exact" | "ls-euler" | "em" | "sem" | "te"; throws std::invalid_argument
/// listing the valid ids otherwise.
SchemeKind scheme_from_id(std::string_view id);
std::string_view scheme_id(SchemeKind kind) noexcept;
bool is_splitting(SchemeKind kind) noexcept;

enum class LsVariant { exact, euler };

/// Requested operation needs something the model does not provide.
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The implicit SEM equation could not be solved to tolerance.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct Trajectory {
    TimeGrid grid;
    SchemeKind scheme = SchemeKind::ls_euler;
    std::vector<double> values;    // original coordinates, values[0] == x0
    std::vector<double> y_values;  // transformed coordinates; splitting schemes only
};

/// Empirical local-error constant K of a deterministic substep:
/// sup |yhat(t) - y(t)| / (sqrt(1 + y0^2) t^2) over sampled y0 and t <= max_dt.
struct SubstepReport {
    double substep_constant = 0.0;
};

// -- one-step maps ---------------------------------------------------------

/// y + dt * H(y).
double euler_ode_substep(const ScalarMap& transformed_drift, double y, double dt);

/// `count` Euler substeps of size dt / count.
double euler_ode_substeps(const ScalarMap& transformed_drift, double y, double dt, int count);

/// One splitting step in transformed coordinates: advance the ODE
/// dy/dt = H(y) over dt (exactly or by Euler), then shift by mu dt + sigma dB.
double ls_step(const SdeModel& model, LsVariant variant, double y, double dt, double dB, int euler_substeps = 1);

/// Explicit Euler-Maruyama; unconstrained, may leave the domain.
double em_step(const SdeModel& model, double x, double dt, double dB);

/// Drift-implicit Euler-Maruyama: solves xi = x + f(xi) dt + g(x) dB.
/// Damped Newton from the explicit predictor; bisection on a bracket of
/// half-width 4 (|f(x)| + 1) dt as fallback. Throws SolverFailure.
double sem_step(const SdeModel& model, double x, double dt, double dB);

/// Tamed Euler: drift and diffusion both divided by
/// 1 + M^{-1/2} |f(x)| + M^{-1/2} |g(x)|^2, with M the total step count.
double te_step(const SdeModel& model, double x, double dt, double dB, std::size_t total_steps);

// -- drivers ---------------------------------------------------------------

struct SimulationOptions {
    int euler_substeps = 1;
};

/// Runs one scheme over `grid` driven by `increments` (one per step).
/// Splitting schemes require x0 strictly interior and keep their state in
/// transformed coordinates; the baselines accept any finite x0.
Trajectory simulate_trajectory(const SdeModel& model, SchemeKind scheme, double x0, const TimeGrid& grid,
                               std::span<const double> increments, SimulationOptions options = {});

/// Terminal transformed value of the Euler-substep splitting scheme rebuilt
/// from its representation as Y(0) + sum of substep defects against the exact
/// flow + sum of exact drift integrals + mu t_M + sigma B(t_M). Falls back to
/// plain substep advances when the model has no exact flow.
double reconstruct_via_representation(const SdeModel& model, double x0, const TimeGrid& grid,
                                      std::span<const double> increments, int euler_substeps = 1);

/// Estimates K for the Euler substep against the model's exact flow.
SubstepReport estimate_substep_constant(const SdeModel& model, double max_dt, int euler_substeps = 1);

/// True when K T dt exceeds 1, the regime where the substep convergence
/// analysis no longer controls the error constant.
bool exceeds_step_restriction(const SubstepReport& report, double horizon, double dt) noexcept;

}  // namespace lsplit
