#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lsplit/grid.hpp"

namespace lsplit {

using ScalarMap = std::function<double(double)>;
/// (y, dt) -> y(dt) for the ODE dy/dt = H(y).
using FlowMap = std::function<double(double, double)>;

/// A scalar SDE dX = f(X) dt + g(X) dB on a bounded open interval, together
/// with its Lamperti transform and the split form of the transformed SDE
///
///     dY = (H(Y) + mu) dt + sigma dB,   X = Phi^{-1}(Y).
///
/// `diffusion` is the full coefficient g including the noise scale. The
/// transform is built from g / noise_scale, so the transformed noise
/// coefficient sigma equals noise_scale.
struct SdeModel {
    std::string id;
    Domain domain{0.0, 1.0};
    double noise_scale = 1.0;

    ScalarMap drift;
    ScalarMap diffusion;
    ScalarMap transform;          // interior -> R
    ScalarMap inverse_transform;  // R -> interior
    ScalarMap transformed_drift;  // H
    double split_constant = 0.0;  // mu
    /// Closed-form bound on sup |H + mu|.
    double drift_bound = 0.0;
    /// Exact flow of dy/dt = H(y); empty when no closed form is known.
    FlowMap exact_flow;

    bool has_exact_flow() const noexcept { return static_cast<bool>(exact_flow); }
    double transformed_noise() const noexcept { return noise_scale; }
};

struct AuditCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditCheck> checks;

    bool all_passed() const noexcept;
    const AuditCheck* find(const std::string& name) const noexcept;
};

/// Numerically probes the structural assumptions a model must satisfy for
/// the splitting schemes to be boundary preserving. Failures are reported in
/// the returned list, never thrown.
///
/// Checks (by name):
///   diffusion-sign     g is nonzero with one sign at interior samples
///   boundary-ratio     |f/g| settles to a finite limit at geometric boundary
///                      approaches l + (r-l) 10^-k, k = 2..probes+1
///   inverse-range      Phi^{-1}(y) is strictly interior for y in [-700, 700]
///   round-trip         |Phi(Phi^{-1}(y)) - y| <= 1e-10 (1 + |y|) on [-8, 8]
///   drift-consistency  H + mu matches the Ito drift of Phi(X) at interior x
///   drift-bound        |H + mu| <= drift_bound on transformed probes
AuditReport audit_model(const SdeModel& model, int probes);

}  // namespace lsplit
