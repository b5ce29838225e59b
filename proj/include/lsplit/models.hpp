#pragma once

#include <string>
#include <string_view>

#include "lsplit/sde_model.hpp"

namespace lsplit {

/// SIS / Wright-Fisher: f = x(1-x), g = lambda x(1-x) on (0, 1).
struct SisParams {
    double noise_scale = 4.0;
    double anchor = 0.5;  // lower limit w0 of the transform integral
};

/// Nagumo: f = -x(1-x)^2, g = -lambda x(1-x) on (0, 1).
struct NagumoParams {
    double noise_scale = 4.0;
    double anchor = 0.5;
};

/// Allen-Cahn type: f = x - x^3, g = lambda (1 - x^2) on (-1, 1), anchor 0.
struct AllenCahnParams {
    double noise_scale = 3.0;
};

SdeModel sis_model(const SisParams& p);
SdeModel nagumo_model(const NagumoParams& p);
SdeModel allen_cahn_model(const AllenCahnParams& p);

// Exact flows of dy/dt = H(y) for the built-in models. The SIS and Nagumo
// flows go through W0 with its argument kept in log form.
double sis_exact_flow(const SisParams& p, double y, double dt);
double nagumo_exact_flow(const NagumoParams& p, double y, double dt);
double allen_cahn_exact_flow(const AllenCahnParams& p, double y, double dt);

enum class ModelKind { sis, nagumo, allen_cahn };

/// "sis" | "nagumo" | "allen-cahn"; throws std::invalid_argument otherwise.
ModelKind model_kind_from_id(std::string_view id);
std::string_view model_id(ModelKind kind) noexcept;

/// Built-in model with the given noise scale and default anchor.
SdeModel make_model(ModelKind kind, double noise_scale);

/// One Lamperti-splitting step written directly in the original coordinate:
/// the composition Phi -> exact ODE flow -> shift by mu dt + lambda dB ->
/// Phi^{-1}, simplified to a single expression per model. `x` must be
/// strictly interior.
/// The result does not depend on the transform anchor.
double ls_one_step_closed_form(ModelKind kind, double noise_scale, double x, double dt, double dB);

}  // namespace lsplit
