#include "lsplit/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lsplit/lambert_w.hpp"

namespace lsplit {
namespace {

void require_anchor(double anchor, const char* who) {
    if (!(anchor > 0.0 && anchor < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": anchor w0 must lie in (0, 1)");
    }
}

void require_noise(double noise_scale, const char* who) {
    if (!(noise_scale > 0.0) || !std::isfinite(noise_scale)) {
        throw std::invalid_argument(std::string(who) + ": noise scale lambda must be positive and finite");
    }
}

// 1 / (1 + e^c) without overflow in either tail.
double logistic_complement(double c) {
    if (c > 0.0) {
        const double e = std::exp(-c);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(c));
}

// Solves c(t) + e^{c(t)} = c + e^c - rate * dt, i.e. the flow of
// dc/dt = -rate / (1 + e^c), via c(t) = ln W0(exp(c + e^c - rate * dt)).
double logistic_log_flow(double c, double rate, double dt) {
    if (dt == 0.0) return c;
    if (c > 700.0) {
        // e^c is not representable; the motion is rate * dt * e^{-c} to first order.
        return c - rate * dt * std::exp(-c);
    }
    const double s = c + std::exp(c) - rate * dt;
    const double w = lambert_w0_from_log(s);
    // ln W = s - W exactly; use whichever side does not cancel.
    return w > 0.5 ? std::log(w) : s - w;
}

double log_odds_anchor(double anchor) { return std::log1p(-anchor) - std::log(anchor); }

}  // namespace

double sis_exact_flow(const SisParams& p, double y, double dt) {
    const double r0 = log_odds_anchor(p.anchor);
    // c = ln((1-x)/x) with x = Phi^{-1}(y).
    const double c = r0 - y;
    return r0 - logistic_log_flow(c, p.noise_scale * p.noise_scale, dt);
}

double nagumo_exact_flow(const NagumoParams& p, double y, double dt) {
    const double r0 = log_odds_anchor(p.anchor);
    const double c = r0 + y;
    return logistic_log_flow(c, 1.0 + p.noise_scale * p.noise_scale, dt) - r0;
}

double allen_cahn_exact_flow(const AllenCahnParams& p, double y, double dt) {
    // y(t) = asinh(e^{k dt} sinh y), k = 1 + lambda^2.
    if (dt == 0.0 || y == 0.0) return y;
    const double k = 1.0 + p.noise_scale * p.noise_scale;
    const double ay = std::abs(y);
    const double log_sinh = ay > 20.0 ? ay - std::numbers::ln2 : std::log(std::sinh(ay));
    const double log_v = k * dt + log_sinh;
    const double magnitude =
        log_v > 20.0 ? log_v + std::numbers::ln2 : std::asinh(std::exp(k * dt) * std::sinh(ay));
    return std::copysign(magnitude, y);
}

SdeModel sis_model(const SisParams& p) {
    require_noise(p.noise_scale, "sis_model");
    require_anchor(p.anchor, "sis_model");
    const double lambda = p.noise_scale;
    const double w0 = p.anchor;
    const double r0 = log_odds_anchor(w0);

    SdeModel m;
    m.id = "sis";
    m.domain = Domain(0.0, 1.0);
    m.noise_scale = lambda;
    m.drift = [](double x) { return x * (1.0 - x); };
    m.diffusion = [lambda](double x) { return lambda * x * (1.0 - x); };
    m.transform = [w0](double x) {
        return std::log(x) - std::log1p(-x) - std::log(w0) + std::log1p(-w0);
    };
    m.inverse_transform = [r0, d = m.domain](double y) { return nudge_into_interior(logistic_complement(r0 - y), d); };
    m.transformed_drift = [r0, k = lambda * lambda](double y) { return k * logistic_complement(r0 - y); };
    m.split_constant = 1.0 - 0.5 * lambda * lambda;
    // H + mu = lambda^2 x + 1 - lambda^2/2 over x in (0, 1).
    m.drift_bound = 1.0 + 0.5 * lambda * lambda;
    m.exact_flow = [p](double y, double dt) { return sis_exact_flow(p, y, dt); };
    return m;
}

SdeModel nagumo_model(const NagumoParams& p) {
    require_noise(p.noise_scale, "nagumo_model");
    require_anchor(p.anchor, "nagumo_model");
    const double lambda = p.noise_scale;
    const double w0 = p.anchor;
    const double r0 = log_odds_anchor(w0);

    SdeModel m;
    m.id = "nagumo";
    m.domain = Domain(0.0, 1.0);
    m.noise_scale = lambda;
    m.drift = [](double x) { return -x * (1.0 - x) * (1.0 - x); };
    m.diffusion = [lambda](double x) { return -lambda * x * (1.0 - x); };
    // Decreasing: the unscaled g = -x(1-x) is negative on the interior.
    m.transform = [w0](double x) {
        return std::log1p(-x) - std::log(x) - std::log1p(-w0) + std::log(w0);
    };
    m.inverse_transform = [r0, d = m.domain](double y) { return nudge_into_interior(logistic_complement(r0 + y), d); };
    m.transformed_drift = [r0, k = 1.0 + lambda * lambda](double y) { return -k * logistic_complement(r0 + y); };
    m.split_constant = 1.0 + 0.5 * lambda * lambda;
    // H + mu = (1 + lambda^2/2) - (1 + lambda^2) x over x in (0, 1).
    m.drift_bound = 1.0 + 0.5 * lambda * lambda;
    m.exact_flow = [p](double y, double dt) { return nagumo_exact_flow(p, y, dt); };
    return m;
}

SdeModel allen_cahn_model(const AllenCahnParams& p) {
    require_noise(p.noise_scale, "allen_cahn_model");
    const double lambda = p.noise_scale;

    SdeModel m;
    m.id = "allen-cahn";
    m.domain = Domain(-1.0, 1.0);
    m.noise_scale = lambda;
    m.drift = [](double x) { return x - x * x * x; };
    m.diffusion = [lambda](double x) { return lambda * (1.0 - x * x); };
    m.transform = [](double x) { return std::atanh(x); };
    m.inverse_transform = [d = m.domain](double y) { return nudge_into_interior(std::tanh(y), d); };
    m.transformed_drift = [k = 1.0 + lambda * lambda](double y) { return k * std::tanh(y); };
    m.split_constant = 0.0;
    m.drift_bound = 1.0 + lambda * lambda;
    m.exact_flow = [p](double y, double dt) { return allen_cahn_exact_flow(p, y, dt); };
    return m;
}

ModelKind model_kind_from_id(std::string_view id) {
    if (id == "sis") return ModelKind::sis;
    if (id == "nagumo") return ModelKind::nagumo;
    if (id == "allen-cahn") return ModelKind::allen_cahn;
    throw std::invalid_argument("unknown model '" + std::string(id) + "' (valid: sis, nagumo, allen-cahn)");
}

std::string_view model_id(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::sis: return "sis";
        case ModelKind::nagumo: return "nagumo";
        case ModelKind::allen_cahn: return "allen-cahn";
    }
    return "unknown";
}

SdeModel make_model(ModelKind kind, double noise_scale) {
    switch (kind) {
        case ModelKind::sis: return sis_model({noise_scale, 0.5});
        case ModelKind::nagumo: return nagumo_model({noise_scale, 0.5});
        case ModelKind::allen_cahn: return allen_cahn_model({noise_scale});
    }
    throw std::invalid_argument("make_model: bad model kind");
}

double ls_one_step_closed_form(ModelKind kind, double noise_scale, double x, double dt, double dB) {
    require_noise(noise_scale, "ls_one_step_closed_form");
    const double lambda = noise_scale;
    const double k2 = lambda * lambda;

    switch (kind) {
        case ModelKind::sis: {
            if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ls_one_step_closed_form: x must lie in (0, 1)");
            // X = e^s / (e^s + W(a)), ln a = ln(1-x) - ln x + (1-x)/x - lambda^2 dt.
            const double log_a = std::log1p(-x) - std::log(x) + (1.0 - x) / x - k2 * dt;
            const double w = lambert_w0_from_log(log_a);
            const double log_w = w > 0.5 ? std::log(w) : log_a - w;
            const double shift = (1.0 - 0.5 * k2) * dt + lambda * dB;
            return nudge_into_interior(1.0 / (1.0 + std::exp(log_w - shift)), Domain(0.0, 1.0));
        }
        case ModelKind::nagumo: {
            if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ls_one_step_closed_form: x must lie in (0, 1)");
            // X = 1 / (W(a) e^s + 1), ln a = ln(1-x) - ln x + (1-x)/x - (1+lambda^2) dt.
            const double log_a = std::log1p(-x) - std::log(x) + (1.0 - x) / x - (1.0 + k2) * dt;
            const double w = lambert_w0_from_log(log_a);
            const double log_w = w > 0.5 ? std::log(w) : log_a - w;
            const double shift = (1.0 + 0.5 * k2) * dt + lambda * dB;
            return nudge_into_interior(1.0 / (1.0 + std::exp(log_w + shift)), Domain(0.0, 1.0));
        }
        case ModelKind::allen_cahn: {
            if (!(x > -1.0 && x < 1.0)) throw std::invalid_argument("ls_one_step_closed_form: x must lie in (-1, 1)");
            // X = (V e^{2 lambda dB} - b) / (V e^{2 lambda dB} + b), b = (1-x)(1+x),
            // V = (sqrt(x^2 E^2 + b) + x E)^2, E = e^{(1+lambda^2) dt}.
            const double e = std::exp((1.0 + k2) * dt);
            const double b = (1.0 - x) * (1.0 + x);
            const double a = x * e;
            const double root = std::sqrt(a * a + b);
            const double sqrt_v = a >= 0.0 ? root + a : b / (root - a);
            // (V q - b) / (V q + b) = -tanh(t / 2) with t = ln b - ln(V q).
            const double t = std::log(b) - 2.0 * std::log(sqrt_v) - 2.0 * lambda * dB;
            return nudge_into_interior(-std::tanh(0.5 * t), Domain(-1.0, 1.0));
        }
    }
    throw std::invalid_argument("ls_one_step_closed_form: bad model kind");
}

}  // namespace lsplit
