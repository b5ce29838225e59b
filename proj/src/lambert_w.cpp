#include "lsplit/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lsplit {
namespace {

constexpr int kMaxIterations = 50;
constexpr double kStepTolerance = 1e-15;

// Above this the direct iteration's exp(w) * (w + 1) can overflow.
constexpr double kDirectLimit = 1e300;

double initial_guess(double x) {
    if (x < 1.0) return x;
    if (x < std::numbers::e) {
        // Linear interpolation between W(1) and W(e) = 1.
        constexpr double w_at_one = 0.5671432904097838;
        return w_at_one + (1.0 - w_at_one) * (x - 1.0) / (std::numbers::e - 1.0);
    }
    const double l = std::log(x);
    return l - std::log(l);
}

// Halley on w e^w - x = 0.
double halley_direct(double x) {
    double w = initial_guess(x);
    for (int i = 0; i < kMaxIterations; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (w + 1.0);
        const double step = f / (fp - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if (std::abs(step) < kStepTolerance * (1.0 + std::abs(w))) break;
    }
    return w;
}

// Halley on w + ln w - ln_x = 0, valid for ln_x >= 1 (so w >= 1).
double halley_log(double ln_x) {
    double w = ln_x - std::log(ln_x);
    for (int i = 0; i < kMaxIterations; ++i) {
        const double g = w + std::log(w) - ln_x;
        const double gp = 1.0 + 1.0 / w;
        const double gpp = -1.0 / (w * w);
        const double step = 2.0 * g * gp / (2.0 * gp * gp - g * gpp);
        w -= step;
        if (std::abs(step) < kStepTolerance * (1.0 + std::abs(w))) break;
    }
    return w;
}

}  // namespace

double lambert_w0(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw std::invalid_argument("lambert_w0: argument must be >= 0 (only the principal branch on [0, inf))");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    if (x > kDirectLimit) return halley_log(std::log(x));
    return halley_direct(x);
}

double lambert_w0_from_log(double ln_x) {
    if (std::isnan(ln_x)) throw std::invalid_argument("lambert_w0_from_log: NaN argument");
    if (ln_x == std::numeric_limits<double>::infinity()) return ln_x;
    if (ln_x < 1.0) return lambert_w0(std::exp(ln_x));
    return halley_log(ln_x);
}

}  // namespace lsplit
