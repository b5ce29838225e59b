#pragma once

namespace lsplit {

/// Principal branch W0 on [0, inf): the w >= 0 with w * exp(w) == x.
/// Throws std::invalid_argument for x < 0 or NaN.
double lambert_w0(double x);

/// W0(exp(ln_x)) without forming exp(ln_x), so arguments far beyond the
/// double range (ln_x > 709) are fine. For ln_x below the underflow
/// threshold the result underflows to 0 together with the argument.
double lambert_w0_from_log(double ln_x);

}  // namespace lsplit
