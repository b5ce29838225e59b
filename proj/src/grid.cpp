#include "lsplit/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lsplit {

Domain::Domain(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper)) {
        throw std::invalid_argument("Domain: need finite lower < upper, got (" + std::to_string(lower) +
                                    ", " + std::to_string(upper) + ")");
    }
}

double nudge_into_interior(double x, const Domain& domain) noexcept {
    if (x <= domain.lower()) return std::nextafter(domain.lower(), domain.upper());
    if (x >= domain.upper()) return std::nextafter(domain.upper(), domain.lower());
    return x;
}

TimeGrid make_uniform_grid(double horizon, std::size_t steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("make_uniform_grid: horizon must be positive and finite");
    }
    if (steps == 0) throw std::invalid_argument("make_uniform_grid: steps must be >= 1");

    TimeGrid grid;
    grid.horizon = horizon;
    grid.steps = steps;
    grid.dt = horizon / static_cast<double>(steps);
    grid.points.resize(steps + 1);
    for (std::size_t m = 0; m <= steps; ++m) {
        grid.points[m] = static_cast<double>(m) * grid.dt;
    }
    // m*dt can land an ulp off T; pin the endpoint.
    grid.points[steps] = horizon;
    return grid;
}

}  // namespace lsplit
