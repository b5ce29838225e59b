#pragma once

#include <cstddef>
#include <vector>

namespace lsplit {

/// Open interval (lower, upper) that the SDE solution lives in.
class Domain {
public:
    Domain(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_ - lower_; }

    /// Strict membership; NaN is never interior.
    bool contains(double x) const noexcept { return lower_ < x && x < upper_; }

private:
    double lower_;
    double upper_;
};

/// Moves a value that rounded onto (or past) a boundary to the nearest
/// representable interior double. Interior values are returned unchanged.
double nudge_into_interior(double x, const Domain& domain) noexcept;

/// Uniform grid t_m = m * dt, m = 0..steps, with points[steps] == horizon.
struct TimeGrid {
    double horizon = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;
    std::vector<double> points;

    double at(std::size_t m) const { return points.at(m); }
};

TimeGrid make_uniform_grid(double horizon, std::size_t steps);

}  // namespace lsplit
