#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsplit {

/// Gaussian increments of one Brownian sample path on a uniform fine grid.
///
/// Each (seed, sample_index) pair owns an independent generator stream, so a
/// path can be regenerated bit-for-bit in any order or on any thread.
struct BrownianPath {
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;
    std::size_t fine_steps = 0;
    double horizon = 0.0;
    std::vector<double> increments;  // each ~ N(0, horizon / fine_steps)

    double fine_dt() const noexcept { return horizon / static_cast<double>(fine_steps); }
};

BrownianPath sample_brownian_path(std::uint64_t seed, std::uint64_t sample_index, std::size_t fine_steps,
                                  double horizon);

/// Block sums of `factor` consecutive increments, accumulated left to right.
std::vector<double> coarsen_increments(std::span<const double> increments, std::size_t factor);
std::vector<double> coarsen_increments(const BrownianPath& path, std::size_t factor);

/// Partial sums B(t_0)=0, B(t_1), ..., B(t_n) of a list of increments.
std::vector<double> cumulative_path(std::span<const double> increments);

/// One uniform draw in (0, 1) from a stream tied to (seed, sample_index) but
/// disjoint from the path stream. Used for random initial conditions.
double sample_uniform_open(std::uint64_t seed, std::uint64_t sample_index);

}  // namespace lsplit
