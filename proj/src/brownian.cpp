#include "lsplit/brownian.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lsplit {
namespace {

// Stream tags keep the path and initial-condition draws of one sample apart.
constexpr std::uint32_t kPathStream = 0x9a7b1c01u;
constexpr std::uint32_t kUniformStream = 0x5e3d2f02u;

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t sample_index, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample_index), static_cast<std::uint32_t>(sample_index >> 32),
                      stream};
    return std::mt19937_64(seq);
}

}  // namespace

BrownianPath sample_brownian_path(std::uint64_t seed, std::uint64_t sample_index, std::size_t fine_steps,
                                  double horizon) {
    if (fine_steps == 0) throw std::invalid_argument("sample_brownian_path: fine_steps must be >= 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("sample_brownian_path: horizon must be positive and finite");
    }

    BrownianPath path;
    path.seed = seed;
    path.sample_index = sample_index;
    path.fine_steps = fine_steps;
    path.horizon = horizon;
    path.increments.resize(fine_steps);

    auto engine = keyed_engine(seed, sample_index, kPathStream);
    std::normal_distribution<double> normal(0.0, std::sqrt(path.fine_dt()));
    for (auto& dB : path.increments) dB = normal(engine);
    return path;
}

std::vector<double> coarsen_increments(std::span<const double> increments, std::size_t factor) {
    if (factor == 0 || increments.size() % factor != 0) {
        throw std::invalid_argument("coarsen_increments: factor " + std::to_string(factor) +
                                    " does not divide " + std::to_string(increments.size()) + " fine steps");
    }
    std::vector<double> coarse(increments.size() / factor);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < factor; ++j) sum += increments[i * factor + j];
        coarse[i] = sum;
    }
    return coarse;
}

std::vector<double> coarsen_increments(const BrownianPath& path, std::size_t factor) {
    return coarsen_increments(std::span<const double>(path.increments), factor);
}

std::vector<double> cumulative_path(std::span<const double> increments) {
    std::vector<double> b(increments.size() + 1, 0.0);
    for (std::size_t i = 0; i < increments.size(); ++i) b[i + 1] = b[i] + increments[i];
    return b;
}

double sample_uniform_open(std::uint64_t seed, std::uint64_t sample_index) {
    auto engine = keyed_engine(seed, sample_index, kUniformStream);
    // 53 random bits mapped to the cell midpoints of a 2^-53 lattice: never 0 or 1.
    const auto bits = engine() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace lsplit
