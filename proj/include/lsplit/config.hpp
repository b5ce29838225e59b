#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsplit/experiments.hpp"

namespace lsplit {

enum class ExperimentKind { boundary, convergence, path_comparison };

ExperimentKind experiment_kind_from_id(std::string_view id);
std::string_view experiment_id(ExperimentKind kind) noexcept;

/// Thrown for malformed or invalid configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment, fully resolved (defaults filled in).
///
/// Text form: one `key: value` per line, lists in brackets, `#` comments.
///
///     experiment: boundary          # boundary | convergence | path-comparison
///     model: sis                    # sis | nagumo | allen-cahn
///     schemes: [ls-euler, em, sem, te]
///     lambdas: [6, 7, 8]
///     T: 1
///     dt: 1e-3                      # boundary, path-comparison
///     dt_list: [0.0625, 0.03125]    # convergence
///     N: 100
///     p: 2
///     seed: 20240501
///     init: uniform                 # or a number in the open domain
///     ref_refinement: 64
///     threads: 4
///     output: results
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::boundary;
    ModelKind model = ModelKind::sis;
    std::vector<SchemeKind> schemes;
    std::vector<double> lambdas;
    double horizon = 1.0;
    double dt = 1e-3;
    std::vector<double> dt_list;
    std::size_t samples = 100;
    double moment = 2.0;
    std::uint64_t seed = kDefaultSeed;
    InitialCondition init = InitialCondition::uniform();
    std::size_t ref_refinement = 64;
    unsigned threads = 1;
    std::string output_dir = ".";
};

/// Splitting variant the default experiments use for a model: exact flow
/// for Allen-Cahn, Euler substep for SIS and Nagumo.
SchemeKind default_ls_scheme(ModelKind model) noexcept;

ExperimentConfig parse_config(std::string_view text);

}  // namespace lsplit
