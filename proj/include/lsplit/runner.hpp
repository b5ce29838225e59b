#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lsplit/config.hpp"

namespace lsplit {

struct RunResult {
    std::vector<std::filesystem::path> files;  // CSVs first, manifest last
    std::vector<std::string> warnings;
};

/// Runs the configured experiment and writes its CSV artifacts plus
/// `manifest.txt` into config.output_dir (created if missing).
///
/// CSV schemas:
///   boundary_<model>.csv              lambda,scheme,preserved,total
///   convergence_<model>_<scheme>.csv  lambda,dt,error,stderr,samples
///   paths_<model>.csv                 t,ls,em,sem,te
///
/// Throws std::runtime_error on I/O failure.
RunResult run(const ExperimentConfig& config);

/// Shortest decimal form that round-trips: 17 significant digits.
std::string format_number(double value);

}  // namespace lsplit
