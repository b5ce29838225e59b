#include "lsplit/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsplit {
namespace {

constexpr const char* kBuildId = "lsplit-1.0.0 (" __VERSION__ ")";

class CsvFile {
public:
    explicit CsvFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("failed writing " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string join_numbers(const std::vector<double>& values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += format_number(v);
    }
    return s;
}

std::string join_schemes(const std::vector<SchemeKind>& schemes) {
    std::string s;
    for (SchemeKind k : schemes) {
        if (!s.empty()) s += ',';
        s += scheme_id(k);
    }
    return s;
}

std::string describe_init(const InitialCondition& init) {
    return init.kind == InitialCondition::Kind::uniform ? "uniform" : format_number(init.value);
}

std::filesystem::path run_boundary(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
    BoundaryExperimentConfig bc;
    bc.model = cfg.model;
    bc.schemes = cfg.schemes;
    bc.lambdas = cfg.lambdas;
    bc.horizon = cfg.horizon;
    bc.dt = cfg.dt;
    bc.samples = cfg.samples;
    bc.seed = cfg.seed;
    bc.init = cfg.init;
    bc.threads = cfg.threads;
    const auto rows = boundary_experiment(bc);

    const auto path = dir / ("boundary_" + std::string(model_id(cfg.model)) + ".csv");
    CsvFile csv(path);
    csv.row({"lambda", "scheme", "preserved", "total"});
    for (const auto& r : rows) {
        csv.row({format_number(r.lambda), std::string(scheme_id(r.scheme)), std::to_string(r.preserved),
                 std::to_string(r.samples)});
    }
    csv.close();
    return path;
}

void run_convergence(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunResult& result,
                     std::vector<std::string>& manifest_extra) {
    for (SchemeKind scheme : cfg.schemes) {
        const auto path =
            dir / ("convergence_" + std::string(model_id(cfg.model)) + "_" + std::string(scheme_id(scheme)) + ".csv");
        CsvFile csv(path);
        csv.row({"lambda", "dt", "error", "stderr", "samples"});
        for (double lambda : cfg.lambdas) {
            if (scheme == SchemeKind::ls_euler) {
                const SdeModel model = make_model(cfg.model, lambda);
                const auto report = estimate_substep_constant(model, cfg.dt_list.front());
                if (exceeds_step_restriction(report, cfg.horizon, cfg.dt_list.front())) {
                    std::ostringstream os;
                    os << "step restriction: K*T*dt = "
                       << report.substep_constant * cfg.horizon * cfg.dt_list.front() << " > 1 for lambda="
                       << format_number(lambda) << " at dt=" << format_number(cfg.dt_list.front());
                    result.warnings.push_back(os.str());
                }
            }
            StrongErrorConfig sc;
            sc.model = cfg.model;
            sc.scheme = scheme;
            sc.lambda = lambda;
            sc.horizon = cfg.horizon;
            sc.dt_list = cfg.dt_list;
            sc.ref_refinement = cfg.ref_refinement;
            sc.samples = cfg.samples;
            sc.moment = cfg.moment;
            sc.seed = cfg.seed;
            sc.init = cfg.init;
            sc.threads = cfg.threads;
            const auto report = strong_error_experiment(sc);
            for (std::size_t j = 0; j < report.dt_list.size(); ++j) {
                csv.row({format_number(lambda), format_number(report.dt_list[j]), format_number(report.errors[j]),
                         format_number(report.std_errors[j]), std::to_string(report.samples)});
            }
            manifest_extra.push_back("slope." + std::string(scheme_id(scheme)) + "." + format_number(lambda) + "=" +
                                     format_number(report.fitted_slope));
        }
        csv.close();
        result.files.push_back(path);
    }
}

std::filesystem::path run_paths(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
    SchemeKind ls = default_ls_scheme(cfg.model);
    for (SchemeKind s : cfg.schemes) {
        if (is_splitting(s)) {
            ls = s;
            break;
        }
    }
    const auto cmp = path_comparison(cfg.model, cfg.lambdas.front(), cfg.init.value, cfg.horizon,
                                     steps_for(cfg.horizon, cfg.dt), cfg.seed, ls);
    const auto path = dir / ("paths_" + std::string(model_id(cfg.model)) + ".csv");
    CsvFile csv(path);
    csv.row({"t", "ls", "em", "sem", "te"});
    for (std::size_t m = 0; m <= cmp.grid.steps; ++m) {
        csv.row({format_number(cmp.grid.points[m]), format_number(cmp.ls[m]), format_number(cmp.em[m]),
                 format_number(cmp.sem[m]), format_number(cmp.te[m])});
    }
    csv.close();
    return path;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

RunResult run(const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

    RunResult result;
    std::vector<std::string> extra;
    switch (cfg.kind) {
        case ExperimentKind::boundary: result.files.push_back(run_boundary(cfg, dir)); break;
        case ExperimentKind::convergence: run_convergence(cfg, dir, result, extra); break;
        case ExperimentKind::path_comparison:
            if (cfg.init.kind != InitialCondition::Kind::fixed) {
                throw std::invalid_argument("path-comparison needs a fixed init value");
            }
            result.files.push_back(run_paths(cfg, dir));
            break;
    }

    const auto manifest_path = dir / "manifest.txt";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw std::runtime_error("cannot open " + manifest_path.string() + " for writing");
    manifest << "experiment=" << experiment_id(cfg.kind) << '\n'
             << "model=" << model_id(cfg.model) << '\n'
             << "schemes=" << join_schemes(cfg.schemes) << '\n'
             << "lambdas=" << join_numbers(cfg.lambdas) << '\n'
             << "T=" << format_number(cfg.horizon) << '\n';
    if (cfg.kind == ExperimentKind::convergence) {
        manifest << "dt_list=" << join_numbers(cfg.dt_list) << '\n'
                 << "ref_refinement=" << cfg.ref_refinement << '\n'
                 << "p=" << format_number(cfg.moment) << '\n';
    } else {
        manifest << "dt=" << format_number(cfg.dt) << '\n';
    }
    manifest << "N=" << cfg.samples << '\n'
             << "seed=" << cfg.seed << '\n'
             << "init=" << describe_init(cfg.init) << '\n'
             << "build=" << kBuildId << '\n';
    for (const auto& line : extra) manifest << line << '\n';
    for (std::size_t i = 0; i < result.warnings.size(); ++i) manifest << "warning." << i << '=' << result.warnings[i] << '\n';
    for (const auto& f : result.files) manifest << "file=" << f.filename().string() << '\n';
    manifest.close();
    if (!manifest) throw std::runtime_error("failed writing " + manifest_path.string());
    result.files.push_back(manifest_path);
    return result;
}

}  // namespace lsplit
