#include "lsplit/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace lsplit {
namespace {

constexpr std::array kKnownKeys = {"experiment", "model",  "schemes", "lambdas",        "T",       "dt",
                                   "dt_list",    "N",      "p",       "seed",           "init",    "ref_refinement",
                                   "threads",    "output"};

std::string known_keys_list() {
    std::string s;
    for (const char* k : kKnownKeys) {
        if (!s.empty()) s += ", ";
        s += k;
    }
    return s;
}

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ConfigError(field + ": " + message);
}

template <class T>
T scalar_as(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) fail(field, "expected a scalar value");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(field, "cannot interpret '" + node.Scalar() + "'");
    }
}

template <class T>
std::vector<T> list_as(const YAML::Node& node, const std::string& field) {
    std::vector<T> out;
    if (node.IsScalar()) {
        out.push_back(scalar_as<T>(node, field));
    } else if (node.IsSequence()) {
        for (const auto& item : node) out.push_back(scalar_as<T>(item, field));
    } else {
        fail(field, "expected a list");
    }
    return out;
}

std::vector<double> table_lambdas(ModelKind model) {
    if (model == ModelKind::allen_cahn) return {3.0, 3.3, 3.6};
    return {6.0, 7.0, 8.0};
}

void check_divides(double horizon, double dt, const std::string& field) {
    try {
        steps_for(horizon, dt);
    } catch (const std::invalid_argument&) {
        std::ostringstream os;
        os << "dt must divide T (T=" << horizon << ", dt=" << dt << ")";
        fail(field, os.str());
    }
}

}  // namespace

ExperimentKind experiment_kind_from_id(std::string_view id) {
    if (id == "boundary") return ExperimentKind::boundary;
    if (id == "convergence") return ExperimentKind::convergence;
    if (id == "path-comparison") return ExperimentKind::path_comparison;
    throw std::invalid_argument("unknown experiment '" + std::string(id) +
                                "' (valid: boundary, convergence, path-comparison)");
}

std::string_view experiment_id(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::boundary: return "boundary";
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::path_comparison: return "path-comparison";
    }
    return "unknown";
}

SchemeKind default_ls_scheme(ModelKind model) noexcept {
    return model == ModelKind::allen_cahn ? SchemeKind::ls_exact : SchemeKind::ls_euler;
}

ExperimentConfig parse_config(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: malformed document: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config: expected key: value lines");

    std::set<std::string> seen;
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            fail(key, "unknown key (valid: " + known_keys_list() + ")");
        }
        seen.insert(key);
    }
    const auto has = [&](const char* key) { return seen.count(key) > 0; };

    ExperimentConfig cfg;
    if (!has("experiment")) fail("experiment", "required (boundary, convergence, path-comparison)");
    if (!has("model")) fail("model", "required (sis, nagumo, allen-cahn)");
    try {
        cfg.kind = experiment_kind_from_id(scalar_as<std::string>(root["experiment"], "experiment"));
    } catch (const std::invalid_argument& e) {
        fail("experiment", e.what());
    }
    try {
        cfg.model = model_kind_from_id(scalar_as<std::string>(root["model"], "model"));
    } catch (const std::invalid_argument& e) {
        fail("model", e.what());
    }

    // Per-kind defaults.
    switch (cfg.kind) {
        case ExperimentKind::boundary:
            cfg.horizon = 1.0;
            cfg.dt = 1e-3;
            cfg.samples = 100;
            cfg.schemes = {default_ls_scheme(cfg.model), SchemeKind::em, SchemeKind::sem, SchemeKind::te};
            cfg.lambdas = table_lambdas(cfg.model);
            break;
        case ExperimentKind::convergence:
            cfg.horizon = 1.0;
            cfg.samples = 300;
            cfg.schemes = {default_ls_scheme(cfg.model)};
            cfg.lambdas = table_lambdas(cfg.model);
            break;
        case ExperimentKind::path_comparison:
            cfg.horizon = 0.4;
            cfg.dt = 0.008;
            cfg.samples = 1;
            cfg.schemes = {default_ls_scheme(cfg.model)};
            cfg.lambdas = {cfg.model == ModelKind::allen_cahn ? 3.0 : 4.0};
            cfg.init = InitialCondition::fixed(0.9);
            break;
    }

    if (has("schemes")) {
        cfg.schemes.clear();
        for (const auto& id : list_as<std::string>(root["schemes"], "schemes")) {
            try {
                cfg.schemes.push_back(scheme_from_id(id));
            } catch (const std::invalid_argument& e) {
                fail("schemes", e.what());
            }
        }
        if (cfg.schemes.empty()) fail("schemes", "must list at least one scheme");
    }
    if (has("lambdas")) {
        cfg.lambdas = list_as<double>(root["lambdas"], "lambdas");
        if (cfg.lambdas.empty()) fail("lambdas", "must list at least one value");
    }
    for (double l : cfg.lambdas) {
        if (!(l > 0.0) || !std::isfinite(l)) fail("lambdas", "noise scales must be positive");
    }
    if (has("T")) cfg.horizon = scalar_as<double>(root["T"], "T");
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) fail("T", "must be positive");
    if (has("dt")) cfg.dt = scalar_as<double>(root["dt"], "dt");
    if (has("dt_list")) cfg.dt_list = list_as<double>(root["dt_list"], "dt_list");
    if (has("N")) {
        const auto n = scalar_as<long long>(root["N"], "N");
        if (n < 1) fail("N", "must be >= 1");
        cfg.samples = static_cast<std::size_t>(n);
    }
    if (has("p")) cfg.moment = scalar_as<double>(root["p"], "p");
    if (!(cfg.moment >= 1.0)) fail("p", "moment order must be >= 1");
    if (has("seed")) cfg.seed = scalar_as<std::uint64_t>(root["seed"], "seed");
    if (has("ref_refinement")) {
        const auto r = scalar_as<long long>(root["ref_refinement"], "ref_refinement");
        if (r < 16) fail("ref_refinement", "must be >= 16");
        cfg.ref_refinement = static_cast<std::size_t>(r);
    }
    if (has("threads")) {
        const auto t = scalar_as<long long>(root["threads"], "threads");
        if (t < 1) fail("threads", "must be >= 1");
        cfg.threads = static_cast<unsigned>(t);
    }
    if (has("output")) cfg.output_dir = scalar_as<std::string>(root["output"], "output");
    if (has("init")) {
        const auto& node = root["init"];
        if (node.IsScalar() && node.Scalar() == "uniform") {
            cfg.init = InitialCondition::uniform();
        } else {
            cfg.init = InitialCondition::fixed(scalar_as<double>(node, "init"));
        }
    }

    const SdeModel probe = make_model(cfg.model, cfg.lambdas.front());
    if (cfg.init.kind == InitialCondition::Kind::fixed && !probe.domain.contains(cfg.init.value)) {
        fail("init", "fixed x0 must lie strictly inside the model's domain");
    }

    if (cfg.kind == ExperimentKind::convergence) {
        if (cfg.dt_list.empty()) {
            for (int k = 4; k <= 8; ++k) cfg.dt_list.push_back(cfg.horizon * std::ldexp(1.0, -k));
        }
        if (cfg.dt_list.size() < 3) fail("dt_list", "need at least 3 step sizes for a slope fit");
        for (std::size_t i = 0; i < cfg.dt_list.size(); ++i) {
            check_divides(cfg.horizon, cfg.dt_list[i], "dt_list");
            if (i > 0 && !(cfg.dt_list[i] < cfg.dt_list[i - 1])) fail("dt_list", "must be strictly decreasing");
        }
        const std::size_t fine = steps_for(cfg.horizon, cfg.dt_list.back()) * cfg.ref_refinement;
        for (double dt : cfg.dt_list) {
            if (fine % steps_for(cfg.horizon, dt) != 0) {
                fail("dt_list", "every step count must divide the reference step count");
            }
        }
    } else {
        check_divides(cfg.horizon, cfg.dt, "dt");
    }
    if (cfg.kind == ExperimentKind::path_comparison &&
        std::none_of(cfg.schemes.begin(), cfg.schemes.end(), is_splitting)) {
        fail("schemes", "path-comparison needs a splitting scheme (ls-exact or ls-euler) for the ls column");
    }
    return cfg;
}

}  // namespace lsplit
