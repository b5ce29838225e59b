#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lsplit/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Boundary-preserving splitting experiments"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read " + config_path);
        std::ostringstream text;
        text << in.rdbuf();

        auto config = lsplit::parse_config(text.str());
        if (seed) config.seed = *seed;
        if (out_dir) config.output_dir = *out_dir;
        if (threads) config.threads = *threads;

        const auto result = lsplit::run(config);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& f : result.files) std::cout << f.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "lsplit: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
