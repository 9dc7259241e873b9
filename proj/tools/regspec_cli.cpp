#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>

#include "regspec/config.hpp"
#include "regspec/experiment.hpp"

namespace {

struct Options {
    std::string config;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> threads;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace regspec;
    CLI::App app{"Spectral experiments on random regular digraphs"};
    app.require_subcommand(1);
    Options opt;
    const std::pair<const char*, const char*> commands[] = {
        {"sample", "sample matrices and write them in text format"},
        {"spectrum", "eigenvalues, singular values and backward errors of A"},
        {"circular-law", "ESD of d^-1/2 A against the reference law, log potentials on z_grid"},
        {"sv-regimes", "singular-value tail regimes and bound checks of B_z"},
        {"normals", "random normals: order statistics, clusters, structure labels"},
        {"anticonc", "row resampling, coupling, row distances, singular values from distances"},
        {"report", "aggregate run.json files of earlier runs"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "configuration file (key=value)")->required();
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--seed", opt.seed, "override master_seed");
        sub->add_option("--trials", opt.trials, "override trials");
        sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        auto cfg = load_config(opt.config);
        const auto kind = parse_kind(name);
        if (cfg.kind_declared && cfg.kind != kind)
            throw ConfigError("config declares kind " + to_string(cfg.kind) + " but the subcommand is " + name);
        cfg.kind = kind;
        if (opt.seed) cfg.master_seed = *opt.seed;
        if (opt.trials) cfg.trials = *opt.trials;
        if (opt.threads) cfg.threads = *opt.threads;
        const auto record = run(cfg, opt.out);
        std::cout << name << ": " << record.outputs.size() << " artifacts in " << opt.out << " (config "
                  << hex64(record.config_hash) << ")\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "kernel error: " << e.what() << "\n";
        return kExitKernel;
    }
}
