#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "inspde/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral simulator for impulsive neutral stochastic PDEs with "
                 "generator-approximation and small-noise convergence harnesses"};
    app.require_subcommand(1);

    std::string config_path;
    inspde::CliOverrides overrides;
    std::uint64_t seed = 0;
    int paths = 0;
    std::string out_dir;
    unsigned workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Config file path")->required();
        sub->add_option("--seed", seed, "Override noise.seed");
        sub->add_option("--paths", paths, "Override noise.paths");
        sub->add_option("--out", out_dir, "Override output.dir");
        sub->add_option("--workers", workers, "Override output.workers (0 = all cores)");
        sub->add_flag("--force", overrides.force, "Overwrite outputs with mismatched config hash");
        return sub;
    };

    CLI::App* sub_validate = add_common(app.add_subcommand("validate", "Check a config and report every violation"));
    CLI::App* sub_simulate = add_common(app.add_subcommand("simulate", "Write one trajectory CSV"));
    CLI::App* sub_tk = add_common(app.add_subcommand("tk", "Generator-approximation error table over family.indices"));
    CLI::App* sub_zeroth = add_common(app.add_subcommand("zeroth", "Small-noise error table over family.epsilons"));
    CLI::App* sub_param = add_common(app.add_subcommand("param", "Parameter-dependence error table over param.thetas"));
    CLI::App* sub_probe = add_common(app.add_subcommand("probe", "Empirical Lipschitz-constant probe"));

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = nullptr;
    for (CLI::App* sub : {sub_validate, sub_simulate, sub_tk, sub_zeroth, sub_param, sub_probe})
        if (sub->parsed()) chosen = sub;

    if (chosen->count("--seed")) overrides.seed = seed;
    if (chosen->count("--paths")) overrides.paths = paths;
    if (chosen->count("--out")) overrides.out_dir = out_dir;
    if (chosen->count("--workers")) overrides.workers = workers;

    return inspde::run_subcommand(chosen->get_name(), config_path, overrides, std::cout, std::cerr);
}
