// Command-line front end: run, validate and list-scenarios.
#include <iostream>

#include "CLI11.hpp"
#include "dampresp/cli/config.hpp"
#include "dampresp/cli/runner.hpp"

int main(int argc, char** argv)
{
    using namespace dampresp::cli;

    CLI::App app{"Damped optical response scenarios"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    auto* run = app.add_subcommand("run", "run a scenario configuration");
    run->add_option("config", config_path, "configuration file")->required();
    auto* out_opt = run->add_option("--output-dir", output_dir, "overrides output_dir");
    auto* seed_opt = run->add_option("--seed", seed, "overrides seed");
    auto* threads_opt =
        run->add_option("--threads", threads, "worker threads (never changes results)")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "check a configuration without running it");
    validate->add_option("config", config_path, "configuration file")->required();

    auto* list = app.add_subcommand("list-scenarios", "print the registered scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    if (*run) {
        RunOverrides o;
        if (*out_opt) o.output_dir = output_dir;
        if (*seed_opt) o.seed = seed;
        if (*threads_opt) o.threads = threads;
        return run_command(config_path, o, std::cout, std::cerr);
    }
    if (*validate) return validate_command(config_path, std::cout, std::cerr);
    if (*list) return list_scenarios_command(std::cout);
    return exit_config;
}
