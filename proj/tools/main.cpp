// dicke_phase: free-energy landscapes, sweeps, phase maps and exact
// finite-size checks for the Dicke model with Y-Y spin coupling.
//
// Exit status: 0 success, 1 configuration error, 2 numerical failure.
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dicke/error.hpp"
#include "dicke/parallel.hpp"

int main(int argc, char** argv) {
    using namespace dicke;
    using namespace dicke::cli;

    CLI::App app{"Dicke model with nearest-neighbour Y-Y coupling: superradiant phase transitions", "dicke_phase"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "TOML/INI file with option values; flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    bind_options(app, cfg);
    for (const auto& [name, help] : kCommandHelp) {
        app.add_subcommand(name, help)->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "dicke_phase: config error: " << e.what() << '\n';
        return 1;
    }

    try {
        const auto resolved = resolve(cfg);
        thread_count();
        run(resolved, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "dicke_phase: config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dicke_phase: numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
