#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "common.hpp"

int main(int argc, char** argv) {
    using namespace lmtk::cli;

    spdlog::set_default_logger(spdlog::stderr_color_mt("lmtk"));
    spdlog::set_pattern("%^%l%$: %v");

    GlobalOptions g;
    CLI::App app{"Acoustic landmark toolkit"};
    app.name("lmtk");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
    app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
    app.add_option("--jobs,-j", g.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_flag("--verbose,-v", g.verbose, "Debug logging");

    std::vector<Command> commands;
    add_extract(app, g, commands);
    add_tokenize(app, g, commands);
    add_augment(app, g, commands);
    add_emit(app, g, commands);
    add_analyze(app, g, commands);
    add_score(app, g, commands);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    spdlog::set_level(g.verbose ? spdlog::level::debug : spdlog::level::warn);
    for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            return cmd.run();
        } catch (const lmtk::Error& e) {
            spdlog::error("{}", e.what());
            return exit_code_for(e.code());
        } catch (const std::exception& e) {
            spdlog::error("{}", e.what());
            return kData;
        }
    }
    return kUsage;
}
