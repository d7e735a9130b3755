// Command-line driver for the ranking pipeline.
//
//   newsrank [--config PATH] [--out DIR] [--seed N] <stage>
//   newsrank --stage <stage>
//   newsrank config init [PATH]
//
// Exit codes: 0 success, 1 validation, 2 missing dependency, 3 I/O.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "newsrank/config.hpp"
#include "newsrank/error.hpp"
#include "newsrank/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kDependency = 2, kIo = 3 };

int config_init(const std::string& target) {
    const auto text = newsrank::default_config_text();
    if (target.empty() || target == "-") {
        std::cout << text;
        return kOk;
    }
    std::ofstream out(target);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write '" << target << "'\n";
        return kIo;
    }
    std::cerr << "wrote " << target << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality ranking of news sources from offline corpora"};
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string stage_flag;
    std::string command;
    std::string argument;
    std::string target;
    bool quiet = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--seed", seed, "random seed (overrides seed)");
    app.add_option("--stage", stage_flag, "stage to run: ingest|graph|bias|bots|ads|signals|rank|eval|synth|all");
    app.add_flag("-q,--quiet", quiet, "suppress progress messages");
    app.add_option("command", command, "stage name, or 'config'");
    app.add_option("argument", argument, "for 'config': init");
    app.add_option("target", target, "for 'config init': file to write (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    if (command == "config") {
        if (argument != "init" && !argument.empty()) {
            std::cerr << "error: unknown config action '" << argument << "' (expected init)\n";
            return kValidation;
        }
        return config_init(target);
    }
    if (command.empty()) command = stage_flag;
    if (command.empty()) {
        std::cerr << app.help();
        return kValidation;
    }
    if (!stage_flag.empty() && stage_flag != command) {
        std::cerr << "error: --stage " << stage_flag << " conflicts with command " << command << '\n';
        return kValidation;
    }

    try {
        const auto stage = newsrank::parse_stage(command);
        std::map<std::string, std::string> overrides;
        if (!out_dir.empty()) overrides["output.dir"] = out_dir;
        if (seed) overrides["seed"] = std::to_string(*seed);
        auto config = config_path.empty() ? newsrank::default_config(overrides)
                                          : newsrank::load_config(config_path, overrides);
        newsrank::Pipeline pipeline(std::move(config), [quiet](const std::string& m) {
            if (!quiet) std::cerr << m << '\n';
        });
        pipeline.run(stage);
        return kOk;
    } catch (const newsrank::DependencyError& e) {
        std::cerr << "error: stage '" << e.stage() << "' must run first: " << e.what() << '\n';
        return kDependency;
    } catch (const newsrank::ConfigError& e) {
        std::cerr << "error: invalid configuration: " << e.what() << '\n';
        return kValidation;
    } catch (const newsrank::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const newsrank::ParseError& e) {
        std::cerr << "error: unreadable input: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
}
