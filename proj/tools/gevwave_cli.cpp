#include "gevwave/errors.hpp"
#include "gevwave/io.hpp"
#include "gevwave/pipeline.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace {

using gevwave::Command;
using gevwave::RunConfig;

// "tolerances.gram" -> "--tol-gram", "lambert_xmin" -> "--lambert-xmin".
std::string flag_for(const std::string& key) {
    std::string name = key.starts_with("tolerances.") ? "tol-" + key.substr(11) : key;
    for (char& c : name) {
        if (c == '_' || c == '.') c = '-';
    }
    return "--" + name;
}

struct Alias {
    std::string flag;
    std::string key;
    std::string help;
};

struct SubcommandSpec {
    Command command;
    std::string help;
    std::vector<Alias> aliases;
};

const std::vector<SubcommandSpec>& subcommands() {
    static const std::vector<SubcommandSpec> specs = {
        {Command::lambert_table, "Tabulate W(x) with residuals and logarithmic bounds",
         {{"--xmin", "lambert_xmin", "smallest x"},
          {"--xmax", "lambert_xmax", "largest x"},
          {"--points", "lambert_points", "number of grid points"}}},
        {Command::assoc_func, "Associated function: exact supremum versus the Lambert-W form",
         {{"--kmin", "assoc_kmin", "smallest k"},
          {"--kmax", "assoc_kmax", "largest k"},
          {"--points", "assoc_points", "number of log-spaced k"}}},
        {Command::build_mollifier, "Build the compactly supported cutoff and audit its derivatives",
         {{"--grid-pow", "space_pow", "log2 of the spatial grid size"},
          {"--out", "phi_file", "file name of the cutoff samples inside the output directory"}}},
        {Command::build_wavelet, "Build the bell, psi_hat and the synthesized wavelet", {}},
        {Command::verify_onw, "Gram matrix, dyadic partition of unity and completeness", {}},
        {Command::decay_fit, "Decay envelopes and regressions for psi and its derivatives", {}},
        {Command::mixed_audit, "Weighted mixed-derivative bound audit", {}},
        {Command::all, "Run every stage", {}},
    };
    return specs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Band-limited orthonormal wavelets with ultradifferentiable spectra", "gevwave"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", "gevwave 1.0.0");

    std::string config_file;
    app.add_option("--config", config_file, "JSON file of key/value overrides")->check(CLI::ExistingFile);

    // Every config key is a global flag; subcommands accept them after their name too.
    std::map<std::string, std::string> generic;
    for (const auto& key : gevwave::config_keys()) {
        app.add_option_function<std::string>(
            flag_for(key), [&generic, key](const std::string& v) { generic[key] = v; }, "config key " + key);
    }

    std::optional<bool> log_spacing;
    std::vector<std::pair<std::string, std::string>> alias_values;
    std::map<CLI::App*, Command> commands;
    for (const auto& spec : subcommands()) {
        CLI::App* sub = app.add_subcommand(gevwave::to_string(spec.command), spec.help);
        sub->fallthrough();
        commands[sub] = spec.command;
        for (const auto& alias : spec.aliases) {
            const std::string key = alias.key;
            sub->add_option_function<std::string>(
                alias.flag, [&alias_values, key](const std::string& v) { alias_values.emplace_back(key, v); },
                alias.help);
        }
        if (spec.command == Command::lambert_table) {
            sub->add_flag_callback("--log", [&log_spacing] { log_spacing = true; }, "log-spaced grid (default)");
            sub->add_flag_callback("--linear", [&log_spacing] { log_spacing = false; }, "uniform grid");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Command command = Command::all;
    for (const auto& [sub, cmd] : commands) {
        if (sub->parsed()) command = cmd;
    }

    RunConfig cfg;
    gevwave::io::Json invocation = {
        {"argv", std::vector<std::string>(argv, argv + argc)},
        {"config_file", config_file.empty() ? gevwave::io::Json(nullptr) : gevwave::io::Json(config_file)},
        {"env_out_dir", nullptr},
    };
    try {
        if (!config_file.empty()) cfg.merge(gevwave::io::read_json(config_file));
        if (const char* env = std::getenv(gevwave::kOutDirEnv); env != nullptr && *env != '\0') {
            cfg.out_dir = env;
            invocation["env_out_dir"] = env;
        }
        for (const auto& [key, value] : generic) gevwave::set_config_field(cfg, key, value);
        for (const auto& [key, value] : alias_values) gevwave::set_config_field(cfg, key, value);
        if (log_spacing) cfg.lambert_log = *log_spacing;

        const gevwave::RunResult result = gevwave::run_pipeline(cfg, command, invocation);
        const auto& error = result.manifest["error"];
        if (!error.is_null()) {
            std::cerr << fmt::format("gevwave {}: {} error in stage {}: {}\n", gevwave::to_string(command),
                                     error["kind"].get<std::string>(), error["stage"].get<std::string>(),
                                     error["message"].get<std::string>());
        }
        for (const auto& path : result.failed) std::cerr << "FAILED " << path << '\n';
        std::cout << fmt::format("gevwave {}: {} ({} assertions, {} failed); artifacts in {}\n",
                                 gevwave::to_string(command), result.manifest["status"].get<std::string>(),
                                 result.assertions.size(), result.failed.size(), cfg.out_dir.string());
        return result.exit_code;
    } catch (const gevwave::Error& e) {
        std::cerr << "gevwave: " << e.what() << '\n';
        return gevwave::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "gevwave: " << e.what() << '\n';
        return 3;
    }
}
