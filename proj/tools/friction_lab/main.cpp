#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

#include "friction/errors.hpp"
#include "friction/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>

namespace {

enum Exit { pass = 0, check_failure = 1, usage = 2, numerical = 3 };

nlohmann::json check_json(const lab::Check& c) {
    nlohmann::json j = c.extra;
    j["measured"] = c.measured;
    j["criterion"] = c.criterion;
    j["pass"] = c.pass;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification and simulation runner for tracer-particle friction in a Bose gas"};
    app.set_version_flag("--version", std::string(friction::kVersion));
    std::string config_path, out_dir;
    bool serial = false;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Config file (INI sections per subcommand)")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (default: friction_out/<subcommand>)");
    app.add_flag("--serial", serial, "Bit-reproducible mode (the pipeline is single-threaded; recorded in the manifest)");
    app.add_option("--seed", seed, "Reserved; recorded in the manifest");
    app.add_option("--set", overrides, "Override a config value: section.key=value (repeatable)");
    app.require_subcommand(1);
    for (const auto& name : lab::subcommands()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::pass : Exit::usage;
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    if (out_dir.empty()) out_dir = "friction_out/" + sub;

    lab::Config cfg;
    try {
        cfg = lab::parse_config(sub, config_path, overrides);
    } catch (const lab::ConfigError& e) {
        std::cerr << "friction_lab: config error: " << e.what() << '\n';
        return Exit::usage;
    }

    std::unique_ptr<lab::OutputLock> lock;
    try {
        lock = std::make_unique<lab::OutputLock>(out_dir);
    } catch (const lab::OutputError& e) {
        std::cerr << "friction_lab: " << e.what() << '\n';
        return Exit::usage;
    }

    lab::RunReport report(out_dir);
    nlohmann::json manifest;
    manifest["tool"] = "friction_lab";
    manifest["version"] = friction::kVersion;
    manifest["subcommand"] = sub;
    manifest["config"] = cfg.echo();
    manifest["config_file"] = config_path;
    manifest["serial"] = serial;
    manifest["seed"] = seed;
    manifest["started_at"] = lab::utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();

    int code = Exit::pass;
    std::string error;
    try {
        lab::dispatch(cfg, report);
        code = report.all_passed() ? Exit::pass : Exit::check_failure;
    } catch (const lab::ConfigError& e) {
        code = Exit::usage;
        error = e.what();
    } catch (const lab::OutputError& e) {
        code = Exit::usage;
        error = e.what();
    } catch (const friction::ParameterError& e) {
        code = Exit::usage;
        error = e.what();
    } catch (const friction::GridError& e) {
        code = Exit::usage;
        error = e.what();
    } catch (const friction::NumericalError& e) {
        code = Exit::numerical;
        error = e.what();
    } catch (const friction::DataError& e) {
        code = Exit::numerical;
        error = e.what();
    } catch (const friction::RangeError& e) {
        code = Exit::numerical;
        error = e.what();
    } catch (const std::exception& e) {
        code = Exit::numerical;
        error = std::string("unexpected failure: ") + e.what();
    }

    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : report.checks()) checks[c.name] = check_json(c);
    manifest["checks"] = checks;
    manifest["results"] = report.results;
    manifest["outputs"] = report.outputs();
    manifest["finished_at"] = lab::utc_timestamp();
    manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["exit_code"] = code;
    manifest["status"] = code == Exit::pass ? "pass" : code == Exit::check_failure ? "fail" : "error";
    if (!error.empty()) manifest["error"] = error;
    try {
        lab::write_json(report.dir() / "manifest.json", manifest);
    } catch (const lab::OutputError& e) {
        std::cerr << "friction_lab: " << e.what() << '\n';
        return Exit::usage;
    }

    for (const auto& c : report.checks())
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << lab::format_number(c.measured) << "  ("
                  << c.criterion << ")\n";
    if (!error.empty()) std::cerr << "friction_lab: " << sub << ": " << error << '\n';
    std::cout << sub << ": " << manifest["status"].get<std::string>() << " (exit " << code << "), manifest "
              << (report.dir() / "manifest.json").string() << '\n';
    return code;
}
