// Scenario runner: gcs simulate <config> | gcs verify [--filter name] | gcs sweep <config>
//
// Exit codes: 0 ok, 1 computational failure, 2 configuration error.
// GCS_OUTPUT_DIR redirects output files into another directory.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gcs/scenario.hpp"
#include "gcs/verify.hpp"
#include "gcs/version.hpp"

namespace {

std::string output_dir_override() {
    const char* dir = std::getenv("GCS_OUTPUT_DIR");
    return dir ? dir : "";
}

void write_file(const std::string& path, const std::string& body) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gcs::ComputeError("cannot open output file: " + path);
    out << body;
    if (!out) throw gcs::ComputeError("failed writing output file: " + path);
}

int run_simulate(const std::string& config_path) {
    gcs::ScenarioConfig cfg = gcs::load_scenario_file(config_path);
    gcs::ScenarioOutput out = gcs::run_scenario(cfg);
    std::string dir = output_dir_override();
    std::string csv_path = gcs::apply_output_dir(cfg.csv_path, dir);
    std::string summary_path = gcs::apply_output_dir(cfg.summary_path, dir);
    write_file(csv_path, out.csv);
    write_file(summary_path, out.summary.dump(2) + "\n");
    if (csv_path.empty() && summary_path.empty())
        std::cout << out.summary.dump(2) << std::endl;
    else
        std::cout << "wrote " << (csv_path.empty() ? "" : csv_path + " ")
                  << (summary_path.empty() ? "" : summary_path) << std::endl;
    return 0;
}

int run_sweep_cmd(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw gcs::ConfigError("cannot open config file: " + config_path);
    gcs::Json j;
    try {
        j = gcs::Json::parse(in);
    } catch (const gcs::Json::parse_error& e) {
        throw gcs::ConfigError("config parse error in " + config_path + ": " + e.what());
    }
    int failures = 0;
    gcs::Json agg = gcs::run_sweep(j, &failures);
    std::string summary_path;
    if (j.contains("output") && j["output"].contains("summary"))
        summary_path = j["output"]["summary"].get<std::string>();
    summary_path = gcs::apply_output_dir(summary_path, output_dir_override());
    if (summary_path.empty())
        std::cout << agg.dump(2) << std::endl;
    else {
        write_file(summary_path, agg.dump(2) + "\n");
        std::cout << "wrote " << summary_path << " (" << agg["total"] << " scenarios, "
                  << failures << " failed)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized coherent state dynamics runner"};
    app.set_version_flag("--version", GCS_VERSION);
    app.require_subcommand(1);

    std::string simulate_config, sweep_config, filter;
    auto* simulate = app.add_subcommand("simulate", "run one scenario from a config file");
    simulate->add_option("config", simulate_config, "scenario config (JSON)")->required();
    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    verify->add_option("--filter", filter, "run only checks whose name contains this substring");
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file");
    sweep->add_option("config", sweep_config, "sweep config (JSON)")->required();

    try {
        app.parse(argc, argv);
        if (*simulate) return run_simulate(simulate_config);
        if (*sweep) return run_sweep_cmd(sweep_config);
        auto results = gcs::run_verification_suite(filter);
        if (results.empty()) {
            std::cerr << "no checks match filter '" << filter << "'" << std::endl;
            return 2;
        }
        return gcs::print_verification_table(std::cout, results) ? 0 : 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gcs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
