// Command-line front end: solve, bounds, lab.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "fracthermo/cli/config.hpp"
#include "fracthermo/cli/run.hpp"

namespace fc = fracthermo::cli;

int main(int argc, char** argv) {
    CLI::App app{"Fractional thermostat model: fixed-point solver and hypothesis checks"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve the boundary-value problem by Picard iteration");
    std::string config_path;
    solve->add_option("--config", config_path, "Flat key = value configuration file")
        ->check(CLI::ExistingFile);
    std::map<std::string, std::string> overrides;
    const char* value_keys[] = {"alpha", "beta", "eta", "lambda", "f", "grid-n", "tol", "max-iter",
                                "R", "seed", "panels-per-segment", "grading-levels", "out",
                                "report", "check-hypotheses"};
    for (const char* key : value_keys) {
        const std::string name = std::string("--") + key;
        solve->add_option_function<std::string>(
            name, [&overrides, key](const std::string& v) { overrides[key] = v; },
            std::string("Override '") + key + "'");
    }
    bool verify_residual = false;
    solve->add_flag("--verify-residual", verify_residual,
                    "Check the Caputo residuals of the computed solution");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Print the closed-form kernel constants");
    double b_alpha = 0.0, b_beta = 0.0, b_eta = 0.0;
    bounds->add_option("--alpha", b_alpha)->required();
    bounds->add_option("--beta", b_beta)->required();
    bounds->add_option("--eta", b_eta)->required();

    // lab
    auto* lab = app.add_subcommand("lab", "Sample the scalar contraction example");
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    lab->add_option("--samples", samples, "Number of related pairs")->check(CLI::PositiveNumber);
    lab->add_option("--seed", seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    if (*solve) {
        fc::RunConfig cfg;
        try {
            if (!config_path.empty()) {
                cfg = fc::load_config(config_path);
            }
            for (const auto& [key, value] : overrides) {
                try {
                    cfg.set(key, value);
                } catch (const fc::ConfigError& e) {
                    throw fc::ConfigError(std::string("flag --") + key + ": " + e.what());
                }
            }
            if (verify_residual) {
                cfg.verify_residual = true;
            }
        } catch (const fc::ConfigError& e) {
            std::cerr << "configuration error: " << e.what() << '\n';
            return fc::exit_failure;
        }
        return fc::run_solve(cfg, std::cerr);
    }

    if (*bounds) {
        try {
            const fracthermo::ModelParams p(b_alpha, b_beta, b_eta);
            fc::print_bounds(std::cout, fc::compute_bounds(p));
        } catch (const fracthermo::DomainError& e) {
            std::cerr << "invalid parameters: " << e.what() << '\n';
            return fc::exit_failure;
        }
        return fc::exit_ok;
    }

    if (*lab) {
        return fc::run_lab(samples, seed, std::cout);
    }
    return fc::exit_failure;
}
