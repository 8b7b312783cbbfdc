// tsvf-lab: run the pre- and post-selection scenario catalog or the
// randomized property suites from the command line.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsvf/report.hpp"
#include "tsvf/selftest.hpp"

namespace {

int cmd_list() {
    for (const auto& e : tsvf::scenario_catalog())
        std::cout << e.name << "\n    " << e.description << "  [" << e.anchor << "]\n";
    return 0;
}

int cmd_run(const tsvf::RunConfig& config) {
    try {
        tsvf::validate(config);
    } catch (const std::exception& e) {
        std::cerr << "tsvf-lab: " << e.what() << "\n";
        return 2;
    }
    const auto [ok, body] = tsvf::run_report(config);
    if (config.output_path) {
        std::ofstream out(*config.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "tsvf-lab: cannot write to '" << *config.output_path << "'\n";
            return 2;
        }
        out << body;
        if (!out.good()) {
            std::cerr << "tsvf-lab: write failed for '" << *config.output_path << "'\n";
            return 2;
        }
    } else {
        std::cout << body;
    }
    return ok ? 0 : 1;
}

int cmd_selftest(std::uint64_t seed) {
    const auto report = tsvf::run_selftest(seed);
    for (const auto& c : report.checks)
        std::cout << "[" << (c.passed ? "PASS" : "FAIL") << "] " << c.description << "\n";
    std::cout << (report.all_passed() ? "selftest passed" : "selftest FAILED") << "\n";
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pre- and post-selected quantum system laboratory"};
    app.require_subcommand(1);

    app.add_subcommand("list", "List the scenario catalog");

    auto* run = app.add_subcommand("run", "Run scenarios and report the checks");
    tsvf::RunConfig config;
    std::string format = "text";
    std::string out_path;
    run->add_option("--scenario", config.scenario_names,
                    "Scenario name (repeatable); default: all");
    run->add_option("--trials", config.trials, "Monte Carlo trials per ensemble")
        ->capture_default_str();
    run->add_option("--seed", config.seed, "Base seed for all trial streams")
        ->capture_default_str();
    run->add_option("--format", format, "Report format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    run->add_option("--sigma", config.tolerance_sigma,
                    "Monte Carlo tolerance in binomial standard deviations")
        ->capture_default_str();
    run->add_option("--out", out_path, "Write the report to a file instead of stdout");

    std::uint64_t selftest_seed = 42;
    auto* selftest = app.add_subcommand("selftest", "Run the randomized property suites");
    selftest->add_option("--seed", selftest_seed, "Instance seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand("run")) {
        if (format == "json") config.format = tsvf::ReportFormat::json;
        if (format == "csv") config.format = tsvf::ReportFormat::csv;
        if (!out_path.empty()) config.output_path = out_path;
        return cmd_run(config);
    }
    return cmd_selftest(selftest_seed);
}
