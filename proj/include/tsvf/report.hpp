#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsvf/scenarios.hpp"

namespace tsvf {

inline constexpr const char* kReportVersion = "1.0";

enum class ReportFormat { text, json, csv };

inline const char* to_string(ReportFormat f) {
    switch (f) {
        case ReportFormat::text: return "text";
        case ReportFormat::json: return "json";
        case ReportFormat::csv: return "csv";
    }
    return "text";
}

/// One catalog run: which scenarios, how many trials, which seed, how strict
/// the Monte Carlo bands are, and where the report goes.
struct RunConfig {
    std::vector<std::string> scenario_names;  // empty means all
    std::size_t trials = 100000;
    std::uint64_t seed = 42;
    ReportFormat format = ReportFormat::text;
    double tolerance_sigma = 4.0;
    std::optional<std::string> output_path;
};

/// Expands "all"/empty to the full catalog and rejects unknown names with a
/// message listing the valid ones.
inline std::vector<std::string> resolve_scenarios(const RunConfig& config) {
    std::vector<std::string> names;
    if (config.scenario_names.empty() ||
        (config.scenario_names.size() == 1 && config.scenario_names[0] == "all")) {
        for (const auto& e : scenario_catalog()) names.push_back(e.name);
        return names;
    }
    for (const auto& n : config.scenario_names) {
        if (!find_scenario(n)) {
            std::string msg = "unknown scenario '" + n + "'; valid names:";
            for (const auto& e : scenario_catalog()) msg += "\n  " + e.name;
            throw std::invalid_argument(msg);
        }
        names.push_back(n);
    }
    return names;
}

inline void validate(const RunConfig& config) {
    if (config.trials < 100) throw std::invalid_argument("trials must be >= 100");
    if (!(config.tolerance_sigma > 0.0))
        throw std::invalid_argument("tolerance sigma must be > 0");
    resolve_scenarios(config);
}

/// Runs the requested scenarios in parallel; each owns its trial streams,
/// so results land in request order with content independent of the
/// scheduling.  Report assembly happens after the join.
inline std::vector<ScenarioResult> run_scenarios(const RunConfig& config) {
    validate(config);
    const auto names = resolve_scenarios(config);
    const McConfig mc{config.trials, config.seed, config.tolerance_sigma};
    std::vector<ScenarioResult> results(names.size());
    parallel_for(names.size(),
                 [&](std::size_t i) { results[i] = find_scenario(names[i])->run(mc); });
    return results;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_prob(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline nlohmann::ordered_json value_json(const cdouble& z) {
    if (z.imag() == 0.0) return z.real();
    return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace detail

inline std::string render_json(const RunConfig& config,
                               const std::vector<ScenarioResult>& results) {
    nlohmann::ordered_json root;
    root["version"] = kReportVersion;
    nlohmann::ordered_json cfg;
    cfg["scenarios"] = resolve_scenarios(config);
    cfg["trials"] = config.trials;
    cfg["seed"] = config.seed;
    cfg["format"] = to_string(config.format);
    cfg["tolerance_sigma"] = config.tolerance_sigma;
    if (config.output_path) cfg["output_path"] = *config.output_path;
    root["config"] = cfg;

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json jr;
        jr["name"] = r.name;
        jr["trials"] = r.trials;
        jr["seed"] = r.seed;
        jr["passed"] = r.all_passed();
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json jc;
            jc["description"] = c.description;
            jc["anchor"] = c.anchor;
            jc["analytic"] = detail::value_json(c.analytic);
            if (c.estimate)
                jc["estimate"] = detail::value_json(*c.estimate);
            else
                jc["estimate"] = nullptr;
            jc["tolerance"] = c.tolerance;
            jc["passed"] = c.passed;
            jc["trials"] = r.trials;
            jc["seed"] = r.seed;
            checks.push_back(jc);
        }
        jr["checks"] = checks;
        arr.push_back(jr);
    }
    root["results"] = arr;
    return root.dump(2) + "\n";
}

inline std::string render_csv(const RunConfig& config,
                              const std::vector<ScenarioResult>& results) {
    (void)config;
    std::ostringstream out;
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += "\"\"";
            q += ch;
        }
        return q + "\"";
    };
    out << "scenario,description,anchor,analytic_re,analytic_im,estimate_re,estimate_im,"
           "tolerance,passed,trials,seed\n";
    for (const auto& r : results)
        for (const auto& c : r.checks) {
            out << quote(r.name) << ',' << quote(c.description) << ',' << quote(c.anchor) << ','
                << detail::format_double(c.analytic.real()) << ','
                << detail::format_double(c.analytic.imag()) << ',';
            if (c.estimate)
                out << detail::format_double(c.estimate->real()) << ','
                    << detail::format_double(c.estimate->imag());
            else
                out << ',';
            out << ',' << detail::format_double(c.tolerance) << ','
                << (c.passed ? "true" : "false") << ',' << r.trials << ',' << r.seed << "\n";
        }
    return out.str();
}

inline std::string render_text(const RunConfig& config,
                               const std::vector<ScenarioResult>& results) {
    std::ostringstream out;
    std::size_t failed = 0, total = 0;
    for (const auto& r : results) {
        out << "== " << r.name << "  (trials=" << r.trials << ", seed=" << r.seed << ")\n";
        for (const auto& c : r.checks) {
            ++total;
            if (!c.passed) ++failed;
            out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.description;
            out << "  |  expected " << detail::format_prob(c.analytic.real());
            if (c.analytic.imag() != 0.0)
                out << (c.analytic.imag() > 0 ? "+" : "") << detail::format_prob(c.analytic.imag())
                    << "i";
            if (c.estimate) {
                out << ", got " << detail::format_prob(c.estimate->real());
                if (c.estimate->imag() != 0.0)
                    out << (c.estimate->imag() > 0 ? "+" : "")
                        << detail::format_prob(c.estimate->imag()) << "i";
            }
            out << ", tol " << detail::format_prob(c.tolerance);
            out << "  [" << c.anchor << "]\n";
        }
    }
    out << (failed == 0 ? "ALL PASSED" : "FAILURES: " + std::to_string(failed)) << " (" << total
        << " checks, sigma=" << detail::format_prob(config.tolerance_sigma) << ")\n";
    return out.str();
}

inline std::string render(const RunConfig& config, const std::vector<ScenarioResult>& results) {
    switch (config.format) {
        case ReportFormat::json: return render_json(config, results);
        case ReportFormat::csv: return render_csv(config, results);
        case ReportFormat::text: break;
    }
    return render_text(config, results);
}

/// Runs and renders; returns (all_passed, report body).
inline std::pair<bool, std::string> run_report(const RunConfig& config) {
    const auto results = run_scenarios(config);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.all_passed();
    return {ok, render(config, results)};
}

}  // namespace tsvf
