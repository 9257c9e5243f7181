#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "solgeo/io.hpp"
#include "solgeo/scenario.hpp"

namespace {

/// Flatten a scenario report to one CSV row per check.
std::string report_checks_csv(const solgeo::json& report) {
    std::string out = "name,value,tol,pass\n";
    if (report.contains("checks"))
        for (const solgeo::json& c : report.at("checks")) {
            out += c.at("name").get<std::string>();
            out += ',' + c.at("value").dump();
            out += ',' + c.at("tol").dump();
            out += c.at("pass").get<bool>() ? ",1\n" : ",0\n";
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solgeo: residual checks for frame / zero-curvature / self-dual systems"};
    app.require_subcommand(1);

    solgeo::ScenarioOptions opts;
    std::uint64_t seed = 0;
    double tol = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "Override the config RNG seed");
    auto* tol_opt = app.add_option("--tol", tol, "Override the relative residual tolerance");
    app.add_flag("--quiet", opts.quiet, "Suppress per-check console output");

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Run one scenario from a JSON config");
    run->add_option("config", config_path, "Scenario config (\"schema\": 1)")->required();

    int levels = 3;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a scenario across grid refinements");
    sweep->add_option("config", config_path, "Scenario config (\"schema\": 1)")->required();
    sweep->add_option("--levels", levels, "Number of refinement levels (>= 3)");

    std::string in_path, out_path, format = "json";
    CLI::App* exp = app.add_subcommand("export", "Convert a report to csv or json");
    exp->add_option("--input", in_path, "Report JSON produced by run/sweep")->required();
    exp->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    exp->add_option("--output", out_path, "Destination file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opts.seed = seed;
    if (*tol_opt) opts.tol = tol;

    try {
        if (run->parsed()) return solgeo::run_scenario_file(config_path, opts).exit_code;
        if (sweep->parsed()) {
            solgeo::json cfg;
            try {
                cfg = solgeo::json::parse(solgeo::read_text(config_path));
            } catch (const std::exception& e) {
                std::fprintf(stderr, "config error: %s\n", e.what());
                return 2;
            }
            return solgeo::sweep_scenario(cfg, levels, opts).exit_code;
        }
        // export
        solgeo::json report;
        try {
            report = solgeo::json::parse(solgeo::read_text(in_path));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "export error: %s\n", e.what());
            return 2;
        }
        const std::string text =
            format == "csv" ? report_checks_csv(report) : report.dump(2) + "\n";
        if (out_path.empty())
            std::fputs(text.c_str(), stdout);
        else
            solgeo::write_text_atomic(out_path, text);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
