#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nexus/io.hpp"
#include "nexus/pipeline.hpp"
#include "nexus/psi.hpp"

namespace {

struct StageOpts {
    std::string config;
    std::string scenario;
    std::string format = "csv";
    std::string out;
    int year = 0;
};

void add_common(CLI::App* cmd, StageOpts& opts) {
    cmd->add_option("config", opts.config, "run configuration file")->required();
    cmd->add_option("--scenario", opts.scenario, "restrict to one scenario")
        ->check(CLI::IsMember({"conservative", "neutral", "optimistic"}));
    cmd->add_option("--format", opts.format, "output format (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out, "output directory (overrides the config)");
}

int run_stage(nexus::Stage stage, const StageOpts& opts) {
    nexus::RunConfig cfg = nexus::RunConfig::load(opts.config);

    std::optional<nexus::ScenarioId> only;
    if (!opts.scenario.empty()) only = nexus::parse_scenario_id(opts.scenario);

    nexus::RunArtifacts artifacts =
        nexus::run_pipeline(cfg, stage, nexus::Exec::Parallel, only, opts.year);

    std::string out_dir = cfg.out_dir;
    if (!opts.out.empty()) out_dir = opts.out;
    if (const char* env = std::getenv("NEXUS_OUT_DIR"); env && *env) out_dir = env;

    nexus::OutputFormat format =
        opts.format == "json" ? nexus::OutputFormat::Json : nexus::OutputFormat::Csv;
    for (const std::string& w : artifacts.warnings) std::cerr << "warning: " << w << "\n";
    for (const std::string& f : nexus::write_outputs(artifacts, stage, format, out_dir)) {
        std::cout << "wrote " << f << "\n";
    }
    return 0;
}

int run_validate(const std::string& config_path) {
    nexus::RunConfig cfg = nexus::RunConfig::load(config_path);
    nexus::ValidationReport report = nexus::run_validation(cfg, nexus::Stage::Validate);
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
    for (const nexus::Violation& v : report.violations) {
        std::cout << "violation: [" << v.code << "] " << v.message << "\n";
    }
    if (!report.ok()) {
        std::cout << report.violations.size() << " violation(s)\n";
        return 1;
    }
    std::cout << "dataset ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bottom-up data-center electricity forecast with regional stress ranking"};
    app.require_subcommand(1);

    std::string validate_config;
    CLI::App* validate = app.add_subcommand("validate", "check datasets and report violations");
    validate->add_option("config", validate_config, "run configuration file")->required();

    StageOpts forecast_opts;
    CLI::App* forecast =
        app.add_subcommand("forecast", "project firm trajectories and the global ensemble");
    add_common(forecast, forecast_opts);

    StageOpts allocate_opts;
    CLI::App* allocate =
        app.add_subcommand("allocate", "forecast plus regional demand allocation");
    add_common(allocate, allocate_opts);

    StageOpts psi_opts;
    CLI::App* psi = app.add_subcommand("psi", "full pipeline including the stress ranking");
    add_common(psi, psi_opts);
    psi->add_option("--year", psi_opts.year, "stress report year (default: horizon)");

    std::string cross_config;
    double sector_total = 945.0;
    double hyperscale_share = 0.70;
    double top_firm_share = 0.40;
    CLI::App* cross =
        app.add_subcommand("crosscheck", "top-down benchmark for the modelled firms' total");
    cross->add_option("config", cross_config, "optional config supplying the factors");
    auto* opt_total = cross->add_option("--sector-total-twh", sector_total,
                                        "whole-sector demand forecast, TWh");
    auto* opt_hyper = cross->add_option("--hyperscale-share", hyperscale_share,
                                        "hyperscale share of the sector");
    auto* opt_top = cross->add_option("--top-firm-share", top_firm_share,
                                      "modelled firms' share of hyperscale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(validate_config);
        if (app.got_subcommand(forecast)) return run_stage(nexus::Stage::Forecast, forecast_opts);
        if (app.got_subcommand(allocate)) return run_stage(nexus::Stage::Allocate, allocate_opts);
        if (app.got_subcommand(psi)) return run_stage(nexus::Stage::Psi, psi_opts);
        if (app.got_subcommand(cross)) {
            if (!cross_config.empty()) {
                nexus::RunConfig cfg = nexus::RunConfig::load(cross_config);
                if (opt_total->count() == 0) sector_total = cfg.sector_total_twh;
                if (opt_hyper->count() == 0) hyperscale_share = cfg.hyperscale_share;
                if (opt_top->count() == 0) top_firm_share = cfg.top_firm_share;
            }
            double implied =
                nexus::cross_validate_global(sector_total, hyperscale_share, top_firm_share);
            std::cout << nexus::format_number(implied) << "\n";
            return 0;
        }
    } catch (const nexus::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nexus::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
