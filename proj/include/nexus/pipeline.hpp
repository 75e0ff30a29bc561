#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nexus/config.hpp"
#include "nexus/domain.hpp"
#include "nexus/exec.hpp"

namespace nexus {

// Pipeline stages are cumulative: Allocate implies Forecast, Psi
// implies both. Validate runs ingestion and dataset checks only.
enum class Stage { Validate, Forecast, Allocate, Psi };

enum class OutputFormat { Csv, Json };

// Cross-path demand statistics for one (scenario, year, region), MWh.
struct RegionalStat {
    ScenarioId scenario = ScenarioId::Neutral;
    int year = 0;
    RegionId region;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Top-down check: sector forecast * hyperscale share * modelled-firm
// share, compared against this run's own scenario envelope at the
// horizon. `evaluated` is false when the run covered too few scenarios
// to form the envelope.
struct CrosscheckSummary {
    double sector_total_twh = 0.0;
    double hyperscale_share = 0.0;
    double top_firm_share = 0.0;
    double implied_twh = 0.0;
    double conservative_twh = 0.0;
    double optimistic_twh = 0.0;
    bool contained = false;
    bool evaluated = false;
};

struct ConservationSummary {
    double max_rel_residual = 0.0;
    double tolerance = 1e-9;
    bool pass = true;
};

// Headline growth rate implied by this run's own endpoints.
struct CagrCheck {
    ScenarioId scenario = ScenarioId::Neutral;
    double start_twh = 0.0;
    double end_twh = 0.0;
    int years = 0;
    double cagr = 0.0;
};

struct RunArtifacts {
    std::vector<FirmTrajectory> trajectories;  // firm asc, scenario order
    std::vector<EnsembleResult> ensemble;      // scenario order, year asc
    std::vector<RegionalStat> regional;        // scenario, year, region asc
    std::vector<PsiRecord> psi;                // per-scenario ranking blocks
    std::vector<RegionId> psi_uncovered;
    int psi_year = 0;
    CrosscheckSummary crosscheck;
    ConservationSummary conservation;
    std::vector<CagrCheck> cagr_checks;
    std::vector<std::string> warnings;
};

// Ingests whatever `upto` requires and reports dataset problems without
// throwing. Used by the validate stage and as the gate for the others.
ValidationReport run_validation(const RunConfig& cfg, Stage upto);

// Computes everything up to `upto`. Throws validation_error when the
// dataset gate fails or a required input is missing, io_error on file
// problems. `only_scenario` restricts the scenario set; psi_year 0
// means the configured report year.
RunArtifacts run_pipeline(const RunConfig& cfg, Stage upto, Exec exec = Exec::Parallel,
                          std::optional<ScenarioId> only_scenario = std::nullopt,
                          int psi_year = 0);

// Writes the outputs the stage owns into out_dir and returns their
// paths. All content is rendered before any file is opened; if a write
// still fails, files already created by this call are removed so no
// partial run remains. validation.json is always written; the format
// switches the tabular mirrors between .csv and .json.
std::vector<std::string> write_outputs(const RunArtifacts& artifacts, Stage upto,
                                       OutputFormat format, const std::string& out_dir);

}  // namespace nexus
