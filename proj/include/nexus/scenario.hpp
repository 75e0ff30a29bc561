#pragma once

#include <map>
#include <span>
#include <vector>

#include "nexus/domain.hpp"
#include "nexus/exec.hpp"

namespace nexus {

// Projections are anchored at 2024 observations.
constexpr int kAnchorYear = 2024;

// AI share of new capacity in `year`: p1 for 2025, p2 for 2026-2027,
// p3 from 2028 on (held flat past 2030). Years before 2025 have no
// defined share and throw std::domain_error.
double ai_share(const AiShareSchedule& schedule, int year);

// Legacy stock compounding from the anchor: e_stock_2024 * (1+g)^(year-2024).
double project_stock(double e_stock_2024, double g_stock, int year);

// One-year step of the AI-attributable new load.
double project_ai_new(double e_ai_prev, double g_new);

// Grosses AI-attributable load up to total new load: e_ai / p_ai.
// p_ai must be in (0, 1].
double new_total_from_ai(double e_ai_new, double p_ai);

// Full per-firm path from the 2024 anchors out to `horizon`. The anchor
// year is reproduced exactly; its new load is the AI-attributable anchor
// (non-AI new load only enters from 2025 via the share gross-up).
FirmTrajectory project_firm(const FirmId& firm, const Scenario& scenario,
                            double e_stock_2024, double e_ai_new_2024,
                            const AiShareSchedule& schedule, int horizon);

struct ProjectionJob {
    FirmId firm;
    Scenario scenario;
    double e_stock_2024 = 0.0;
    double e_ai_new_2024 = 0.0;
    AiShareSchedule schedule;
    int horizon = 2030;
};

// Batch kernel over (firm, scenario) jobs. Slot i depends only on job i.
std::vector<FirmTrajectory> project_batch(std::span<const ProjectionJob> jobs,
                                          Exec exec);

using YearSeries = std::map<int, double>;

// Cross-path mean/min/max per year. All paths must share the year grid.
// The mean accumulates in path order to stay reproducible.
std::vector<EnsembleResult> ensemble_aggregate(const std::vector<YearSeries>& paths,
                                               ScenarioId scenario);

}  // namespace nexus
