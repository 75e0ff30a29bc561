#include "nexus/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nexus {

double ai_share(const AiShareSchedule& schedule, int year) {
    if (year < 2025) {
        throw std::domain_error("AI share is undefined before 2025 (got " +
                                std::to_string(year) + ")");
    }
    if (year == 2025) return schedule.p1;
    if (year <= 2027) return schedule.p2;
    return schedule.p3;  // held flat from 2028 onward
}

double project_stock(double e_stock_2024, double g_stock, int year) {
    if (e_stock_2024 < 0.0) throw std::invalid_argument("stock anchor must be non-negative");
    if (g_stock <= -1.0) throw std::invalid_argument("g_stock must exceed -1");
    if (year < kAnchorYear) {
        throw std::domain_error("stock projection starts at the 2024 anchor");
    }
    return e_stock_2024 * std::pow(1.0 + g_stock, year - kAnchorYear);
}

double project_ai_new(double e_ai_prev, double g_new) {
    if (e_ai_prev < 0.0) throw std::invalid_argument("AI load must be non-negative");
    if (g_new <= -1.0) throw std::invalid_argument("g_new must exceed -1");
    return e_ai_prev * (1.0 + g_new);
}

double new_total_from_ai(double e_ai_new, double p_ai) {
    if (e_ai_new < 0.0) throw std::invalid_argument("AI load must be non-negative");
    if (!(p_ai > 0.0) || p_ai > 1.0) {
        throw std::invalid_argument("AI share must lie in (0, 1]");
    }
    return e_ai_new / p_ai;
}

FirmTrajectory project_firm(const FirmId& firm, const Scenario& scenario,
                            double e_stock_2024, double e_ai_new_2024,
                            const AiShareSchedule& schedule, int horizon) {
    if (e_stock_2024 < 0.0 || e_ai_new_2024 < 0.0) {
        throw std::invalid_argument("anchors must be non-negative for '" + firm + "'");
    }
    if (horizon < kAnchorYear) {
        throw std::invalid_argument("horizon must not precede the 2024 anchor");
    }
    if (auto msg = check_schedule(schedule)) {
        throw std::invalid_argument(*msg);
    }

    FirmTrajectory out{firm, scenario.id, {}};
    out.series[kAnchorYear] = {e_stock_2024, e_ai_new_2024, e_ai_new_2024,
                               e_stock_2024 + e_ai_new_2024};
    double e_ai = e_ai_new_2024;
    for (int year = kAnchorYear + 1; year <= horizon; ++year) {
        double e_stock = project_stock(e_stock_2024, scenario.g_stock, year);
        e_ai = project_ai_new(e_ai, scenario.g_new);
        double e_new = new_total_from_ai(e_ai, ai_share(schedule, year));
        out.series[year] = {e_stock, e_ai, e_new, e_stock + e_new};
    }
    return out;
}

std::vector<FirmTrajectory> project_batch(std::span<const ProjectionJob> jobs, Exec exec) {
    std::vector<FirmTrajectory> out(jobs.size());
    for_each_index(jobs.size(), exec, [&](std::size_t i) {
        const ProjectionJob& j = jobs[i];
        out[i] = project_firm(j.firm, j.scenario, j.e_stock_2024, j.e_ai_new_2024,
                              j.schedule, j.horizon);
    });
    return out;
}

std::vector<EnsembleResult> ensemble_aggregate(const std::vector<YearSeries>& paths,
                                               ScenarioId scenario) {
    if (paths.empty()) throw std::invalid_argument("ensemble needs at least one path");
    const YearSeries& first = paths.front();
    for (const auto& p : paths) {
        if (p.size() != first.size()) {
            throw std::invalid_argument("ensemble paths disagree on the year grid");
        }
    }

    std::vector<EnsembleResult> out;
    out.reserve(first.size());
    for (const auto& [year, v0] : first) {
        EnsembleResult r;
        r.scenario = scenario;
        r.year = year;
        r.paths = paths.size();
        double sum = 0.0;
        r.min = v0;
        r.max = v0;
        for (const auto& p : paths) {
            auto it = p.find(year);
            if (it == p.end()) {
                throw std::invalid_argument("ensemble paths disagree on the year grid");
            }
            sum += it->second;
            r.min = std::min(r.min, it->second);
            r.max = std::max(r.max, it->second);
        }
        r.mean = sum / static_cast<double>(paths.size());
        out.push_back(r);
    }
    return out;
}

}  // namespace nexus
