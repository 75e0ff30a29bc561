#include "nexus/siting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nexus {

namespace {

// Normalizes a non-negative mass map in place; all-zero mass degrades
// to uniform so downstream allocation never loses energy.
void normalize_or_uniform(std::map<std::string, double>& mass) {
    double total = 0.0;
    for (const auto& [key, v] : mass) total += v;
    if (total > 0.0) {
        for (auto& [key, v] : mass) v /= total;
    } else {
        double u = 1.0 / static_cast<double>(mass.size());
        for (auto& [key, v] : mass) v = u;
    }
}

}  // namespace

std::map<RegionId, double> expansion_probabilities(
    const std::vector<SitingEvidence>& evidence) {
    if (evidence.empty()) {
        throw std::invalid_argument("expansion probabilities need at least one evidence row");
    }
    std::map<RegionId, double> mass;
    for (const auto& e : evidence) {
        if (e.sentiment < -1.0 || e.sentiment > 1.0) {
            throw std::invalid_argument("sentiment outside [-1, 1] for region '" +
                                        e.region + "'");
        }
        if (e.relevance < 0.0 || e.relevance > 1.0) {
            throw std::invalid_argument("relevance outside [0, 1] for region '" +
                                        e.region + "'");
        }
        // Negative sentiment argues against expansion but cannot make a
        // probability negative; it is rectified away.
        mass[e.region] += std::max(e.sentiment, 0.0) * e.relevance;
    }
    normalize_or_uniform(mass);
    return mass;
}

AllocationWeights ai_weights(const std::map<LocationId, double>& site_energies,
                             const FirmId& firm) {
    if (site_energies.empty()) {
        throw std::invalid_argument("AI weights need at least one location for '" + firm + "'");
    }
    for (const auto& [loc, e] : site_energies) {
        if (e < 0.0) {
            throw std::invalid_argument("negative site energy at '" + loc + "'");
        }
    }
    AllocationWeights w{WeightKind::Ai, firm, site_energies};
    normalize_or_uniform(w.weights);
    return w;
}

AllocationWeights hist_weights(const SiteInventory& inventory, const FirmId& firm) {
    AllocationWeights w{WeightKind::Historical, firm, {}};
    for (const auto& rec : inventory) {
        if (rec.firm != firm) continue;
        if (rec.site_count < 0) {
            throw std::invalid_argument("negative site count at '" + rec.location + "'");
        }
        w.weights[rec.location] += static_cast<double>(rec.site_count);
    }
    if (w.weights.empty()) {
        throw std::invalid_argument("firm '" + firm + "' is absent from the inventory");
    }
    normalize_or_uniform(w.weights);
    return w;
}

std::map<RegionId, double> allocate_regional(const FirmTrajectory& trajectory,
                                             const AllocationWeights& w_ai,
                                             const AllocationWeights& w_hist,
                                             const RegionMap& region_map,
                                             int year, ScenarioId scenario) {
    if (trajectory.scenario != scenario) {
        throw std::invalid_argument("trajectory/scenario mismatch for '" +
                                    trajectory.firm + "'");
    }
    auto it = trajectory.series.find(year);
    if (it == trajectory.series.end()) {
        throw std::invalid_argument("trajectory for '" + trajectory.firm +
                                    "' has no year " + std::to_string(year));
    }
    const YearEnergy& e = it->second;
    // Everything that is not AI-attributable new load follows the
    // historical footprint: the legacy stock plus the non-AI share of
    // new capacity.
    double e_hist = (e.e_new - e.e_ai_new) + e.e_stock;

    std::map<RegionId, double> out;
    auto spread = [&](const AllocationWeights& w, double amount) {
        for (const auto& [loc, weight] : w.weights) {
            out[region_map.region_of(loc)] += weight * amount;
        }
    };
    spread(w_ai, e.e_ai_new);
    spread(w_hist, e_hist);
    return out;
}

std::map<RegionId, double> regional_totals(
    const std::vector<std::map<RegionId, double>>& per_firm) {
    std::map<RegionId, double> out;
    for (const auto& m : per_firm) {
        for (const auto& [region, v] : m) out[region] += v;
    }
    return out;
}

std::vector<std::map<RegionId, double>> allocate_batch(
    std::span<const AllocationJob> jobs, const RegionMap& region_map, Exec exec) {
    std::vector<std::map<RegionId, double>> out(jobs.size());
    for_each_index(jobs.size(), exec, [&](std::size_t i) {
        const AllocationJob& j = jobs[i];
        out[i] = allocate_regional(*j.trajectory, j.w_ai, j.w_hist, region_map, j.year,
                                   j.trajectory->scenario);
    });
    return out;
}

}  // namespace nexus
