#pragma once

#include <map>
#include <span>
#include <vector>

#include "nexus/domain.hpp"
#include "nexus/exec.hpp"

namespace nexus {

// Expansion probability per region from sentiment/relevance evidence:
//   P_r = sum_i max(S_i, 0) * R_i over evidence in r, normalized.
// Negative sentiment is rectified to zero, so it cannot push mass below
// zero; when every region nets zero the result is uniform over the
// regions present. Throws std::invalid_argument on empty input.
std::map<RegionId, double> expansion_probabilities(
    const std::vector<SitingEvidence>& evidence);

// Per-location AI weights, proportional to modelled AI energy. All-zero
// energies degrade to uniform. Throws on empty or negative input.
AllocationWeights ai_weights(const std::map<LocationId, double>& site_energies,
                             const FirmId& firm);

// Historical weights, proportional to site counts in the inventory.
// Throws std::invalid_argument when the firm has no inventory rows.
AllocationWeights hist_weights(const SiteInventory& inventory, const FirmId& firm);

// Splits one firm-year into regions: AI-attributable new load follows
// w_ai, everything else (non-AI new + stock) follows w_hist, and each
// location's contribution lands in its mapped region. Locations are
// visited in sorted order so regional sums are reproducible.
std::map<RegionId, double> allocate_regional(const FirmTrajectory& trajectory,
                                             const AllocationWeights& w_ai,
                                             const AllocationWeights& w_hist,
                                             const RegionMap& region_map,
                                             int year, ScenarioId scenario);

// Element-wise sum of per-firm regional maps, accumulated in input
// order per sorted region key.
std::map<RegionId, double> regional_totals(
    const std::vector<std::map<RegionId, double>>& per_firm);

struct AllocationJob {
    const FirmTrajectory* trajectory = nullptr;
    AllocationWeights w_ai;
    AllocationWeights w_hist;
    int year = 0;
};

// Batch kernel over allocation jobs. Slot i depends only on job i.
std::vector<std::map<RegionId, double>> allocate_batch(
    std::span<const AllocationJob> jobs, const RegionMap& region_map, Exec exec);

}  // namespace nexus
