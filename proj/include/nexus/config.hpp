#pragma once

#include <map>
#include <string>
#include <vector>

#include "nexus/domain.hpp"

namespace nexus {

// How ensemble paths pick an evidence variant. Path p takes
// overrides[p] when present, otherwise variants[(p-1) % variants.size()].
// An empty variant list falls back to the variants discovered in the
// evidence file (sorted), or the base variant when there are none.
struct PathPlan {
    int count = 10;
    std::vector<std::string> variants;
    std::map<int, std::string> overrides;

    std::string variant_for(int path, const std::vector<std::string>& discovered) const;
};

// 2024 anchor observations for one firm, MWh.
struct FirmAnchor {
    double e_stock_2024 = 0.0;
    double e_ai_new_2024 = 0.0;
};

// Parsed and validated run configuration. INI format with dotted
// sections:
//
//   [run]        horizon, psi_year, quantile_bins, out_dir
//   [inputs]     inventory, supply, evidence, region_map (paths are
//                resolved relative to the config file)
//   [crosscheck] sector_total_twh, hyperscale_share, top_firm_share
//   [scenario.<id>]  g_new, g_stock overrides per scenario id
//   [anchor.<firm>]  e_stock_2024_twh, e_ai_new_2024_twh
//   [schedule.<firm>] p1, p2, p3 (defaults fill in for known firms)
//   [paths]      count, variants, path.<n> overrides
struct RunConfig {
    int horizon = 2030;
    int psi_year = 0;  // 0 = horizon
    int quantile_bins = 4;
    std::string out_dir = "out";

    double sector_total_twh = 945.0;
    double hyperscale_share = 0.70;
    double top_firm_share = 0.40;

    std::string inventory_path;
    std::string supply_path;
    std::string evidence_path;
    std::string region_map_path;

    std::vector<Scenario> scenarios;              // canonical order
    std::map<FirmId, FirmAnchor> anchors;         // MWh
    std::map<FirmId, AiShareSchedule> schedules;  // resolved per firm
    PathPlan paths;

    // Throws io_error for unreadable/malformed files and
    // validation_error for semantic problems (horizon < 2025, unknown
    // keys, anchors without schedules, missing input files, bad rates).
    static RunConfig load(const std::string& path);
};

}  // namespace nexus
