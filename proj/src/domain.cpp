#include "nexus/domain.hpp"

#include <algorithm>
#include <set>

namespace nexus {

void RegionMap::insert(const LocationId& loc, const RegionId& region) {
    auto [it, inserted] = entries_.emplace(loc, region);
    if (!inserted) {
        throw validation_error("location '" + loc + "' mapped twice");
    }
}

const RegionId& RegionMap::region_of(const LocationId& loc) const {
    auto it = entries_.find(loc);
    if (it == entries_.end()) {
        throw std::out_of_range("location '" + loc + "' has no region mapping");
    }
    return it->second;
}

const char* to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::Conservative: return "conservative";
        case ScenarioId::Neutral: return "neutral";
        case ScenarioId::Optimistic: return "optimistic";
    }
    return "neutral";
}

ScenarioId parse_scenario_id(const std::string& text) {
    if (text == "conservative") return ScenarioId::Conservative;
    if (text == "neutral") return ScenarioId::Neutral;
    if (text == "optimistic") return ScenarioId::Optimistic;
    throw validation_error("unknown scenario '" + text +
                           "' (expected conservative|neutral|optimistic)");
}

Scenario Scenario::canonical(ScenarioId id) {
    switch (id) {
        case ScenarioId::Conservative: return {id, 0.15, 0.10};
        case ScenarioId::Neutral: return {id, 0.25, 0.10};
        case ScenarioId::Optimistic: return {id, 0.35, 0.10};
    }
    return {ScenarioId::Neutral, 0.25, 0.10};
}

std::vector<Scenario> Scenario::canonical_set() {
    return {canonical(ScenarioId::Conservative), canonical(ScenarioId::Neutral),
            canonical(ScenarioId::Optimistic)};
}

const char* to_string(StressBand band) {
    switch (band) {
        case StressBand::Low: return "low";
        case StressBand::Elevated: return "elevated";
        case StressBand::High: return "high";
        case StressBand::Extreme: return "extreme";
    }
    return "low";
}

std::optional<std::string> check_schedule(const AiShareSchedule& s) {
    if (!(s.p1 > 0.0) || s.p1 > 1.0 || s.p2 > 1.0 || s.p3 > 1.0) {
        return "AI share out of range for '" + s.firm + "' (shares must lie in (0, 1])";
    }
    if (s.p2 < s.p1 || s.p3 < s.p2) {
        return "non-monotone AI share for '" + s.firm + "'";
    }
    return std::nullopt;
}

ValidationReport validate_dataset(const SiteInventory& inventory,
                                  const RegionMap& region_map,
                                  const std::vector<AiShareSchedule>& schedules) {
    ValidationReport report;
    auto add = [&report](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };

    std::set<FirmId> inventory_firms;
    std::set<std::pair<FirmId, LocationId>> seen;
    for (const auto& rec : inventory) {
        inventory_firms.insert(rec.firm);
        if (rec.firm.empty()) {
            add("empty-firm", "inventory row for location '" + rec.location +
                                  "' has an empty firm id");
        }
        if (rec.location.empty()) {
            add("empty-location", "inventory row for firm '" + rec.firm +
                                      "' has an empty location id");
        }
        if (!seen.insert({rec.firm, rec.location}).second) {
            add("duplicate-site", "duplicate inventory row for (" + rec.firm + ", " +
                                      rec.location + ")");
        }
        if (rec.site_count < 0) {
            add("negative-count", "negative site_count for (" + rec.firm + ", " +
                                      rec.location + ")");
        }
        if (rec.e_ai_loc && *rec.e_ai_loc < 0.0) {
            add("negative-energy", "negative modelled AI energy for (" + rec.firm +
                                       ", " + rec.location + ")");
        }
        if (!region_map.contains(rec.location)) {
            add("unmapped-location", "location '" + rec.location + "' (firm '" +
                                         rec.firm + "') has no region mapping");
        }
    }

    std::set<FirmId> scheduled;
    for (const auto& s : schedules) {
        scheduled.insert(s.firm);
        if (auto msg = check_schedule(s)) {
            add("bad-schedule", *msg);
        }
    }
    for (const auto& firm : inventory_firms) {
        if (!scheduled.count(firm)) {
            add("missing-schedule", "firm '" + firm + "' has inventory but no AI share schedule");
        }
    }
    for (const auto& s : schedules) {
        if (!inventory.empty() && !inventory_firms.count(s.firm)) {
            add("missing-firm", "firm '" + s.firm + "' is scheduled but absent from the inventory");
        }
    }
    return report;
}

const std::vector<AiShareSchedule>& default_schedules() {
    static const std::vector<AiShareSchedule> kSchedules = {
        {"Amazon", 0.30, 0.40, 0.60},
        {"Apple", 0.25, 0.30, 0.35},
        {"Google", 0.35, 0.40, 0.60},
        {"Meta", 0.35, 0.50, 0.60},
        {"Microsoft", 0.35, 0.45, 0.60},
        {"Oracle", 0.25, 0.35, 0.50},
    };
    return kSchedules;
}

const AiShareSchedule* find_default_schedule(const FirmId& firm) {
    for (const auto& s : default_schedules()) {
        if (s.firm == firm) return &s;
    }
    return nullptr;
}

}  // namespace nexus
