#include "nexus/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <tuple>

#include "nexus/csv.hpp"
#include "nexus/io.hpp"
#include "nexus/psi.hpp"
#include "nexus/scenario.hpp"
#include "nexus/siting.hpp"

namespace nexus {

namespace {

struct Dataset {
    SiteInventory inventory;
    RegionMap region_map;
    std::vector<SitingEvidence> evidence;
    std::vector<SupplySeries> supply;
    std::vector<std::string> warnings;
};

// Loads every input the stage needs; for the validate stage, loads
// whatever is configured so all problems surface at once.
Dataset load_dataset(const RunConfig& cfg, Stage upto) {
    bool everything = upto == Stage::Validate;
    Dataset d;
    if (!cfg.inventory_path.empty() && (everything || upto >= Stage::Allocate)) {
        d.inventory = ingest_inventory(cfg.inventory_path);
    }
    if (!cfg.region_map_path.empty() && (everything || upto >= Stage::Allocate)) {
        d.region_map = ingest_region_map(cfg.region_map_path);
    }
    if (!cfg.evidence_path.empty() && (everything || upto >= Stage::Allocate)) {
        d.evidence = ingest_evidence(cfg.evidence_path, &d.warnings);
    }
    if (!cfg.supply_path.empty() && (everything || upto >= Stage::Psi)) {
        d.supply = ingest_supply(cfg.supply_path, &d.warnings);
    }
    return d;
}

std::vector<AiShareSchedule> schedule_list(const RunConfig& cfg) {
    std::vector<AiShareSchedule> out;
    out.reserve(cfg.schedules.size());
    for (const auto& [firm, s] : cfg.schedules) out.push_back(s);
    return out;
}

void require_input(const std::string& path, const char* what) {
    if (path.empty()) {
        throw validation_error(std::string(what) + " data required for this stage");
    }
}

std::vector<std::string> discover_variants(const std::vector<SitingEvidence>& evidence) {
    std::set<std::string> tags;
    for (const auto& e : evidence) {
        if (!e.variant.empty()) tags.insert(e.variant);
    }
    return {tags.begin(), tags.end()};
}

// Evidence visible to one variant: its own rows plus the untagged base rows.
std::vector<SitingEvidence> variant_pool(const std::vector<SitingEvidence>& evidence,
                                         const std::string& variant) {
    std::vector<SitingEvidence> out;
    for (const auto& e : evidence) {
        if (e.variant.empty() || e.variant == variant) out.push_back(e);
    }
    return out;
}

// AI allocation weights for one firm under one evidence variant. The
// regional expansion probabilities scale the firm's modelled AI site
// energies (site counts when no energies are given); within a region,
// mass splits by the same base measure.
AllocationWeights variant_ai_weights(const FirmId& firm,
                                     const std::vector<SitingEvidence>& pool,
                                     const SiteInventory& inventory,
                                     const RegionMap& region_map) {
    std::map<RegionId, double> probs;
    {
        std::vector<SitingEvidence> firm_rows;
        for (const auto& e : pool) {
            if (e.firm == firm) firm_rows.push_back(e);
        }
        const std::vector<SitingEvidence>& rows = firm_rows.empty() ? pool : firm_rows;
        if (!rows.empty()) probs = expansion_probabilities(rows);
    }

    std::map<LocationId, double> base;
    bool any_energy = false;
    for (const auto& rec : inventory) {
        if (rec.firm != firm) continue;
        base.emplace(rec.location, 0.0);
        if (rec.e_ai_loc) any_energy = true;
    }
    for (const auto& rec : inventory) {
        if (rec.firm != firm) continue;
        base[rec.location] = any_energy ? rec.e_ai_loc.value_or(0.0)
                                        : static_cast<double>(rec.site_count);
    }

    std::map<RegionId, double> region_mass;
    std::map<RegionId, int> region_sites;
    for (const auto& [loc, b] : base) {
        const RegionId& r = region_map.region_of(loc);
        region_mass[r] += b;
        region_sites[r] += 1;
    }

    std::map<LocationId, double> energies;
    for (const auto& [loc, b] : base) {
        const RegionId& r = region_map.region_of(loc);
        double p = 1.0;  // no evidence at all: footprint carries the weight
        if (!probs.empty()) {
            auto it = probs.find(r);
            p = it == probs.end() ? 0.0 : it->second;
        }
        double share = region_mass[r] > 0.0 ? b / region_mass[r]
                                            : 1.0 / static_cast<double>(region_sites[r]);
        energies[loc] = p * share;
    }
    return ai_weights(energies, firm);
}

std::string escape_json(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string jstr(const std::string& s) { return "\"" + escape_json(s) + "\""; }

std::string render_trajectories_csv(const RunArtifacts& a) {
    std::string s = csv_line({"firm", "scenario", "year", "e_stock", "e_ai_new", "e_new", "e_tot"});
    for (const auto& t : a.trajectories) {
        for (const auto& [year, e] : t.series) {
            s += csv_line({t.firm, to_string(t.scenario), std::to_string(year),
                           format_number(mwh_to_twh(e.e_stock)),
                           format_number(mwh_to_twh(e.e_ai_new)),
                           format_number(mwh_to_twh(e.e_new)),
                           format_number(mwh_to_twh(e.e_tot))});
        }
    }
    return s;
}

std::string render_trajectories_json(const RunArtifacts& a) {
    std::string s = "[\n";
    bool first = true;
    for (const auto& t : a.trajectories) {
        for (const auto& [year, e] : t.series) {
            if (!first) s += ",\n";
            first = false;
            s += "  {\"firm\": " + jstr(t.firm) + ", \"scenario\": \"" +
                 to_string(t.scenario) + "\", \"year\": " + std::to_string(year) +
                 ", \"e_stock\": " + format_number(mwh_to_twh(e.e_stock)) +
                 ", \"e_ai_new\": " + format_number(mwh_to_twh(e.e_ai_new)) +
                 ", \"e_new\": " + format_number(mwh_to_twh(e.e_new)) +
                 ", \"e_tot\": " + format_number(mwh_to_twh(e.e_tot)) + "}";
        }
    }
    s += "\n]\n";
    return s;
}

std::string render_ensemble_csv(const RunArtifacts& a) {
    std::string s = csv_line({"scenario", "year", "mean", "min", "max", "paths"});
    for (const auto& r : a.ensemble) {
        s += csv_line({to_string(r.scenario), std::to_string(r.year),
                       format_number(mwh_to_twh(r.mean)), format_number(mwh_to_twh(r.min)),
                       format_number(mwh_to_twh(r.max)), std::to_string(r.paths)});
    }
    return s;
}

std::string render_ensemble_json(const RunArtifacts& a) {
    std::string s = "[\n";
    bool first = true;
    for (const auto& r : a.ensemble) {
        if (!first) s += ",\n";
        first = false;
        s += std::string("  {\"scenario\": \"") + to_string(r.scenario) +
             "\", \"year\": " + std::to_string(r.year) +
             ", \"mean\": " + format_number(mwh_to_twh(r.mean)) +
             ", \"min\": " + format_number(mwh_to_twh(r.min)) +
             ", \"max\": " + format_number(mwh_to_twh(r.max)) +
             ", \"paths\": " + std::to_string(r.paths) + "}";
    }
    s += "\n]\n";
    return s;
}

std::string render_regional_csv(const RunArtifacts& a) {
    std::string s = csv_line(
        {"scenario", "year", "region", "demand_twh", "demand_min_twh", "demand_max_twh"});
    for (const auto& r : a.regional) {
        s += csv_line({to_string(r.scenario), std::to_string(r.year), r.region,
                       format_number(mwh_to_twh(r.mean)), format_number(mwh_to_twh(r.min)),
                       format_number(mwh_to_twh(r.max))});
    }
    return s;
}

std::string render_regional_json(const RunArtifacts& a) {
    std::string s = "[\n";
    bool first = true;
    for (const auto& r : a.regional) {
        if (!first) s += ",\n";
        first = false;
        s += std::string("  {\"scenario\": \"") + to_string(r.scenario) +
             "\", \"year\": " + std::to_string(r.year) + ", \"region\": " + jstr(r.region) +
             ", \"demand_twh\": " + format_number(mwh_to_twh(r.mean)) +
             ", \"demand_min_twh\": " + format_number(mwh_to_twh(r.min)) +
             ", \"demand_max_twh\": " + format_number(mwh_to_twh(r.max)) + "}";
    }
    s += "\n]\n";
    return s;
}

std::string render_psi_csv(const RunArtifacts& a) {
    std::string s = csv_line(
        {"region", "year", "scenario", "e_dc", "e_supply", "psi", "band", "quantile_bin"});
    for (const auto& r : a.psi) {
        s += csv_line({r.region, std::to_string(r.year), to_string(r.scenario),
                       format_number(mwh_to_twh(r.e_dc)), format_number(mwh_to_twh(r.e_supply)),
                       format_number(r.psi), to_string(r.band),
                       std::to_string(r.quantile_bin)});
    }
    return s;
}

std::string render_psi_json(const RunArtifacts& a) {
    std::string s = "{\n  \"records\": [\n";
    bool first = true;
    for (const auto& r : a.psi) {
        if (!first) s += ",\n";
        first = false;
        s += "    {\"region\": " + jstr(r.region) + ", \"year\": " + std::to_string(r.year) +
             ", \"scenario\": \"" + to_string(r.scenario) +
             "\", \"e_dc\": " + format_number(mwh_to_twh(r.e_dc)) +
             ", \"e_supply\": " + format_number(mwh_to_twh(r.e_supply)) +
             ", \"psi\": " + format_number(r.psi) + ", \"band\": \"" + to_string(r.band) +
             "\", \"quantile_bin\": " + std::to_string(r.quantile_bin) + "}";
    }
    s += "\n  ],\n  \"uncovered\": [";
    for (std::size_t i = 0; i < a.psi_uncovered.size(); ++i) {
        if (i) s += ", ";
        s += jstr(a.psi_uncovered[i]);
    }
    s += "]\n}\n";
    return s;
}

std::string render_validation_json(const RunArtifacts& a, Stage upto) {
    const CrosscheckSummary& c = a.crosscheck;
    std::string s = "{\n";
    s += "  \"crosscheck\": {\n";
    s += "    \"sector_total_twh\": " + format_number(c.sector_total_twh) + ",\n";
    s += "    \"hyperscale_share\": " + format_number(c.hyperscale_share) + ",\n";
    s += "    \"top_firm_share\": " + format_number(c.top_firm_share) + ",\n";
    s += "    \"implied_twh\": " + format_number(c.implied_twh) + ",\n";
    s += std::string("    \"evaluated\": ") + (c.evaluated ? "true" : "false");
    if (c.evaluated) {
        s += ",\n    \"conservative_twh\": " + format_number(c.conservative_twh);
        s += ",\n    \"optimistic_twh\": " + format_number(c.optimistic_twh);
        s += std::string(",\n    \"contained\": ") + (c.contained ? "true" : "false");
    }
    s += "\n  },\n";

    s += "  \"cagr\": [\n";
    for (std::size_t i = 0; i < a.cagr_checks.size(); ++i) {
        const CagrCheck& g = a.cagr_checks[i];
        s += std::string("    {\"scenario\": \"") + to_string(g.scenario) +
             "\", \"start_twh\": " + format_number(g.start_twh) +
             ", \"end_twh\": " + format_number(g.end_twh) +
             ", \"years\": " + std::to_string(g.years) +
             ", \"cagr\": " + format_number(g.cagr) + "}";
        s += i + 1 < a.cagr_checks.size() ? ",\n" : "\n";
    }
    s += "  ]";

    if (upto >= Stage::Allocate) {
        s += ",\n  \"conservation\": {\"max_rel_residual\": " +
             format_number(a.conservation.max_rel_residual) +
             ", \"tolerance\": " + format_number(a.conservation.tolerance) +
             ", \"pass\": " + (a.conservation.pass ? "true" : "false") + "}";
    }
    if (upto >= Stage::Psi) {
        s += ",\n  \"psi\": {\"year\": " + std::to_string(a.psi_year) + ", \"uncovered\": [";
        for (std::size_t i = 0; i < a.psi_uncovered.size(); ++i) {
            if (i) s += ", ";
            s += jstr(a.psi_uncovered[i]);
        }
        s += "]}";
    }

    s += ",\n  \"warnings\": [";
    for (std::size_t i = 0; i < a.warnings.size(); ++i) {
        if (i) s += ", ";
        s += jstr(a.warnings[i]);
    }
    s += "]\n}\n";
    return s;
}

}  // namespace

ValidationReport run_validation(const RunConfig& cfg, Stage upto) {
    Dataset d = load_dataset(cfg, upto);
    ValidationReport report = validate_dataset(d.inventory, d.region_map, schedule_list(cfg));
    report.warnings.insert(report.warnings.end(), d.warnings.begin(), d.warnings.end());
    return report;
}

RunArtifacts run_pipeline(const RunConfig& cfg, Stage upto, Exec exec,
                          std::optional<ScenarioId> only_scenario, int psi_year) {
    RunArtifacts out;
    if (upto == Stage::Validate) {
        ValidationReport report = run_validation(cfg, upto);
        if (!report.ok()) {
            throw validation_error("dataset has " + std::to_string(report.violations.size()) +
                                   " violation(s); run the validate stage for details");
        }
        out.warnings = report.warnings;
        return out;
    }

    if (cfg.anchors.empty()) {
        throw validation_error("config defines no firm anchors");
    }
    if (upto >= Stage::Allocate) {
        require_input(cfg.inventory_path, "inventory");
        require_input(cfg.region_map_path, "region map");
        require_input(cfg.evidence_path, "evidence");
    }
    if (upto >= Stage::Psi) {
        require_input(cfg.supply_path, "supply");
    }

    Dataset data = load_dataset(cfg, upto);
    out.warnings = data.warnings;

    if (upto >= Stage::Allocate) {
        ValidationReport report =
            validate_dataset(data.inventory, data.region_map, schedule_list(cfg));
        if (!report.ok()) {
            std::string msg = "dataset validation failed:";
            for (const auto& v : report.violations) msg += "\n  [" + v.code + "] " + v.message;
            throw validation_error(msg);
        }
        out.warnings.insert(out.warnings.end(), report.warnings.begin(),
                            report.warnings.end());
    }

    std::vector<Scenario> scenarios;
    for (const Scenario& s : cfg.scenarios) {
        if (!only_scenario || s.id == *only_scenario) scenarios.push_back(s);
    }
    if (scenarios.empty()) {
        throw validation_error("scenario filter matches nothing");
    }

    // Projection jobs, firm-major so the output rows land pre-sorted.
    std::vector<ProjectionJob> jobs;
    jobs.reserve(cfg.anchors.size() * scenarios.size());
    for (const auto& [firm, anchor] : cfg.anchors) {
        for (const Scenario& s : scenarios) {
            jobs.push_back({firm, s, anchor.e_stock_2024, anchor.e_ai_new_2024,
                            cfg.schedules.at(firm), cfg.horizon});
        }
    }
    out.trajectories = project_batch(jobs, exec);

    // Global totals are geography-free, so every ensemble path shares
    // them; the aggregation still runs over the full path set to keep
    // the reported band honest about its width.
    const std::size_t n_scenarios = scenarios.size();
    for (std::size_t si = 0; si < n_scenarios; ++si) {
        YearSeries totals;
        for (int year = kAnchorYear; year <= cfg.horizon; ++year) totals[year] = 0.0;
        for (std::size_t fi = 0; fi < cfg.anchors.size(); ++fi) {
            const FirmTrajectory& t = out.trajectories[fi * n_scenarios + si];
            for (const auto& [year, e] : t.series) totals[year] += e.e_tot;
        }
        std::vector<YearSeries> paths(static_cast<std::size_t>(cfg.paths.count), totals);
        for (const EnsembleResult& r : ensemble_aggregate(paths, scenarios[si].id)) {
            out.ensemble.push_back(r);
        }
    }

    // Crosscheck and headline growth from this run's own endpoints.
    out.crosscheck.sector_total_twh = cfg.sector_total_twh;
    out.crosscheck.hyperscale_share = cfg.hyperscale_share;
    out.crosscheck.top_firm_share = cfg.top_firm_share;
    out.crosscheck.implied_twh =
        cross_validate_global(cfg.sector_total_twh, cfg.hyperscale_share, cfg.top_firm_share);
    {
        double cons = 0.0, opt = 0.0;
        bool has_cons = false, has_opt = false;
        for (std::size_t si = 0; si < n_scenarios; ++si) {
            double start_twh = 0.0, end_twh = 0.0;
            for (std::size_t fi = 0; fi < cfg.anchors.size(); ++fi) {
                const FirmTrajectory& t = out.trajectories[fi * n_scenarios + si];
                start_twh += mwh_to_twh(t.series.at(kAnchorYear).e_tot);
                end_twh += mwh_to_twh(t.series.at(cfg.horizon).e_tot);
            }
            int years = cfg.horizon - kAnchorYear;
            out.cagr_checks.push_back({scenarios[si].id, start_twh, end_twh, years,
                                       cagr_from_endpoints(start_twh, end_twh, years)});
            if (scenarios[si].id == ScenarioId::Conservative) {
                cons = end_twh;
                has_cons = true;
            }
            if (scenarios[si].id == ScenarioId::Optimistic) {
                opt = end_twh;
                has_opt = true;
            }
        }
        if (has_cons && has_opt) {
            out.crosscheck.evaluated = true;
            out.crosscheck.conservative_twh = cons;
            out.crosscheck.optimistic_twh = opt;
            out.crosscheck.contained =
                cons <= out.crosscheck.implied_twh && out.crosscheck.implied_twh <= opt;
        }
    }

    if (upto < Stage::Allocate) return out;

    // Allocation: per (scenario, path, year, firm) jobs, flattened so
    // one batch covers the whole grid, then reduced in that same order.
    const std::vector<std::string> discovered = discover_variants(data.evidence);
    std::map<std::string, std::map<FirmId, AllocationWeights>> ai_cache;
    std::map<FirmId, AllocationWeights> hist_cache;
    for (const auto& [firm, anchor] : cfg.anchors) {
        hist_cache.emplace(firm, hist_weights(data.inventory, firm));
    }
    auto ai_for = [&](const std::string& variant) -> std::map<FirmId, AllocationWeights>& {
        auto it = ai_cache.find(variant);
        if (it != ai_cache.end()) return it->second;
        std::vector<SitingEvidence> pool = variant_pool(data.evidence, variant);
        std::map<FirmId, AllocationWeights> per_firm;
        for (const auto& [firm, anchor] : cfg.anchors) {
            per_firm.emplace(firm,
                             variant_ai_weights(firm, pool, data.inventory, data.region_map));
        }
        return ai_cache.emplace(variant, std::move(per_firm)).first->second;
    };

    const int n_paths = cfg.paths.count;
    const int n_years = cfg.horizon - kAnchorYear + 1;
    std::vector<AllocationJob> alloc_jobs;
    alloc_jobs.reserve(n_scenarios * static_cast<std::size_t>(n_paths) * n_years *
                       cfg.anchors.size());
    for (std::size_t si = 0; si < n_scenarios; ++si) {
        for (int p = 1; p <= n_paths; ++p) {
            auto& per_firm = ai_for(cfg.paths.variant_for(p, discovered));
            for (int year = kAnchorYear; year <= cfg.horizon; ++year) {
                std::size_t fi = 0;
                for (const auto& [firm, anchor] : cfg.anchors) {
                    AllocationJob job;
                    job.trajectory = &out.trajectories[fi * n_scenarios + si];
                    job.w_ai = per_firm.at(firm);
                    job.w_hist = hist_cache.at(firm);
                    job.year = year;
                    alloc_jobs.push_back(std::move(job));
                    ++fi;
                }
            }
        }
    }
    std::vector<std::map<RegionId, double>> alloc_results =
        allocate_batch(alloc_jobs, data.region_map, exec);

    // Reduce: per (scenario, year, region) statistics across paths, and
    // the conservation residual per (scenario, path, year).
    struct Stat {
        double sum = 0.0, min = 0.0, max = 0.0;
        bool seen = false;
    };
    std::map<std::tuple<std::size_t, int, RegionId>, Stat> stats;
    std::size_t cursor = 0;
    const std::size_t n_firms = cfg.anchors.size();
    for (std::size_t si = 0; si < n_scenarios; ++si) {
        for (int p = 1; p <= n_paths; ++p) {
            for (int year = kAnchorYear; year <= cfg.horizon; ++year) {
                std::vector<std::map<RegionId, double>> per_firm(
                    alloc_results.begin() + static_cast<std::ptrdiff_t>(cursor),
                    alloc_results.begin() + static_cast<std::ptrdiff_t>(cursor + n_firms));
                cursor += n_firms;
                std::map<RegionId, double> totals = regional_totals(per_firm);

                double allocated = 0.0;
                for (const auto& [region, v] : totals) allocated += v;
                double expected = 0.0;
                for (std::size_t fi = 0; fi < n_firms; ++fi) {
                    expected +=
                        out.trajectories[fi * n_scenarios + si].series.at(year).e_tot;
                }
                double scale = std::max(std::abs(expected), 1.0);
                double residual = std::abs(allocated - expected) / scale;
                out.conservation.max_rel_residual =
                    std::max(out.conservation.max_rel_residual, residual);

                for (const auto& [region, v] : totals) {
                    Stat& st = stats[{si, year, region}];
                    if (!st.seen) {
                        st.min = v;
                        st.max = v;
                        st.seen = true;
                    } else {
                        st.min = std::min(st.min, v);
                        st.max = std::max(st.max, v);
                    }
                    st.sum += v;
                }
            }
        }
    }
    out.conservation.pass =
        out.conservation.max_rel_residual <= out.conservation.tolerance;

    for (const auto& [key, st] : stats) {
        const auto& [si, year, region] = key;
        out.regional.push_back({scenarios[si].id, year, region,
                                st.sum / static_cast<double>(n_paths), st.min, st.max});
    }

    if (upto < Stage::Psi) return out;

    int report_year = psi_year != 0 ? psi_year : (cfg.psi_year != 0 ? cfg.psi_year : cfg.horizon);
    if (report_year < kAnchorYear || report_year > cfg.horizon) {
        throw validation_error("psi year " + std::to_string(report_year) +
                               " is outside [2024, horizon]");
    }
    out.psi_year = report_year;

    std::set<RegionId> uncovered;
    for (std::size_t si = 0; si < n_scenarios; ++si) {
        std::map<RegionId, double> demand;
        for (const RegionalStat& r : out.regional) {
            if (r.scenario == scenarios[si].id && r.year == report_year) {
                demand[r.region] = r.mean;
            }
        }
        PsiReport report = psi_report(demand, data.supply, report_year, scenarios[si].id,
                                      cfg.quantile_bins);
        out.psi.insert(out.psi.end(), report.records.begin(), report.records.end());
        uncovered.insert(report.uncovered.begin(), report.uncovered.end());
    }
    out.psi_uncovered.assign(uncovered.begin(), uncovered.end());
    return out;
}

std::vector<std::string> write_outputs(const RunArtifacts& artifacts, Stage upto,
                                       OutputFormat format, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create output directory '" + out_dir + "'");

    bool json = format == OutputFormat::Json;
    const char* ext = json ? ".json" : ".csv";
    std::vector<std::pair<std::string, std::string>> files;
    if (upto >= Stage::Forecast) {
        files.emplace_back(std::string("firm_trajectories") + ext,
                           json ? render_trajectories_json(artifacts)
                                : render_trajectories_csv(artifacts));
        files.emplace_back(std::string("global_ensemble") + ext,
                           json ? render_ensemble_json(artifacts)
                                : render_ensemble_csv(artifacts));
    }
    if (upto >= Stage::Allocate) {
        files.emplace_back(std::string("regional_demand") + ext,
                           json ? render_regional_json(artifacts)
                                : render_regional_csv(artifacts));
    }
    if (upto >= Stage::Psi) {
        files.emplace_back(std::string("psi_report") + ext,
                           json ? render_psi_json(artifacts) : render_psi_csv(artifacts));
    }
    files.emplace_back("validation.json", render_validation_json(artifacts, upto));

    std::vector<std::string> written;
    written.reserve(files.size());
    try {
        for (const auto& [name, content] : files) {
            std::string path = (fs::path(out_dir) / name).string();
            write_text_file(path, content);
            written.push_back(path);
        }
    } catch (...) {
        // A failed run must not leave a partial output set behind.
        for (const auto& [name, content] : files) {
            fs::remove(fs::path(out_dir) / name, ec);
        }
        throw;
    }
    return written;
}

}  // namespace nexus
