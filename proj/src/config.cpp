#include "nexus/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "nexus/io.hpp"

namespace nexus {

std::string PathPlan::variant_for(int path,
                                  const std::vector<std::string>& discovered) const {
    auto it = overrides.find(path);
    if (it != overrides.end()) return it->second;
    const std::vector<std::string>& pool = variants.empty() ? discovered : variants;
    if (pool.empty()) return "";
    return pool[static_cast<std::size_t>(path - 1) % pool.size()];
}

namespace {

struct IniEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<IniEntry> parse_ini(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");

    std::vector<IniEntry> entries;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw io_error(path + ":" + std::to_string(line_no) + ": malformed section header");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw io_error(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw io_error(path + ":" + std::to_string(line_no) + ": empty key");
        }
        if (section.empty()) {
            throw io_error(path + ":" + std::to_string(line_no) + ": key outside any section");
        }
        entries.push_back({section, key, value, line_no});
    }
    if (in.bad()) throw io_error("read failure on '" + path + "'");
    return entries;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
    throw validation_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : value) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cur = trim(cur);
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::string resolve_path(const std::filesystem::path& config_dir, const std::string& value) {
    std::filesystem::path p(value);
    if (p.is_absolute()) return p.lexically_normal().string();
    return (config_dir / p).lexically_normal().string();
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    RunConfig cfg;
    cfg.scenarios = Scenario::canonical_set();
    const std::filesystem::path config_dir = std::filesystem::path(path).parent_path();

    std::map<ScenarioId, Scenario> scenario_overrides;
    std::map<FirmId, AiShareSchedule> explicit_schedules;

    for (const auto& e : parse_ini(path)) {
        auto as_double = [&](void) { return parse_double(e.value, path, e.line); };
        auto as_int = [&](void) {
            return static_cast<int>(parse_int(e.value, path, e.line));
        };

        if (e.section == "run") {
            if (e.key == "horizon") cfg.horizon = as_int();
            else if (e.key == "psi_year") cfg.psi_year = as_int();
            else if (e.key == "quantile_bins") cfg.quantile_bins = as_int();
            else if (e.key == "out_dir") cfg.out_dir = e.value;
            else fail(path, e.line, "unknown key '" + e.key + "' in [run]");
        } else if (e.section == "inputs") {
            std::string resolved = resolve_path(config_dir, e.value);
            if (e.key == "inventory") cfg.inventory_path = resolved;
            else if (e.key == "supply") cfg.supply_path = resolved;
            else if (e.key == "evidence") cfg.evidence_path = resolved;
            else if (e.key == "region_map") cfg.region_map_path = resolved;
            else fail(path, e.line, "unknown key '" + e.key + "' in [inputs]");
        } else if (e.section == "crosscheck") {
            if (e.key == "sector_total_twh") cfg.sector_total_twh = as_double();
            else if (e.key == "hyperscale_share") cfg.hyperscale_share = as_double();
            else if (e.key == "top_firm_share") cfg.top_firm_share = as_double();
            else fail(path, e.line, "unknown key '" + e.key + "' in [crosscheck]");
        } else if (e.section == "paths") {
            if (e.key == "count") {
                cfg.paths.count = as_int();
            } else if (e.key == "variants") {
                cfg.paths.variants = split_list(e.value);
                for (const auto& v : cfg.paths.variants) {
                    if (v.empty()) fail(path, e.line, "empty variant name in list");
                }
            } else if (e.key.rfind("path.", 0) == 0) {
                int n = static_cast<int>(parse_int(e.key.substr(5), path, e.line));
                cfg.paths.overrides[n] = e.value;
            } else {
                fail(path, e.line, "unknown key '" + e.key + "' in [paths]");
            }
        } else if (e.section.rfind("scenario.", 0) == 0) {
            ScenarioId id = parse_scenario_id(e.section.substr(9));
            auto [it, inserted] =
                scenario_overrides.try_emplace(id, Scenario::canonical(id));
            if (e.key == "g_new") it->second.g_new = as_double();
            else if (e.key == "g_stock") it->second.g_stock = as_double();
            else fail(path, e.line, "unknown key '" + e.key + "' in [" + e.section + "]");
            if (it->second.g_new <= -1.0 || it->second.g_stock <= -1.0) {
                fail(path, e.line, "growth rates must exceed -1");
            }
        } else if (e.section.rfind("anchor.", 0) == 0) {
            FirmId firm = e.section.substr(7);
            if (firm.empty()) fail(path, e.line, "anchor section needs a firm name");
            auto& anchor = cfg.anchors[firm];
            double twh = as_double();
            if (twh < 0.0) fail(path, e.line, "anchors must be non-negative");
            if (e.key == "e_stock_2024_twh") anchor.e_stock_2024 = twh_to_mwh(twh);
            else if (e.key == "e_ai_new_2024_twh") anchor.e_ai_new_2024 = twh_to_mwh(twh);
            else fail(path, e.line, "unknown key '" + e.key + "' in [" + e.section + "]");
        } else if (e.section.rfind("schedule.", 0) == 0) {
            FirmId firm = e.section.substr(9);
            if (firm.empty()) fail(path, e.line, "schedule section needs a firm name");
            auto& s = explicit_schedules[firm];
            s.firm = firm;
            if (e.key == "p1") s.p1 = as_double();
            else if (e.key == "p2") s.p2 = as_double();
            else if (e.key == "p3") s.p3 = as_double();
            else fail(path, e.line, "unknown key '" + e.key + "' in [" + e.section + "]");
        } else {
            fail(path, e.line, "unknown section [" + e.section + "]");
        }
    }

    for (const auto& [id, s] : scenario_overrides) {
        for (auto& target : cfg.scenarios) {
            if (target.id == id) target = s;
        }
    }

    if (cfg.horizon < 2025) {
        throw validation_error(path + ": horizon must be 2025 or later");
    }
    if (cfg.psi_year != 0 && (cfg.psi_year < 2024 || cfg.psi_year > cfg.horizon)) {
        throw validation_error(path + ": psi_year must lie in [2024, horizon]");
    }
    if (cfg.quantile_bins < 1) {
        throw validation_error(path + ": quantile_bins must be >= 1");
    }
    if (cfg.paths.count < 1) {
        throw validation_error(path + ": path count must be >= 1");
    }
    for (const auto& [n, variant] : cfg.paths.overrides) {
        if (n < 1 || n > cfg.paths.count) {
            throw validation_error(path + ": path override " + std::to_string(n) +
                                   " is outside 1.." + std::to_string(cfg.paths.count));
        }
    }
    if (!(cfg.sector_total_twh > 0.0)) {
        throw validation_error(path + ": sector_total_twh must be positive");
    }
    if (!(cfg.hyperscale_share > 0.0) || cfg.hyperscale_share > 1.0 ||
        !(cfg.top_firm_share > 0.0) || cfg.top_firm_share > 1.0) {
        throw validation_error(path + ": crosscheck shares must lie in (0, 1]");
    }

    // Resolve one schedule per anchored firm: explicit section first,
    // then the shipped defaults.
    cfg.schedules = explicit_schedules;
    for (const auto& [firm, anchor] : cfg.anchors) {
        if (cfg.schedules.count(firm)) continue;
        if (const AiShareSchedule* d = find_default_schedule(firm)) {
            cfg.schedules[firm] = *d;
        } else {
            throw validation_error(path + ": firm '" + firm +
                                   "' has anchors but no AI share schedule");
        }
    }
    for (const auto& [firm, s] : cfg.schedules) {
        if (auto msg = check_schedule(s)) {
            throw validation_error(path + ": " + *msg);
        }
    }

    for (const std::string& input :
         {cfg.inventory_path, cfg.supply_path, cfg.evidence_path, cfg.region_map_path}) {
        if (!input.empty() && !std::filesystem::exists(input)) {
            throw validation_error(path + ": input file '" + input + "' does not exist");
        }
    }
    return cfg;
}

}  // namespace nexus
