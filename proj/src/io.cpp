#include "nexus/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <system_error>

#include "nexus/csv.hpp"
#include "nexus/psi.hpp"

namespace nexus {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_row(const std::string& context, int line, const std::string& what) {
    throw validation_error(context + ":" + std::to_string(line) + ": " + what);
}

void check_header(const CsvTable& table, const std::string& path,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {}) {
    std::vector<std::string> expected = required;
    if (table.header.size() > required.size()) {
        expected.insert(expected.end(), optional.begin(), optional.end());
    }
    if (table.header != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ',';
            want += expected[i];
        }
        throw io_error(path + ":1: unexpected header (want '" + want + "')");
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    std::string out(buf, res.ptr);
    if (out == "-0") out = "0";
    return out;
}

std::string format_exact(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string out(buf, res.ptr);
    if (out == "-0") out = "0";
    return out;
}

double parse_double(const std::string& text, const std::string& context, int line) {
    std::string t = trim(text);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
        fail_row(context, line, "'" + text + "' is not a finite number");
    }
    return v;
}

std::int64_t parse_int(const std::string& text, const std::string& context, int line) {
    std::string t = trim(text);
    std::int64_t v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        fail_row(context, line, "'" + text + "' is not an integer");
    }
    return v;
}

SiteInventory ingest_inventory(const std::string& path) {
    CsvTable table = read_csv(path);
    check_header(table, path, {"firm", "location", "site_count"}, {"e_ai_loc_twh"});
    bool has_energy = table.header.size() == 4;

    SiteInventory inventory;
    std::set<std::pair<FirmId, LocationId>> seen;
    for (const auto& row : table.rows) {
        SiteRecord rec;
        rec.firm = trim(row.fields[0]);
        rec.location = trim(row.fields[1]);
        if (rec.firm.empty()) fail_row(path, row.line, "empty firm id");
        if (rec.location.empty()) fail_row(path, row.line, "empty location id");
        if (!seen.insert({rec.firm, rec.location}).second) {
            fail_row(path, row.line,
                     "duplicate site (" + rec.firm + ", " + rec.location + ")");
        }
        rec.site_count = parse_int(row.fields[2], path, row.line);
        if (rec.site_count < 0) fail_row(path, row.line, "site_count must be non-negative");
        if (has_energy && !trim(row.fields[3]).empty()) {
            double twh = parse_double(row.fields[3], path, row.line);
            if (twh < 0.0) fail_row(path, row.line, "e_ai_loc_twh must be non-negative");
            rec.e_ai_loc = twh_to_mwh(twh);
        }
        inventory.push_back(std::move(rec));
    }
    return inventory;
}

std::vector<SupplySeries> ingest_supply(const std::string& path,
                                        std::vector<std::string>* warnings) {
    CsvTable table = read_csv(path);
    check_header(table, path, {"region", "year", "generation_twh"});

    std::map<RegionId, SupplySeries> by_region;
    for (const auto& row : table.rows) {
        RegionId region = trim(row.fields[0]);
        if (region.empty()) fail_row(path, row.line, "empty region id");
        int year = static_cast<int>(parse_int(row.fields[1], path, row.line));
        double twh = parse_double(row.fields[2], path, row.line);
        if (!(twh > 0.0)) fail_row(path, row.line, "generation_twh must be positive");
        auto& series = by_region[region];
        series.region = region;
        if (!series.history.emplace(year, twh_to_mwh(twh)).second) {
            fail_row(path, row.line, "duplicate observation for (" + region + ", " +
                                         std::to_string(year) + ")");
        }
    }

    std::vector<SupplySeries> out;
    out.reserve(by_region.size());
    for (auto& [region, series] : by_region) {
        if (warnings) {
            // A series that cannot produce the 2019-2024 trend is kept
            // but will fall out of any stress table that needs it.
            try {
                double start = value_at(series, kSupplyStartYear);
                double end = value_at(series, kSupplyBaseYear);
                supply_cagr(start, end, kSupplyBaseYear - kSupplyStartYear);
            } catch (const std::domain_error&) {
                warnings->push_back("region '" + region + "': CAGR unavailable");
            }
        }
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<SitingEvidence> ingest_evidence(const std::string& path,
                                            std::vector<std::string>* warnings) {
    CsvTable table = read_csv(path);
    check_header(table, path, {"firm", "region", "sentiment", "relevance"}, {"variant"});
    bool has_variant = table.header.size() == 5;

    std::vector<SitingEvidence> out;
    for (const auto& row : table.rows) {
        SitingEvidence e;
        e.firm = trim(row.fields[0]);  // empty = firm-agnostic
        e.region = trim(row.fields[1]);
        if (e.region.empty()) fail_row(path, row.line, "empty region id");
        e.sentiment = parse_double(row.fields[2], path, row.line);
        if (e.sentiment < -1.0 || e.sentiment > 1.0) {
            fail_row(path, row.line, "sentiment must lie in [-1, 1]");
        }
        double relevance = parse_double(row.fields[3], path, row.line);
        if (relevance < 0.0 || relevance > 1.0) {
            double clamped = std::clamp(relevance, 0.0, 1.0);
            if (warnings) {
                warnings->push_back(path + ":" + std::to_string(row.line) +
                                    ": relevance " + format_exact(relevance) +
                                    " clamped to " + format_exact(clamped));
            }
            relevance = clamped;
        }
        e.relevance = relevance;
        if (has_variant) e.variant = trim(row.fields[4]);
        out.push_back(std::move(e));
    }
    return out;
}

RegionMap ingest_region_map(const std::string& path) {
    CsvTable table = read_csv(path);
    check_header(table, path, {"location", "region"});

    RegionMap map;
    for (const auto& row : table.rows) {
        LocationId loc = trim(row.fields[0]);
        RegionId region = trim(row.fields[1]);
        if (loc.empty()) fail_row(path, row.line, "empty location id");
        if (region.empty()) fail_row(path, row.line, "empty region id");
        if (map.contains(loc)) {
            fail_row(path, row.line, "location '" + loc + "' mapped twice");
        }
        map.insert(loc, region);
    }
    return map;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on '" + path + "'");
}

void write_inventory(const std::string& path, const SiteInventory& inventory) {
    bool has_energy = std::any_of(inventory.begin(), inventory.end(),
                                  [](const SiteRecord& r) { return r.e_ai_loc.has_value(); });
    std::string content;
    content += has_energy ? csv_line({"firm", "location", "site_count", "e_ai_loc_twh"})
                          : csv_line({"firm", "location", "site_count"});
    for (const auto& rec : inventory) {
        std::vector<std::string> fields = {rec.firm, rec.location,
                                           std::to_string(rec.site_count)};
        if (has_energy) {
            fields.push_back(rec.e_ai_loc ? format_exact(mwh_to_twh(*rec.e_ai_loc)) : "");
        }
        content += csv_line(fields);
    }
    write_text_file(path, content);
}

void write_supply(const std::string& path, const std::vector<SupplySeries>& supply) {
    std::string content = csv_line({"region", "year", "generation_twh"});
    for (const auto& series : supply) {
        for (const auto& [year, mwh] : series.history) {
            content += csv_line({series.region, std::to_string(year),
                                 format_exact(mwh_to_twh(mwh))});
        }
    }
    write_text_file(path, content);
}

void write_evidence(const std::string& path, const std::vector<SitingEvidence>& evidence) {
    bool has_variant = std::any_of(evidence.begin(), evidence.end(),
                                   [](const SitingEvidence& e) { return !e.variant.empty(); });
    std::string content;
    content += has_variant
                   ? csv_line({"firm", "region", "sentiment", "relevance", "variant"})
                   : csv_line({"firm", "region", "sentiment", "relevance"});
    for (const auto& e : evidence) {
        std::vector<std::string> fields = {e.firm, e.region, format_exact(e.sentiment),
                                           format_exact(e.relevance)};
        if (has_variant) fields.push_back(e.variant);
        content += csv_line(fields);
    }
    write_text_file(path, content);
}

void write_region_map(const std::string& path, const RegionMap& map) {
    std::string content = csv_line({"location", "region"});
    for (const auto& [loc, region] : map.entries()) {
        content += csv_line({loc, region});
    }
    write_text_file(path, content);
}

}  // namespace nexus
