#pragma once

#include <string>
#include <vector>

#include "nexus/domain.hpp"

namespace nexus {

// Locale-independent float formatting for pipeline outputs: 6
// significant digits, '.' decimal separator, no exponent unless the
// magnitude forces one, negative zero normalized to "0".
std::string format_number(double v);

// Shortest representation that parses back to the same double; used by
// dataset serializers so a write/read cycle is lossless.
std::string format_exact(double v);

// Strict locale-independent numeric parsing (whole-field match).
double parse_double(const std::string& text, const std::string& context, int line);
std::int64_t parse_int(const std::string& text, const std::string& context, int line);

// Whole-file write with truncation; throws io_error on any failure.
void write_text_file(const std::string& path, const std::string& content);

// firm,location,site_count[,e_ai_loc_twh]
// Rejects malformed rows, negative counts/energies and duplicate
// (firm, location) keys, always naming the line. Energies land in MWh.
SiteInventory ingest_inventory(const std::string& path);

// region,year,generation_twh with positive generation. Regions whose
// history cannot support a 2019-2024 trend (single observation, or
// endpoints that cannot be established) are still ingested but flagged
// in `warnings`.
std::vector<SupplySeries> ingest_supply(const std::string& path,
                                        std::vector<std::string>* warnings = nullptr);

// firm,region,sentiment,relevance[,variant]. Sentiment outside [-1, 1]
// is an error; relevance outside [0, 1] is clamped with a warning.
std::vector<SitingEvidence> ingest_evidence(const std::string& path,
                                            std::vector<std::string>* warnings = nullptr);

// location,region; duplicate locations are rejected.
RegionMap ingest_region_map(const std::string& path);

// Dataset serializers, inverse to the ingest functions above.
void write_inventory(const std::string& path, const SiteInventory& inventory);
void write_supply(const std::string& path, const std::vector<SupplySeries>& supply);
void write_evidence(const std::string& path, const std::vector<SitingEvidence>& evidence);
void write_region_map(const std::string& path, const RegionMap& map);

}  // namespace nexus
