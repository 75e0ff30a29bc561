#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nexus {

// Thrown for unreadable/unwritable files and malformed file structure.
// The CLI maps this to exit code 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown for semantically invalid datasets or configs. Exit code 1.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using FirmId = std::string;
using LocationId = std::string;
using RegionId = std::string;

// All energies are stored in MWh internally; TWh appears only at the
// file boundary.
constexpr double kMwhPerTwh = 1e6;

inline double twh_to_mwh(double twh) { return twh * kMwhPerTwh; }
inline double mwh_to_twh(double mwh) { return mwh / kMwhPerTwh; }

// Total mapping from location to grid region. Backed by std::map so
// iteration (and therefore every downstream reduction) is ordered.
class RegionMap {
public:
    RegionMap() = default;
    explicit RegionMap(std::map<LocationId, RegionId> entries)
        : entries_(std::move(entries)) {}

    // Rejects remapping an existing location.
    void insert(const LocationId& loc, const RegionId& region);

    bool contains(const LocationId& loc) const {
        return entries_.count(loc) != 0;
    }

    // Throws std::out_of_range for unmapped locations.
    const RegionId& region_of(const LocationId& loc) const;

    const std::map<LocationId, RegionId>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::map<LocationId, RegionId> entries_;
};

// Per-site fleet description used by the bottom-up energy model.
// Powers are kW, utilizations are fractions, hours are per year.
struct BaselineParams {
    std::int64_t n_train = 0;
    std::int64_t n_inference = 0;
    double p_avg_train_kw = 0.0;
    double p_avg_inference_kw = 0.0;
    double u_train = 0.0;
    double u_inference = 0.0;
    double h_train = 8760.0;
    double h_inference = 8760.0;
    double pue = 1.0;
};

enum class ScenarioId { Conservative, Neutral, Optimistic };

const char* to_string(ScenarioId id);
ScenarioId parse_scenario_id(const std::string& text);  // throws validation_error

// Growth-rate pair for one projection scenario. g_new applies to the
// AI-attributable new load, g_stock to the legacy stock.
struct Scenario {
    ScenarioId id = ScenarioId::Neutral;
    double g_new = 0.25;
    double g_stock = 0.10;

    static Scenario canonical(ScenarioId id);
    static std::vector<Scenario> canonical_set();
};

// Piecewise-constant AI share of new capacity: p1 for 2025, p2 for
// 2026-2027, p3 from 2028 on. Must satisfy 0 < p1 <= p2 <= p3 <= 1.
struct AiShareSchedule {
    FirmId firm;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

// One year of a firm's projected energy, MWh. e_tot == e_stock + e_new;
// e_ai_new is the AI-attributable part of e_new.
struct YearEnergy {
    double e_stock = 0.0;
    double e_ai_new = 0.0;
    double e_new = 0.0;
    double e_tot = 0.0;
};

struct FirmTrajectory {
    FirmId firm;
    ScenarioId scenario = ScenarioId::Neutral;
    std::map<int, YearEnergy> series;  // contiguous years, anchor first
};

// Cross-path summary of the global total for one (scenario, year).
struct EnsembleResult {
    ScenarioId scenario = ScenarioId::Neutral;
    int year = 0;
    std::size_t paths = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// One piece of expansion-signal evidence. Sentiment is a polarity score
// in [-1, 1]; relevance is a similarity weight in [0, 1]. The variant
// tag groups evidence into alternative readings of the same record set;
// ensemble paths select a variant each.
struct SitingEvidence {
    FirmId firm;  // empty = firm-agnostic
    RegionId region;
    double sentiment = 0.0;
    double relevance = 0.0;
    std::string variant;  // empty = base
};

enum class WeightKind { Ai, Historical };

// Normalized per-location allocation weights for one firm. Weights sum
// to 1 within 1e-9.
struct AllocationWeights {
    WeightKind kind = WeightKind::Historical;
    FirmId firm;
    std::map<LocationId, double> weights;
};

struct SiteRecord {
    FirmId firm;
    LocationId location;
    std::int64_t site_count = 0;
    std::optional<double> e_ai_loc;  // modelled AI energy at the site, MWh
};

using SiteInventory = std::vector<SiteRecord>;

// Observed regional generation history, MWh by year.
struct SupplySeries {
    RegionId region;
    std::map<int, double> history;
};

enum class StressBand { Low, Elevated, High, Extreme };

const char* to_string(StressBand band);

// Demand/supply stress for one (region, year, scenario) cell.
struct PsiRecord {
    RegionId region;
    int year = 0;
    ScenarioId scenario = ScenarioId::Neutral;
    double e_dc = 0.0;     // MWh
    double e_supply = 0.0; // MWh
    double psi = 0.0;
    StressBand band = StressBand::Low;
    int quantile_bin = 0;  // 1 = least stressed bin
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

// Collects violations instead of throwing: unmapped locations, negative
// counts/energies, bad share schedules, firms present on one side of the
// dataset but not the other.
ValidationReport validate_dataset(const SiteInventory& inventory,
                                  const RegionMap& region_map,
                                  const std::vector<AiShareSchedule>& schedules);

// Checks one schedule; returns nullopt when valid, else a message.
std::optional<std::string> check_schedule(const AiShareSchedule& s);

// The six firms the model ships defaults for, with their published
// AI-share schedules. The registry is open: configs may add firms or
// override these values.
const std::vector<AiShareSchedule>& default_schedules();
const AiShareSchedule* find_default_schedule(const FirmId& firm);

}  // namespace nexus
