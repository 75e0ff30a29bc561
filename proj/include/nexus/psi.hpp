#pragma once

#include <map>
#include <vector>

#include "nexus/domain.hpp"

namespace nexus {

// Supply histories span 2019-2024; extrapolation compounds from 2024.
constexpr int kSupplyStartYear = 2019;
constexpr int kSupplyBaseYear = 2024;

// Compound annual growth rate between two endpoint values:
//   (e_end / e_start)^(1/years) - 1.
// Both values must be positive and years >= 1.
double supply_cagr(double e_start, double e_end, int years);

// Same formula, exposed for headline-number checks against published
// endpoint pairs.
double cagr_from_endpoints(double e_start, double e_end, int years);

// Value of a series at `year`: exact when observed, linearly interpolated
// between the nearest observed neighbours otherwise. Years outside the
// observed range throw std::domain_error.
double value_at(const SupplySeries& series, int year);

// Copy of the series with interior gaps filled by linear interpolation.
// Endpoint-based statistics are unaffected; this exists for reporting.
SupplySeries interpolate_history(const SupplySeries& series);

// Trend growth over the 2019-2024 window via endpoint CAGR. Both
// endpoints must be establishable (observed or interpolable).
double series_cagr(const SupplySeries& series);

// Regional supply at target_year >= 2024: the 2024 value compounded by
// the 2019-2024 trend CAGR.
double extrapolate_supply(const SupplySeries& series, int target_year);

// Stress bands on psi = demand / supply, left-closed at the thresholds:
//   [0, 0.10) low, [0.10, 0.25) elevated, [0.25, 0.40) high, >= 0.40 extreme.
StressBand classify_band(double psi);

// Fills psi and its band for one demand/supply pair (MWh). Supply must
// be positive, demand non-negative.
PsiRecord compute_psi(double e_dc, double e_supply);

struct PsiReport {
    std::vector<PsiRecord> records;     // descending psi, ties by region asc
    std::vector<RegionId> uncovered;    // demand regions with no usable supply
};

// Ranks regional demand against extrapolated supply for one year.
// Regions without a supply series (or with too little history to
// extrapolate) go to the uncovered appendix instead of the table.
// quantile_bin slices the ascending-psi ranking into `bins` rank bins,
// 1 = least stressed.
PsiReport psi_report(const std::map<RegionId, double>& demand_mwh,
                     const std::vector<SupplySeries>& supply, int year,
                     ScenarioId scenario, int bins = 4);

// Independent top-down check of the bottom-up total: a whole-sector
// demand forecast scaled by the hyperscale share of the sector and the
// modelled firms' share of hyperscale. Returns the implied total in the
// units of the input.
double cross_validate_global(double sector_total, double hyperscale_share,
                             double top_firm_share);

}  // namespace nexus
