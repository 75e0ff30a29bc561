#include "nexus/psi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nexus {

double supply_cagr(double e_start, double e_end, int years) {
    if (!(e_start > 0.0) || !(e_end > 0.0)) {
        throw std::domain_error("CAGR endpoints must be positive");
    }
    if (years < 1) throw std::domain_error("CAGR needs at least one year");
    return std::pow(e_end / e_start, 1.0 / static_cast<double>(years)) - 1.0;
}

double cagr_from_endpoints(double e_start, double e_end, int years) {
    return supply_cagr(e_start, e_end, years);
}

double value_at(const SupplySeries& series, int year) {
    auto exact = series.history.find(year);
    if (exact != series.history.end()) return exact->second;

    // Nearest observed neighbours around the gap.
    auto above = series.history.upper_bound(year);
    if (above == series.history.begin() || above == series.history.end()) {
        throw std::domain_error("region '" + series.region + "' has no observation bracketing " +
                                std::to_string(year));
    }
    auto below = std::prev(above);
    double span = static_cast<double>(above->first - below->first);
    double t = static_cast<double>(year - below->first) / span;
    return below->second + t * (above->second - below->second);
}

SupplySeries interpolate_history(const SupplySeries& series) {
    SupplySeries out{series.region, series.history};
    if (series.history.size() < 2) return out;
    int first = series.history.begin()->first;
    int last = series.history.rbegin()->first;
    for (int year = first + 1; year < last; ++year) {
        if (!out.history.count(year)) out.history[year] = value_at(series, year);
    }
    return out;
}

double series_cagr(const SupplySeries& series) {
    double start = value_at(series, kSupplyStartYear);
    double end = value_at(series, kSupplyBaseYear);
    return supply_cagr(start, end, kSupplyBaseYear - kSupplyStartYear);
}

double extrapolate_supply(const SupplySeries& series, int target_year) {
    if (target_year < kSupplyBaseYear) {
        throw std::domain_error("supply extrapolation starts at 2024");
    }
    double cagr = series_cagr(series);
    double base = value_at(series, kSupplyBaseYear);
    return base * std::pow(1.0 + cagr, target_year - kSupplyBaseYear);
}

StressBand classify_band(double psi) {
    // Left-closed bands: a value sitting exactly on a threshold belongs
    // to the band above it.
    if (psi < 0.10) return StressBand::Low;
    if (psi < 0.25) return StressBand::Elevated;
    if (psi < 0.40) return StressBand::High;
    return StressBand::Extreme;
}

PsiRecord compute_psi(double e_dc, double e_supply) {
    if (!(e_supply > 0.0)) throw std::domain_error("supply must be positive");
    if (e_dc < 0.0) throw std::domain_error("demand must be non-negative");
    PsiRecord rec;
    rec.e_dc = e_dc;
    rec.e_supply = e_supply;
    rec.psi = e_dc / e_supply;
    rec.band = classify_band(rec.psi);
    return rec;
}

PsiReport psi_report(const std::map<RegionId, double>& demand_mwh,
                     const std::vector<SupplySeries>& supply, int year,
                     ScenarioId scenario, int bins) {
    if (bins < 1) throw std::invalid_argument("quantile bins must be >= 1");

    std::map<RegionId, const SupplySeries*> by_region;
    for (const auto& s : supply) by_region.emplace(s.region, &s);

    PsiReport report;
    for (const auto& [region, demand] : demand_mwh) {
        auto it = by_region.find(region);
        const SupplySeries* series = it == by_region.end() ? nullptr : it->second;
        double projected = 0.0;
        if (series) {
            try {
                projected = extrapolate_supply(*series, year);
            } catch (const std::domain_error&) {
                series = nullptr;  // not enough history to project
            }
        }
        if (!series) {
            report.uncovered.push_back(region);
            continue;
        }
        PsiRecord rec = compute_psi(demand, projected);
        rec.region = region;
        rec.year = year;
        rec.scenario = scenario;
        report.records.push_back(rec);
    }

    // Ranking: most stressed first, ties by region key so reruns agree.
    std::sort(report.records.begin(), report.records.end(),
              [](const PsiRecord& a, const PsiRecord& b) {
                  if (a.psi != b.psi) return a.psi > b.psi;
                  return a.region < b.region;
              });

    // Rank-based quantile bins over the ascending order; bin 1 holds the
    // least stressed records. With n records, ascending rank i lands in
    // bin floor(i * bins / n) + 1.
    std::size_t n = report.records.size();
    for (std::size_t desc = 0; desc < n; ++desc) {
        std::size_t asc = n - 1 - desc;
        report.records[desc].quantile_bin =
            static_cast<int>(asc * static_cast<std::size_t>(bins) / n) + 1;
    }
    return report;
}

double cross_validate_global(double sector_total, double hyperscale_share,
                             double top_firm_share) {
    if (!(sector_total > 0.0)) throw std::invalid_argument("sector total must be positive");
    if (!(hyperscale_share > 0.0) || hyperscale_share > 1.0) {
        throw std::invalid_argument("hyperscale share must lie in (0, 1]");
    }
    if (!(top_firm_share > 0.0) || top_firm_share > 1.0) {
        throw std::invalid_argument("modelled-firm share must lie in (0, 1]");
    }
    return sector_total * hyperscale_share * top_firm_share;
}

}  // namespace nexus
