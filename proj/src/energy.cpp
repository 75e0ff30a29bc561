#include "nexus/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nexus {

namespace {

// Hours per year cannot exceed a leap year.
constexpr double kMaxHours = 8784.0;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void validate(const EvolutionRates& rates) {
    require(rates.capacity_growth >= 0.10 && rates.capacity_growth <= 0.20,
            "capacity_growth must lie in [0.10, 0.20]");
    require(rates.efficiency_gain >= 0.01 && rates.efficiency_gain <= 0.03,
            "efficiency_gain must lie in [0.01, 0.03]");
    require(rates.utilization_drift >= 0.0, "utilization_drift must be non-negative");
}

ValidationReport validate_params(const BaselineParams& p) {
    ValidationReport report;
    auto add = [&report](std::string code, std::string message) {
        report.violations.push_back({std::move(code), std::move(message)});
    };
    if (p.n_train < 0) add("negative-count", "n_train must be non-negative");
    if (p.n_inference < 0) add("negative-count", "n_inference must be non-negative");
    if (p.p_avg_train_kw < 0.0) add("negative-power", "p_avg_train_kw must be non-negative");
    if (p.p_avg_inference_kw < 0.0)
        add("negative-power", "p_avg_inference_kw must be non-negative");
    if (p.u_train < 0.0 || p.u_train > 1.0)
        add("bad-utilization", "u_train must lie in [0, 1]");
    if (p.u_inference < 0.0 || p.u_inference > 1.0)
        add("bad-utilization", "u_inference must lie in [0, 1]");
    if (p.h_train < 0.0 || p.h_train > kMaxHours)
        add("bad-hours", "h_train must lie in [0, 8784]");
    if (p.h_inference < 0.0 || p.h_inference > kMaxHours)
        add("bad-hours", "h_inference must lie in [0, 8784]");
    if (p.pue < 1.0) add("bad-pue", "pue must be >= 1");
    // Inference utilization is usually reported between 0.2 and 0.4;
    // values outside that band are legal but worth a second look.
    if (p.u_inference >= 0.0 && p.u_inference <= 1.0 &&
        (p.u_inference < 0.2 || p.u_inference > 0.4)) {
        report.warnings.push_back("u_inference outside the typical [0.2, 0.4] band");
    }
    return report;
}

double compute_e_it(const BaselineParams& p) {
    require(p.n_train >= 0 && p.n_inference >= 0, "server counts must be non-negative");
    require(p.p_avg_train_kw >= 0.0 && p.p_avg_inference_kw >= 0.0,
            "average powers must be non-negative");
    require(p.u_train >= 0.0 && p.u_train <= 1.0 && p.u_inference >= 0.0 &&
                p.u_inference <= 1.0,
            "utilizations must lie in [0, 1]");
    require(p.h_train >= 0.0 && p.h_train <= kMaxHours && p.h_inference >= 0.0 &&
                p.h_inference <= kMaxHours,
            "hours must lie in [0, 8784]");
    // kW * hours gives kWh; /1000 lands in MWh. Multiplication stays
    // left-to-right so results are stable under any optimizer that
    // honours IEEE semantics.
    double train = static_cast<double>(p.n_train) * p.p_avg_train_kw * p.u_train * p.h_train;
    double inference = static_cast<double>(p.n_inference) * p.p_avg_inference_kw *
                       p.u_inference * p.h_inference;
    return (train + inference) / 1000.0;
}

EnergyRecord compute_e_dc(const BaselineParams& p) {
    require(p.pue >= 1.0, "pue must be >= 1");
    EnergyRecord rec;
    rec.e_it = compute_e_it(p);
    rec.e_dc = p.pue * rec.e_it;
    return rec;
}

BaselineParams evolve_baseline(const BaselineParams& p, const EvolutionRates& rates,
                               int years, const std::map<int, double>* pue_by_step) {
    validate(rates);
    require(years >= 0, "years must be non-negative");

    auto grow_count = [&](std::int64_t n) {
        double grown = static_cast<double>(n) * std::pow(1.0 + rates.capacity_growth, years);
        // Half-up rounding: counts of servers, not fractions of them.
        return static_cast<std::int64_t>(std::floor(grown + 0.5));
    };
    double decay = std::pow(1.0 - rates.efficiency_gain, years);
    auto drift_u = [&](double u) {
        return std::min(1.0, u + rates.utilization_drift * years);
    };

    BaselineParams out = p;
    out.n_train = grow_count(p.n_train);
    out.n_inference = grow_count(p.n_inference);
    out.p_avg_train_kw = p.p_avg_train_kw * decay;
    out.p_avg_inference_kw = p.p_avg_inference_kw * decay;
    out.u_train = drift_u(p.u_train);
    out.u_inference = drift_u(p.u_inference);
    if (pue_by_step) {
        auto it = pue_by_step->find(years);
        if (it != pue_by_step->end()) out.pue = it->second;
    }
    return out;
}

std::vector<EnergyRecord> site_energy_batch(std::span<const BaselineParams> sites,
                                            Exec exec) {
    std::vector<EnergyRecord> out(sites.size());
    for_each_index(sites.size(), exec, [&](std::size_t i) { out[i] = compute_e_dc(sites[i]); });
    return out;
}

}  // namespace nexus
