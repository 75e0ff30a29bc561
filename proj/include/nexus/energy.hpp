#pragma once

#include <map>
#include <span>
#include <vector>

#include "nexus/domain.hpp"
#include "nexus/exec.hpp"

namespace nexus {

struct EnergyRecord {
    double e_it = 0.0;  // MWh at the IT boundary
    double e_dc = 0.0;  // MWh at the facility boundary (PUE applied)
};

// Year-over-year drift applied by evolve_baseline. Bounds follow the
// calibrated ranges: capacity growth in [0.10, 0.20], efficiency gain
// in [0.01, 0.03], utilization drift non-negative.
struct EvolutionRates {
    double capacity_growth = 0.15;
    double efficiency_gain = 0.02;
    double utilization_drift = 0.0;
};

// Throws std::invalid_argument when a rate is outside its band.
void validate(const EvolutionRates& rates);

// Collects violations for out-of-range fields; u_inference outside the
// typical [0.2, 0.4] band is only a warning.
ValidationReport validate_params(const BaselineParams& p);

// IT-load energy in MWh:
//   (N_tr * P_tr * u_tr * H_tr + N_inf * P_inf * u_inf * H_inf) / 1000
// Powers are kW, so the /1000 lands the result in MWh.
double compute_e_it(const BaselineParams& p);

// Facility energy: PUE * e_it. Throws for PUE < 1.
EnergyRecord compute_e_dc(const BaselineParams& p);

// Rolls a baseline forward by `years`: server counts compound by
// capacity_growth and round half-up to integers, average powers decay
// by efficiency_gain, utilizations drift up and clamp at 1. PUE is
// carried unchanged unless pue_by_step has an entry for `years`.
BaselineParams evolve_baseline(const BaselineParams& p, const EvolutionRates& rates,
                               int years,
                               const std::map<int, double>* pue_by_step = nullptr);

// Batch kernel over sites. Output slot i depends only on input i.
std::vector<EnergyRecord> site_energy_batch(std::span<const BaselineParams> sites,
                                            Exec exec);

}  // namespace nexus
