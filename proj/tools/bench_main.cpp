#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "nexus/energy.hpp"
#include "nexus/scenario.hpp"
#include "nexus/siting.hpp"

using namespace nexus;

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* kernel, std::size_t n, double serial_ms, double parallel_ms,
            bool identical) {
    std::printf("%-12s n=%-9zu serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   identical: %s\n",
                kernel, n, serial_ms, parallel_ms,
                parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0,
                identical ? "yes" : "NO");
}

bool equal(const EnergyRecord& a, const EnergyRecord& b) {
    return a.e_it == b.e_it && a.e_dc == b.e_dc;
}

bool equal(const YearEnergy& a, const YearEnergy& b) {
    return a.e_stock == b.e_stock && a.e_ai_new == b.e_ai_new && a.e_new == b.e_new &&
           a.e_tot == b.e_tot;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_sites = 2'000'000;
    std::size_t n_projections = 200'000;
    std::size_t n_allocations = 20'000;

    CLI::App app{"serial vs parallel kernel benchmark"};
    app.add_option("--sites", n_sites, "site energy batch size");
    app.add_option("--projections", n_projections, "projection batch size");
    app.add_option("--allocations", n_allocations, "allocation batch size");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel path degrades to serial\n");
#endif

    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool all_identical = true;

    {
        std::vector<BaselineParams> sites(n_sites);
        std::uniform_int_distribution<std::int64_t> counts(100, 50'000);
        for (auto& p : sites) {
            p.n_train = counts(rng);
            p.n_inference = counts(rng);
            p.p_avg_train_kw = 0.3 + 0.7 * unit(rng);
            p.p_avg_inference_kw = 0.1 + 0.4 * unit(rng);
            p.u_train = 0.5 + 0.5 * unit(rng);
            p.u_inference = 0.2 + 0.2 * unit(rng);
            p.pue = 1.1 + 0.4 * unit(rng);
        }
        std::vector<EnergyRecord> serial, parallel;
        double s_ms = time_ms([&] { serial = site_energy_batch(sites, Exec::Serial); });
        double p_ms = time_ms([&] { parallel = site_energy_batch(sites, Exec::Parallel); });
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) {
            same = equal(serial[i], parallel[i]);
        }
        all_identical = all_identical && same;
        report("site_energy", n_sites, s_ms, p_ms, same);
    }

    {
        std::vector<ProjectionJob> jobs(n_projections);
        std::vector<Scenario> scenarios = Scenario::canonical_set();
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            auto& j = jobs[i];
            j.firm = "firm" + std::to_string(i % 64);
            j.scenario = scenarios[i % scenarios.size()];
            j.e_stock_2024 = 1e5 + 4e6 * unit(rng);
            j.e_ai_new_2024 = 1e4 + 1e6 * unit(rng);
            double p1 = 0.2 + 0.3 * unit(rng);
            double p3 = p1 + (1.0 - p1) * unit(rng) * 0.8;
            j.schedule = {j.firm, p1, (p1 + p3) / 2.0, p3};
            j.horizon = 2030 + static_cast<int>(i % 6);
        }
        std::vector<FirmTrajectory> serial, parallel;
        double s_ms = time_ms([&] { serial = project_batch(jobs, Exec::Serial); });
        double p_ms = time_ms([&] { parallel = project_batch(jobs, Exec::Parallel); });
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) {
            same = serial[i].series.size() == parallel[i].series.size();
            if (!same) break;
            auto it = parallel[i].series.begin();
            for (const auto& [year, e] : serial[i].series) {
                if (it->first != year || !equal(it->second, e)) {
                    same = false;
                    break;
                }
                ++it;
            }
        }
        all_identical = all_identical && same;
        report("projection", n_projections, s_ms, p_ms, same);
    }

    {
        constexpr int kLocations = 40;
        constexpr int kRegions = 8;
        RegionMap region_map;
        std::vector<LocationId> locations;
        for (int l = 0; l < kLocations; ++l) {
            LocationId loc = "loc" + std::to_string(l);
            locations.push_back(loc);
            region_map.insert(loc, "region" + std::to_string(l % kRegions));
        }
        Scenario neutral = Scenario::canonical(ScenarioId::Neutral);
        AiShareSchedule schedule{"firm", 0.3, 0.4, 0.6};
        FirmTrajectory trajectory =
            project_firm("firm", neutral, 4e7, 6e6, schedule, 2030);

        auto random_weights = [&](WeightKind kind) {
            AllocationWeights w{kind, "firm", {}};
            double total = 0.0;
            for (const auto& loc : locations) {
                double v = 0.01 + unit(rng);
                w.weights[loc] = v;
                total += v;
            }
            for (auto& [loc, v] : w.weights) v /= total;
            return w;
        };

        std::vector<AllocationJob> jobs(n_allocations);
        for (auto& j : jobs) {
            j.trajectory = &trajectory;
            j.w_ai = random_weights(WeightKind::Ai);
            j.w_hist = random_weights(WeightKind::Historical);
            j.year = 2030;
        }
        std::vector<std::map<RegionId, double>> serial, parallel;
        double s_ms = time_ms([&] { serial = allocate_batch(jobs, region_map, Exec::Serial); });
        double p_ms =
            time_ms([&] { parallel = allocate_batch(jobs, region_map, Exec::Parallel); });
        bool same = serial == parallel;
        all_identical = all_identical && same;
        report("allocation", n_allocations, s_ms, p_ms, same);
    }

    return all_identical ? 0 : 1;
}
