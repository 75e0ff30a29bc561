// Acceptance harness: checks the headline numeric contracts end to end,
// one [PASS]/[FAIL] line per criterion. Exits non-zero if any fail.
//
// usage: nexus_acceptance <cli-binary> <data-dir> <work-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nexus/energy.hpp"
#include "nexus/io.hpp"
#include "nexus/pipeline.hpp"
#include "nexus/psi.hpp"
#include "nexus/scenario.hpp"
#include "nexus/siting.hpp"

namespace fs = std::filesystem;
using namespace nexus;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
        std::cout << "[PASS] " << name << "\n";
    } else {
        ++g_failures;
        std::cout << "[FAIL] " << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
    }
}

// Runs a criterion body, converting any escaped exception into a FAIL.
template <typename Fn>
void criterion(const std::string& name, Fn&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(name, false, std::string("unexpected exception: ") + e.what());
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<unreadable: " + p.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

std::string sh_quote(const std::string& s) { return "'" + s + "'"; }

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CommandResult run_command(const std::string& cmd, const fs::path& work) {
    static int seq = 0;
    ++seq;
    fs::path out_file = work / ("cmd" + std::to_string(seq) + ".out");
    fs::path err_file = work / ("cmd" + std::to_string(seq) + ".err");
    std::string full =
        cmd + " > " + sh_quote(out_file.string()) + " 2> " + sh_quote(err_file.string());
    int status = std::system(full.c_str());
    CommandResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const EnsembleResult* find_ensemble(const RunArtifacts& a, ScenarioId id, int year) {
    for (const auto& r : a.ensemble) {
        if (r.scenario == id && r.year == year) return &r;
    }
    return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: nexus_acceptance <cli-binary> <data-dir> <work-dir>\n";
        return 2;
    }
    // Absolute paths keep the spawned commands and generated configs
    // independent of this process's working directory.
    const std::string cli = fs::absolute(argv[1]).string();
    const fs::path data_dir = fs::absolute(argv[2]);
    const fs::path work = fs::absolute(argv[3]);
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string config = (data_dir / "config.ini").string();

    // 1. The top-down crosscheck: 945 * 0.70 * 0.40 = 264.6 TWh, inside
    //    the published 239-295 bottom-up range, via library and CLI.
    criterion("global-crosscheck", [&] {
        auto t0 = std::chrono::steady_clock::now();
        double implied = cross_validate_global(945.0, 0.70, 0.40);
        bool exact = rel_err(implied, 264.6) < 1e-12;
        bool contained = 239.0 <= implied && implied <= 295.0;
        CommandResult r = run_command(sh_quote(cli) + " crosscheck", work);
        bool cli_ok = r.exit_code == 0 && trim(r.out) == "264.6";
        double secs = seconds_since(t0);
        report("global-crosscheck", exact && contained && cli_ok && secs < 1.0,
               "implied=" + format_exact(implied) + " cli='" + trim(r.out) +
                   "' exit=" + std::to_string(r.exit_code) +
                   " secs=" + std::to_string(secs));
    });

    // 2. Headline growth rates from the range endpoints: 12.48% and
    //    16.50% over 2024-2030, within one basis point.
    criterion("headline-cagr", [&] {
        double low = cagr_from_endpoints(118.0, 239.0, 6);
        double high = cagr_from_endpoints(118.0, 295.0, 6);
        bool ok = std::abs(low - 0.1248) < 1e-4 && std::abs(high - 0.1650) < 1e-4;
        report("headline-cagr", ok,
               "low=" + format_exact(low) + " high=" + format_exact(high));
    });

    // 3. The shipped fixture: anchors reproduce 118 TWh exactly in 2024,
    //    and the 2030 scenario totals are ordered and inside [200, 350].
    criterion("fixture-forecast", [&] {
        auto t0 = std::chrono::steady_clock::now();
        RunConfig cfg = RunConfig::load(config);
        RunArtifacts a = run_pipeline(cfg, Stage::Psi);
        double secs = seconds_since(t0);

        bool ok = true;
        std::string detail;
        for (ScenarioId id :
             {ScenarioId::Conservative, ScenarioId::Neutral, ScenarioId::Optimistic}) {
            const EnsembleResult* anchor = find_ensemble(a, id, 2024);
            if (!anchor || anchor->mean != twh_to_mwh(118.0)) {
                ok = false;
                detail += "2024 total not exactly 118 TWh; ";
            }
        }
        const EnsembleResult* cons = find_ensemble(a, ScenarioId::Conservative, 2030);
        const EnsembleResult* neut = find_ensemble(a, ScenarioId::Neutral, 2030);
        const EnsembleResult* opti = find_ensemble(a, ScenarioId::Optimistic, 2030);
        if (!cons || !neut || !opti) {
            ok = false;
            detail += "2030 rows missing; ";
        } else {
            double c = mwh_to_twh(cons->mean);
            double n = mwh_to_twh(neut->mean);
            double o = mwh_to_twh(opti->mean);
            if (!(c < n && n < o)) {
                ok = false;
                detail += "2030 totals not ordered; ";
            }
            for (double v : {c, n, o}) {
                if (!(200.0 <= v && v <= 350.0)) {
                    ok = false;
                    detail += "2030 total " + format_number(v) + " outside [200, 350]; ";
                }
            }
            detail += "2030 cons/neut/opt = " + format_number(c) + "/" + format_number(n) +
                      "/" + format_number(o);
        }
        if (secs >= 10.0) {
            ok = false;
            detail += "; took " + std::to_string(secs) + "s";
        }
        report("fixture-forecast", ok, detail);
    });

    // 4. Stress bands at their thresholds, and the ranking puts a
    //    demand/supply ratio of 0.5 on top.
    criterion("stress-bands", [&] {
        bool bands = classify_band(0.05) == StressBand::Low &&
                     classify_band(0.10) == StressBand::Elevated &&
                     classify_band(0.25) == StressBand::High &&
                     classify_band(0.40) == StressBand::Extreme &&
                     classify_band(0.50) == StressBand::Extreme;

        std::map<RegionId, double> demand = {{"half", 50.0}, {"a", 10.0}, {"b", 20.0}};
        std::vector<SupplySeries> supply;
        for (const char* r : {"half", "a", "b"}) {
            supply.push_back({r, {{2019, 100.0}, {2024, 100.0}}});
        }
        PsiReport rep = psi_report(demand, supply, 2030, ScenarioId::Neutral, 4);
        bool ranked = !rep.records.empty() && rep.records[0].region == "half" &&
                      rep.records[0].psi == 0.5 &&
                      rep.records[0].band == StressBand::Extreme;
        report("stress-bands", bands && ranked,
               bands ? "ranking did not put the 0.5 ratio first" : "band mapping wrong");
    });

    // 5. Randomized allocation cases: regional totals re-sum to the firm
    //    total, weights are normalized, and the weights are invariant to
    //    input order and to uniform scaling of the mass measure.
    criterion("allocation-conservation", [&] {
        std::mt19937 rng(424242);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> energy(1e4, 5e7);
        int cases = 0;
        std::string detail;
        for (int trial = 0; trial < 500; ++trial) {
            double stock = energy(rng);
            double ai = 0.1 + unit(rng) * stock;
            double p1 = 0.05 + 0.7 * unit(rng);
            double p2 = std::min(p1 + 0.2 * unit(rng), 1.0);
            double p3 = std::min(p2 + 0.2 * unit(rng), 1.0);
            int horizon = 2026 + static_cast<int>(rng() % 7);
            Scenario sc = Scenario::canonical_set()[rng() % 3];
            FirmTrajectory t =
                project_firm("f", sc, stock, ai, {"f", p1, p2, p3}, horizon);

            int n_loc = 1 + static_cast<int>(rng() % 9);
            RegionMap map;
            std::vector<std::pair<LocationId, double>> mass_rows;
            std::map<LocationId, double> ai_mass, hist_mass;
            for (int l = 0; l < n_loc; ++l) {
                LocationId loc = "loc" + std::to_string(l);
                map.insert(loc, "r" + std::to_string(rng() % 4));
                double m = 0.01 + unit(rng);
                mass_rows.push_back({loc, m});
                ai_mass[loc] = m;
                hist_mass[loc] = 0.01 + unit(rng);
            }

            AllocationWeights w_ai = ai_weights(ai_mass, "f");
            AllocationWeights w_hist = ai_weights(hist_mass, "f");
            w_hist.kind = WeightKind::Historical;

            double sum_ai = 0.0, sum_hist = 0.0;
            for (const auto& [loc, w] : w_ai.weights) sum_ai += w;
            for (const auto& [loc, w] : w_hist.weights) sum_hist += w;
            if (std::abs(sum_ai - 1.0) > 1e-9 || std::abs(sum_hist - 1.0) > 1e-9) {
                detail = "weights not normalized on trial " + std::to_string(trial);
                break;
            }

            int year = 2024 + static_cast<int>(rng() % (horizon - 2024 + 1));
            auto out = allocate_regional(t, w_ai, w_hist, map, year, sc.id);
            double allocated = 0.0;
            for (const auto& [region, v] : out) allocated += v;
            if (rel_err(allocated, t.series.at(year).e_tot) > 1e-9) {
                detail = "conservation violated on trial " + std::to_string(trial);
                break;
            }

            // Input order must not matter: the same rows reversed.
            std::map<LocationId, double> reversed;
            for (auto it = mass_rows.rbegin(); it != mass_rows.rend(); ++it) {
                reversed[it->first] = it->second;
            }
            if (ai_weights(reversed, "f").weights != w_ai.weights) {
                detail = "permutation changed the weights on trial " + std::to_string(trial);
                break;
            }

            // Scaling the mass measure must not matter either.
            double lambda = 0.5 + 20.0 * unit(rng);
            std::map<LocationId, double> scaled;
            for (const auto& [loc, m] : ai_mass) scaled[loc] = m * lambda;
            AllocationWeights w_scaled = ai_weights(scaled, "f");
            for (const auto& [loc, w] : w_ai.weights) {
                if (std::abs(w_scaled.weights.at(loc) - w) > 1e-12) {
                    detail = "scaling changed the weights on trial " + std::to_string(trial);
                    break;
                }
            }
            if (!detail.empty()) break;
            ++cases;
        }
        report("allocation-conservation", cases == 500,
               detail + " (" + std::to_string(cases) + "/500 cases)");
    });

    // 6. Closed-form compounding matches iterated year steps.
    criterion("compounding-consistency", [&] {
        std::mt19937 rng(515151);
        std::uniform_real_distribution<double> base_d(1e3, 1e8);
        std::uniform_real_distribution<double> rate_d(-0.5, 0.5);
        int bad = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            double base = base_d(rng);
            double g = rate_d(rng);
            int n = 1 + static_cast<int>(rng() % 20);
            double closed = project_stock(base, g, 2024 + n);
            double iterated = base;
            for (int i = 0; i < n; ++i) iterated *= (1.0 + g);
            if (rel_err(closed, iterated) > 1e-9) ++bad;
        }
        report("compounding-consistency", bad == 0,
               std::to_string(bad) + "/1000 triples disagreed");
    });

    // 7. The bottom-up site model: the worked reference fleet lands on
    //    6482.4 MWh exactly, PUE 1 is the identity, doubling is exact.
    criterion("site-energy", [&] {
        BaselineParams site;
        site.n_train = 1000;
        site.n_inference = 2000;
        site.p_avg_train_kw = 0.7;
        site.p_avg_inference_kw = 0.3;
        site.u_train = 0.8;
        site.u_inference = 0.3;
        site.h_train = 8760.0;
        site.h_inference = 8760.0;
        site.pue = 1.0;

        double e_it = compute_e_it(site);
        bool exact = e_it == 6482.4;
        bool identity = compute_e_dc(site).e_dc == e_it;

        BaselineParams doubled = site;
        doubled.n_train *= 2;
        doubled.n_inference *= 2;
        bool linear = compute_e_it(doubled) == 2.0 * e_it;

        report("site-energy", exact && identity && linear,
               "e_it=" + format_exact(e_it));
    });

    // 8. Two full CLI runs of the same config produce byte-identical files.
    criterion("run-determinism", [&] {
        fs::path run1 = work / "run1";
        fs::path run2 = work / "run2";
        CommandResult r1 = run_command(
            sh_quote(cli) + " psi " + sh_quote(config) + " --out " + sh_quote(run1.string()),
            work);
        CommandResult r2 = run_command(
            sh_quote(cli) + " psi " + sh_quote(config) + " --out " + sh_quote(run2.string()),
            work);
        bool ok = r1.exit_code == 0 && r2.exit_code == 0;
        std::string detail = "exit codes " + std::to_string(r1.exit_code) + "/" +
                             std::to_string(r2.exit_code);
        for (const char* name : {"firm_trajectories.csv", "global_ensemble.csv",
                                 "regional_demand.csv", "psi_report.csv", "validation.json"}) {
            std::string a = slurp(run1 / name);
            std::string b = slurp(run2 / name);
            if (a.empty() || a != b) {
                ok = false;
                detail += std::string("; ") + name + " differs";
            }
        }
        report("run-determinism", ok, detail);
    });

    // Extra: the CLI's error contract (not a numbered criterion, but the
    // scripts around this tool depend on it).
    criterion("cli-contract", [&] {
        CommandResult bad_flag =
            run_command(sh_quote(cli) + " psi --no-such-flag " + sh_quote(config), work);
        bool usage_exit = bad_flag.exit_code == 2;

        std::string partial = (work / "partial.ini").string();
        write_text_file(partial,
                        "[inputs]\n"
                        "inventory = " + (data_dir / "inventory.csv").string() + "\n" +
                        "region_map = " + (data_dir / "region_map.csv").string() + "\n" +
                        "evidence = " + (data_dir / "evidence.csv").string() + "\n" +
                        "[anchor.Google]\n"
                        "e_stock_2024_twh = 18\n"
                        "e_ai_new_2024_twh = 3\n");
        CommandResult no_supply =
            run_command(sh_quote(cli) + " psi " + sh_quote(partial), work);
        bool stage_gate = no_supply.exit_code == 1 &&
                          no_supply.err.find("supply data required") != std::string::npos;

        fs::path env_dir = work / "env_out";
        fs::path flag_dir = work / "flag_out";
        CommandResult env_run = run_command(
            "NEXUS_OUT_DIR=" + sh_quote(env_dir.string()) + " " + sh_quote(cli) +
                " forecast " + sh_quote(config) + " --out " + sh_quote(flag_dir.string()),
            work);
        bool env_override = env_run.exit_code == 0 &&
                            fs::exists(env_dir / "global_ensemble.csv") &&
                            !fs::exists(flag_dir);

        report("cli-contract", usage_exit && stage_gate && env_override,
               "bad-flag exit=" + std::to_string(bad_flag.exit_code) +
                   " no-supply exit=" + std::to_string(no_supply.exit_code) +
                   (env_override ? "" : " env override failed"));
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria failed\n";
    return 1;
}
