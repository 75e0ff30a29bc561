#include <catch2/catch_amalgamated.hpp>

#include "nexus/energy.hpp"

using namespace nexus;
using Catch::Matchers::WithinRel;

namespace {

BaselineParams reference_site() {
    BaselineParams p;
    p.n_train = 1000;
    p.n_inference = 2000;
    p.p_avg_train_kw = 0.7;
    p.p_avg_inference_kw = 0.3;
    p.u_train = 0.8;
    p.u_inference = 0.3;
    p.h_train = 8760.0;
    p.h_inference = 8760.0;
    p.pue = 1.2;
    return p;
}

}  // namespace

TEST_CASE("IT energy reproduces the worked reference value") {
    // 1000*0.7*0.8*8760 = 4905600 kWh and 2000*0.3*0.3*8760 = 1576800 kWh;
    // together 6482.4 MWh. Every intermediate is integral, so the result
    // must be exact, not merely close.
    CHECK(compute_e_it(reference_site()) == 6482.4);
}

TEST_CASE("facility energy is the IT load scaled by PUE") {
    BaselineParams p = reference_site();

    p.pue = 1.0;
    EnergyRecord identity = compute_e_dc(p);
    CHECK(identity.e_dc == identity.e_it);

    p.pue = 1.5;
    EnergyRecord scaled = compute_e_dc(p);
    CHECK(scaled.e_dc == 1.5 * scaled.e_it);

    p.pue = 0.9;
    CHECK_THROWS_AS(compute_e_dc(p), std::invalid_argument);
}

TEST_CASE("IT energy is linear in the server counts") {
    BaselineParams p = reference_site();
    double base = compute_e_it(p);
    p.n_train *= 2;
    p.n_inference *= 2;
    // Doubling is a pure exponent shift, so even the bits agree.
    CHECK(compute_e_it(p) == 2.0 * base);
}

TEST_CASE("zero utilization means zero energy") {
    BaselineParams p = reference_site();
    p.u_train = 0.0;
    p.u_inference = 0.0;
    CHECK(compute_e_it(p) == 0.0);
}

TEST_CASE("IT energy rejects out-of-range inputs") {
    BaselineParams p = reference_site();
    p.u_train = 1.0001;
    CHECK_THROWS_AS(compute_e_it(p), std::invalid_argument);

    p = reference_site();
    p.h_inference = 8785.0;
    CHECK_THROWS_AS(compute_e_it(p), std::invalid_argument);

    p = reference_site();
    p.n_train = -1;
    CHECK_THROWS_AS(compute_e_it(p), std::invalid_argument);

    p = reference_site();
    p.p_avg_inference_kw = -0.1;
    CHECK_THROWS_AS(compute_e_it(p), std::invalid_argument);
}

TEST_CASE("parameter validation flags violations and advisory warnings separately") {
    BaselineParams p = reference_site();
    ValidationReport clean = validate_params(p);
    CHECK(clean.ok());
    CHECK(clean.warnings.empty());

    p.u_inference = 0.55;  // legal, but outside the usual band
    ValidationReport warned = validate_params(p);
    CHECK(warned.ok());
    REQUIRE(warned.warnings.size() == 1);
    CHECK(warned.warnings[0].find("u_inference") != std::string::npos);

    p.p_avg_train_kw = -2.0;
    CHECK_FALSE(validate_params(p).ok());
}

TEST_CASE("evolution rates are bounded by the calibrated bands") {
    CHECK_NOTHROW(validate(EvolutionRates{0.10, 0.01, 0.0}));
    CHECK_NOTHROW(validate(EvolutionRates{0.20, 0.03, 0.5}));
    CHECK_THROWS_AS(validate(EvolutionRates{0.09, 0.02, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(EvolutionRates{0.21, 0.02, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(EvolutionRates{0.15, 0.005, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(EvolutionRates{0.15, 0.031, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(EvolutionRates{0.15, 0.02, -0.01}), std::invalid_argument);
}

TEST_CASE("baseline evolution compounds counts with half-up rounding") {
    BaselineParams p;
    p.n_train = 100;
    p.n_inference = 10;
    p.p_avg_train_kw = 1.0;
    p.p_avg_inference_kw = 0.5;
    p.u_train = 0.9;
    p.u_inference = 0.3;

    EvolutionRates rates{0.15, 0.02, 0.0};
    BaselineParams two = evolve_baseline(p, rates, 2);
    CHECK(two.n_train == 132);  // 100 * 1.3225 rounds down
    CHECK(two.n_inference == 13);

    BaselineParams one = evolve_baseline(p, rates, 1);
    CHECK(one.n_inference == 12);  // 11.5 rounds half-up

    REQUIRE_THAT(two.p_avg_train_kw, WithinRel(0.9604, 1e-12));
    BaselineParams three = evolve_baseline(p, rates, 3);
    REQUIRE_THAT(three.p_avg_train_kw, WithinRel(0.941192, 1e-12));

    BaselineParams zero = evolve_baseline(p, rates, 0);
    CHECK(zero.n_train == 100);
    CHECK(zero.p_avg_train_kw == 1.0);
}

TEST_CASE("utilization drift clamps at full utilization") {
    BaselineParams p;
    p.n_train = 1;
    p.u_train = 0.9;
    p.u_inference = 0.2;
    EvolutionRates rates{0.15, 0.02, 0.05};
    BaselineParams out = evolve_baseline(p, rates, 3);
    CHECK(out.u_train == 1.0);  // 0.9 + 0.15 clamps
    REQUIRE_THAT(out.u_inference, WithinRel(0.35, 1e-12));
}

TEST_CASE("per-step PUE overrides replace the carried value") {
    BaselineParams p = reference_site();
    std::map<int, double> pue_by_step{{3, 1.1}};
    CHECK(evolve_baseline(p, {}, 3, &pue_by_step).pue == 1.1);
    CHECK(evolve_baseline(p, {}, 2, &pue_by_step).pue == 1.2);
    CHECK(evolve_baseline(p, {}, 3).pue == 1.2);
}

TEST_CASE("yearly composition agrees with one long step up to count rounding") {
    BaselineParams p;
    p.n_train = 123456;
    p.n_inference = 7890;
    p.p_avg_train_kw = 0.8;
    p.p_avg_inference_kw = 0.25;
    p.u_train = 0.75;
    p.u_inference = 0.30;
    EvolutionRates rates{0.17, 0.025, 0.01};

    const int n = 6;
    BaselineParams direct = evolve_baseline(p, rates, n);
    BaselineParams stepped = p;
    for (int i = 0; i < n; ++i) stepped = evolve_baseline(stepped, rates, 1);

    // Counts may drift by at most one per rounding step.
    CHECK(std::abs(stepped.n_train - direct.n_train) <= n);
    CHECK(std::abs(stepped.n_inference - direct.n_inference) <= n);
    REQUIRE_THAT(stepped.p_avg_train_kw, WithinRel(direct.p_avg_train_kw, 1e-12));
    REQUIRE_THAT(stepped.p_avg_inference_kw, WithinRel(direct.p_avg_inference_kw, 1e-12));
    REQUIRE_THAT(stepped.u_train, WithinRel(direct.u_train, 1e-12));
    REQUIRE_THAT(stepped.u_inference, WithinRel(direct.u_inference, 1e-12));
}

TEST_CASE("negative years are rejected") {
    CHECK_THROWS_AS(evolve_baseline(BaselineParams{}, {}, -1), std::invalid_argument);
}
