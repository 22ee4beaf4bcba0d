#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "snse/config.hpp"
#include "snse/constants.hpp"
#include "snse/errors.hpp"
#include "snse/verify.hpp"

using namespace snse;

namespace {

const SpectralModel& calibrated_model() {
    static const SpectralModel mod = model_from_config(
        parse_config_text("model.basis = sphere\n"
                          "model.n = 8\n"
                          "model.m = 4\n"
                          "model.tensor_fill = 24\n"
                          "model.f_amplitude = 0.5\n"
                          "model.eta_trials = 2000\n"
                          "noise.beta = 1.5\n"
                          "noise.sigma = 1.0\n"),
        42);
    return mod;
}

VerifySettings fast_settings() {
    VerifySettings s;
    s.trials = 800;
    s.n_samples = 60000;
    s.energy_traj = 10;
    s.energy_T = 2.0;
    s.estz_blocks = 600;
    s.gamma_T = 200.0;
    s.adelta_runs = 6;
    s.adelta_T = 0.5;
    s.feller_pairs = 4;
    return s;
}

double stat_of(const CheckResult& res, const std::string& key) {
    for (const auto& [k, v] : res.stats)
        if (k == key) return v;
    FAIL("missing stat '" << key << "' in check '" << res.name << "'");
    return 0.0;
}

}  // namespace

TEST_CASE("registry lists every check once, in canonical order") {
    const auto& reg = check_registry();
    REQUIRE(reg.size() == 11);
    const char* expected[] = {
        "poincare", "antisymmetry", "bsum", "ou_moments", "energy_chain", "estz",
        "gamma_negativity", "adelta_bound", "feller", "negative_gamma_control",
        "negative_energy_control"};
    for (std::size_t i = 0; i < reg.size(); ++i) CHECK(reg[i].first == expected[i]);
}

TEST_CASE("run_checks rejects unknown names") {
    const VerifySettings s = fast_settings();
    CHECK_THROWS_AS(run_checks(calibrated_model(), s, 1, {"poincare", "nope"}),
                    ParamError);
}

TEST_CASE("exact-identity and sampling checks pass on the calibrated model") {
    const VerifySettings s = fast_settings();
    const auto results = run_checks(
        calibrated_model(), s, 42,
        {"poincare", "antisymmetry", "bsum", "ou_moments", "estz", "gamma_negativity",
         "feller"});
    REQUIRE(results.size() == 7);
    for (const auto& res : results) {
        INFO(res.name << ": " << res.detail);
        CHECK(res.passed);
    }
    CHECK(stat_of(results[0], "worst_ratio_minus_1") <= 0.0 + 1e-12);
    CHECK(stat_of(results[1], "worst_pairing_rel") <= 1e-12);
    CHECK(stat_of(results[3], "worst_rel_error") < 0.05);
    CHECK(stat_of(results[6], "blowups") == 0.0);
}

TEST_CASE("energy chain and envelope checks produce their statistics") {
    const VerifySettings s = fast_settings();
    const auto results =
        run_checks(calibrated_model(), s, 42, {"energy_chain", "adelta_bound"});
    REQUIRE(results.size() == 2);

    const CheckResult& chain = results[0];
    CHECK(stat_of(chain, "rows_h") > 0.0);
    CHECK(stat_of(chain, "blowups") == 0.0);
    CHECK(std::isfinite(stat_of(chain, "mass_h")));
    CHECK(std::isfinite(stat_of(chain, "worst_ratio_h")));

    const CheckResult& env = results[1];
    CHECK(std::isfinite(stat_of(env, "worst_d0.25_h")));
    CHECK(std::isfinite(stat_of(env, "worst_d0.25_h_half")));
    CHECK(std::isfinite(stat_of(env, "worst_d0.50_h")));
    CHECK(std::isfinite(stat_of(env, "worst_d0.50_h_half")));
}

TEST_CASE("energy chain on a weak-noise family measures a nonvacuous refinement law") {
    const SpectralModel weak = model_from_config(
        parse_config_text("model.basis = sphere\n"
                          "model.n = 8\n"
                          "model.m = 4\n"
                          "model.tensor_fill = 24\n"
                          "model.f_amplitude = 0\n"
                          "noise.beta = 1.5\n"
                          "noise.sigma = 0.1\n"
                          "ou.alpha = 1\n"),
        42);
    VerifySettings s = fast_settings();
    s.energy_traj = 30;
    s.energy_T = 10.0;
    const auto results =
        run_checks(weak, s, 2026, {"energy_chain", "negative_energy_control"});
    REQUIRE(results.size() == 2);

    const CheckResult& chain = results[0];
    INFO(chain.detail);
    CHECK(chain.passed);
    // Trajectories at the noise floor really do come within tau(h) of
    // tightness, the mass shrinks into the refinement band, and no step
    // breaks the inequality outright.
    CHECK(stat_of(chain, "mass_h") > 0.0);
    CHECK(stat_of(chain, "mass_h_over_2") > 0.0);
    CHECK(stat_of(chain, "refinement_factor") >= constants::kRefineLo);
    CHECK(stat_of(chain, "refinement_factor") <= constants::kRefineHi);
    CHECK(stat_of(chain, "worst_ratio_h") < 0.0);

    const CheckResult& control = results[1];
    INFO(control.detail);
    CHECK(control.passed);
    CHECK(stat_of(control, "inner_worst_ratio_h") > constants::kCTau);
}

TEST_CASE("thrown diagnostics become failed results with the message attached") {
    VerifySettings s = fast_settings();
    s.estz_p = -1.0;  // check_estz throws on a nonsensical moment order
    const auto results = run_checks(calibrated_model(), s, 1, {"estz"});
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].passed);
    CHECK(results[0].detail.rfind("threw:", 0) == 0);
}

TEST_CASE("negative controls demand a live interaction bound") {
    const SpectralModel inert = model_from_config(
        parse_config_text("model.tensor = zero\nmodel.eta_trials = 2000\n"), 7);
    REQUIRE(inert.eta_hat == 0.0);
    const VerifySettings s = fast_settings();
    const auto results = run_checks(
        inert, s, 7, {"negative_gamma_control", "negative_energy_control"});
    for (const auto& res : results) {
        CHECK_FALSE(res.passed);
        CHECK(res.detail.find("eta_hat") != std::string::npos);
    }
}

TEST_CASE("results are bitwise deterministic in the seed and thread count") {
    VerifySettings s = fast_settings();
    s.energy_traj = 6;
    s.energy_T = 1.0;
    const auto a = run_checks(calibrated_model(), s, 9, {"ou_moments", "energy_chain"});
    s.threads = 3;
    const auto b = run_checks(calibrated_model(), s, 9, {"ou_moments", "energy_chain"});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].stats.size() == b[i].stats.size());
        for (std::size_t j = 0; j < a[i].stats.size(); ++j) {
            CHECK(a[i].stats[j].first == b[i].stats[j].first);
            const double va = a[i].stats[j].second, vb = b[i].stats[j].second;
            const bool equal = va == vb || (std::isnan(va) && std::isnan(vb));
            CHECK(equal);
        }
    }
}
