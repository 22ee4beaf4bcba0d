#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "snse/config.hpp"
#include "snse/csv.hpp"
#include "snse/errors.hpp"
#include "snse/plot.hpp"

using namespace snse;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(static_cast<bool>(in));
    std::string s, line;
    while (std::getline(in, line)) s += line + "\n";
    return s;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

int config_error_line(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("config parsing: comments, case, values") {
    const Config cfg = parse_config_text(
        "# run setup\n"
        "Time.H = 5e-3   # inline comment\n"
        "\n"
        "model.n = 12\n"
        "time.scheme = explicit_euler\n"
        "output.plots = off\n");
    CHECK(cfg.has("time.h"));
    CHECK_FALSE(cfg.has("time.t"));
    CHECK(cfg.get_double("time.h", 0.0) == 5e-3);
    CHECK(cfg.get_int("model.n", 0) == 12);
    CHECK(cfg.get_str("time.scheme", "") == "explicit_euler");
    CHECK(cfg.get_bool("output.plots", true) == false);
    CHECK(cfg.get_double("model.nu", 1.5) == 1.5);  // fallback untouched
}

TEST_CASE("config parsing rejects malformed input with line numbers") {
    CHECK(config_error_line("time.h = 1e-3\njust words\n") == 2);
    CHECK(config_error_line(" = 5\n") == 1);
    CHECK(config_error_line("time.h =\n") == 1);
    CHECK(config_error_line("tim.h = 1e-3\n") == 1);  // typo = unknown key
    CHECK(config_error_line("time.h = 1\ntime.h = 2\n") == 2);
    CHECK_THROWS_AS(parse_config_text("nope = 1\n"), ConfigError);
}

TEST_CASE("typed getters enforce their formats") {
    const Config cfg = parse_config_text(
        "time.h = 0.25\n"
        "time.record_stride = 2.5\n"
        "output.plots = maybe\n"
        "model.n = eight\n");
    CHECK_THROWS_AS(cfg.get_int("time.record_stride", 1), ConfigError);
    CHECK_THROWS_AS(cfg.get_bool("output.plots", false), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("model.n", 0.0), ConfigError);
    CHECK(cfg.get_int("model.m", 7) == 7);  // absent keys fall back before parsing
    for (const char* yes : {"true", "1", "yes", "on"}) {
        const Config c = parse_config_text(std::string("output.plots = ") + yes + "\n");
        CHECK(c.get_bool("output.plots", false));
    }
}

TEST_CASE("canonical form and hash are order-independent, value-sensitive") {
    const Config a = parse_config_text("time.h = 0.5\nmodel.n = 8\n");
    const Config b = parse_config_text("model.n = 8\ntime.h = 0.5\n");
    CHECK(a.canonical() == "model.n=8\ntime.h=0.5\n");
    CHECK(a.hash() == b.hash());
    const Config c = parse_config_text("model.n = 9\ntime.h = 0.5\n");
    CHECK(a.hash() != c.hash());
}

TEST_CASE("environment overrides hit the whitelist") {
    Config cfg = parse_config_text("time.h = 1e-3\n");
    ::setenv("SNSE_TIME_H", "0.5", 1);
    ::setenv("SNSE_MODEL_TENSOR_SEED", "9", 1);
    apply_env_overrides(cfg);
    CHECK(cfg.values.at("time.h") == "0.5");
    CHECK(cfg.values.at("model.tensor_seed") == "9");
    ::unsetenv("SNSE_TIME_H");
    ::unsetenv("SNSE_MODEL_TENSOR_SEED");

    ::setenv("SNSE_TYPO_KEY", "1", 1);
    CHECK_THROWS_AS(apply_env_overrides(cfg), ConfigError);
    ::unsetenv("SNSE_TYPO_KEY");
    ::setenv("SNSE_NOSECTION", "1", 1);
    CHECK_THROWS_AS(apply_env_overrides(cfg), ConfigError);
    ::unsetenv("SNSE_NOSECTION");
}

TEST_CASE("model_from_config builds the abstract family") {
    const Config cfg = parse_config_text(
        "model.basis = sphere\n"
        "model.n = 8\n"
        "model.m = 4\n"
        "model.f_amplitude = 0.5\n"
        "model.eta_trials = 2000\n"
        "noise.beta = 1.5\n"
        "noise.sigma = 1.0\n");
    const SpectralModel mod = model_from_config(cfg, 42);
    CHECK(mod.N() == 8);
    CHECK(mod.m() == 4);
    CHECK(mod.lambda1() == 2.0);
    CHECK(mod.f[0] == 0.5);
    CHECK(mod.f[1] == 0.0);
    CHECK(mod.eta_hat >= mod.eta_lower);
    CHECK(mod.eta_hat > 0.0);
    CHECK(mod.alpha > 0.0);  // auto-calibrated against lambda_1/4
    CHECK(std::isfinite(mod.alpha));

    const Config smooth = parse_config_text(
        "model.tensor = zero\nmodel.f_amplitude = 2.0\nmodel.f_profile = smooth\n"
        "model.eta_trials = 2000\n");
    const SpectralModel mz = model_from_config(smooth, 42);
    CHECK(mz.eta_hat == 0.0);
    CHECK(mz.alpha == 0.0);  // nothing to damp
    CHECK(mz.f[0] == doctest::Approx(2.0 / mz.basis.lambda[0]));
    CHECK(mz.f.back() == doctest::Approx(2.0 / mz.basis.lambda.back()));
}

TEST_CASE("model_from_config builds the nse2d family and rejects mismatches") {
    const Config cfg = parse_config_text(
        "model.basis = nse2d\n"
        "model.grid = 12\n"
        "model.m = 4\n"
        "model.eta_trials = 2000\n"
        "ou.alpha = 0.75\n");
    const SpectralModel mod = model_from_config(cfg, 7);
    CHECK(mod.N() == 80);
    CHECK(mod.lambda1() == 1.0);
    CHECK(mod.tensor.backend == "nse2d");
    CHECK(mod.alpha == 0.75);

    CHECK_THROWS_AS(
        model_from_config(parse_config_text("model.tensor = nse2d\n"), 1), ConfigError);
    CHECK_THROWS_AS(
        model_from_config(parse_config_text("model.tensor = dense\n"), 1), ConfigError);
    CHECK_THROWS_AS(
        model_from_config(
            parse_config_text("model.f_amplitude = 1\nmodel.f_profile = spiky\n"), 1),
        ConfigError);
    CHECK_THROWS_AS(
        model_from_config(parse_config_text("ou.alpha = plenty\n"), 1), ConfigError);
}

TEST_CASE("integrator and measure settings resolve defaults") {
    const Config empty = parse_config_text("");
    const IntegratorConfig run = integrator_from_config(empty);
    CHECK(run.h == 1e-3);
    CHECK(run.T == 10.0);
    CHECK(run.scheme == Scheme::semi_implicit);
    CHECK(run.record_stride == 1);

    const MeasureSettings ms = measure_from_config(empty, 50.0);
    CHECK(ms.burn_in == doctest::Approx(5.0));
    CHECK(ms.k_coeffs == 8);
    CHECK(ms.state_cap == 1024);
    CHECK(ms.shift == 1.0);

    CHECK_THROWS_AS(integrator_from_config(parse_config_text("time.scheme = rk4\n")),
                    ParamError);
    CHECK_THROWS_AS(measure_from_config(parse_config_text("measure.burn_in = 60\n"), 50.0),
                    ConfigError);
    CHECK_THROWS_AS(measure_from_config(parse_config_text("measure.state_cap = 0\n"), 50.0),
                    ConfigError);
}

TEST_CASE("trajectory csv round-trips through the reader") {
    SpectralModel mod;
    mod.basis = SpectralBasis::explicit_list({1.0, 2.0}, 1);
    mod.tensor = BilinearTensor::zero(2);
    mod.coriolis = CoriolisOperator::zero(2);
    mod.f = {0.0, 0.0};
    mod.noise = StableParams::uniform(1.5, 1, 0.5);
    IntegratorConfig cfg;
    cfg.h = 0.1;
    cfg.T = 0.3;
    const TrajectoryRecord rec = simulate({0.4, -0.2}, cfg, mod, 77);

    TempFile tmp("tmp_traj_roundtrip.csv");
    write_trajectory_csv(tmp.path, rec, 0xABCDEFull);
    const std::string text = slurp(tmp.path);
    CHECK(text.rfind("# config_hash=0000000000abcdef", 0) == 0);
    CHECK(text.find("# seed=77") != std::string::npos);

    const CsvTable table = read_csv(tmp.path);
    CHECK(table.column("t") == 0);
    CHECK(table.column("norm_h_v") == 4);
    CHECK(table.column("nope") == -1);
    REQUIRE(table.rows.size() == rec.size());
    CHECK(table.rows[0][0] == 0.0);
    // %.17g round-trips doubles exactly
    CHECK(table.rows[2][4] == std::sqrt(rec.ledger[2].v_sq));
    CHECK(std::isnan(table.rows.back()[8]));  // open-ended last difference

    CHECK_THROWS_AS(read_csv("does_not_exist.csv"), DiagnosticError);
    CHECK_THROWS_AS(write_trajectory_csv("no_such_dir/x.csv", rec, 0), DiagnosticError);
}

TEST_CASE("verify report writers") {
    std::vector<CheckResult> results(2);
    results[0].name = "alpha_check";
    results[0].passed = true;
    results[0].detail = "all good";
    results[0].stats = {{"worst", 0.25}};
    results[1].name = "beta,check";  // comma forces the quoting path
    results[1].passed = false;
    results[1].detail = "broke";

    TempFile csv("tmp_verify.csv");
    TempFile txt("tmp_verify.txt");
    write_verify_csv(csv.path, results, 1, 2);
    write_verify_text(txt.path, results, 1, 2);

    const std::string csv_text = slurp(csv.path);
    CHECK(csv_text.find("alpha_check,1,worst,0.25") != std::string::npos);
    CHECK(csv_text.find("\"beta,check\",0,passed,0") != std::string::npos);

    const std::string txt_text = slurp(txt.path);
    CHECK(txt_text.find("PASS  alpha_check: all good") != std::string::npos);
    CHECK(txt_text.find("FAIL  beta,check: broke") != std::string::npos);
    CHECK(txt_text.find("1/2 checks passed") != std::string::npos);
}

TEST_CASE("auxiliary csv writers emit their schemas") {
    TempFile t1("tmp_tight.csv");
    TightnessReport rep;
    rep.radii = {1.0, 2.0};
    rep.tail_mass = {0.5, 0.25};
    rep.markov_bound = {0.9, 0.45};
    write_tightness_csv(t1.path, rep, 3, 4);
    const CsvTable tight = read_csv(t1.path);
    CHECK(tight.column("markov_bound") == 2);
    REQUIRE(tight.rows.size() == 2);
    CHECK(tight.rows[1][1] == 0.25);

    TempFile t2("tmp_stab.csv");
    write_stabilization_csv(t2.path, {{250.0, 0.125, 0.5}}, 3, 4);
    const CsvTable stab = read_csv(t2.path);
    CHECK(stab.column("distance_to_2T") == 1);
    CHECK(stab.rows[0][2] == 0.5);

    TempFile t3("tmp_moments.csv");
    OUMomentReport mrep;
    mrep.p = 1.2;
    mrep.rows = {{1, 2.0, 2.1, 0.05}};
    write_ou_moments_csv(t3.path, mrep, 3, 4);
    const CsvTable mom = read_csv(t3.path);
    CHECK(mom.column("formula_moment") == 3);
    CHECK(mom.rows[0][2] == 2.0);
}

TEST_CASE("svg plotting") {
    TempFile svg("tmp_plot.svg");
    Series s;
    s.label = "tail mass";
    s.x = {1.0, 2.0, 4.0};
    s.y = {0.5, 0.25, 0.125};
    write_line_svg(svg.path, "tails", "R", "mass", {s}, true, true);
    const std::string text = slurp(svg.path);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("tail mass") != std::string::npos);

    Series bad;
    bad.label = "nothing";
    bad.x = {1.0};
    bad.y = {-1.0};  // not drawable on a log axis
    CHECK_THROWS_AS(write_line_svg(svg.path, "t", "x", "y", {bad}, false, true),
                    DiagnosticError);
}
