#include "snse/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>

#include "CLI11.hpp"

#include "snse/config.hpp"
#include "snse/csv.hpp"
#include "snse/measure.hpp"
#include "snse/plot.hpp"
#include "snse/verify.hpp"

namespace snse::cli {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& opts, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path, "config file (key = value)");
    if (config_required) c->required();
    sub->add_option("--seed", opts.seed, "base seed for every derived stream");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--threads", opts.threads, "worker threads for ensembles")
        ->check(CLI::PositiveNumber);
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

void banner(const Config& cfg, const CommonOpts& opts) {
    std::printf("config_hash=%016llx seed=%llu\n",
                static_cast<unsigned long long>(cfg.hash()),
                static_cast<unsigned long long>(opts.seed));
}

Series ledger_series(const TrajectoryRecord& rec, const std::string& label,
                     double (*pick)(const LedgerRow&)) {
    Series s;
    s.label = label;
    for (const auto& row : rec.ledger) {
        s.x.push_back(row.t);
        s.y.push_back(pick(row));
    }
    return s;
}

void plot_energy(const std::string& path, const TrajectoryRecord& rec) {
    write_line_svg(path, "energy trace", "t", "norm",
                   {ledger_series(rec, "|u|", [](const LedgerRow& r) {
                        return std::sqrt(r.u_sq);
                    }),
                    ledger_series(rec, "|u|_V", [](const LedgerRow& r) {
                        return std::sqrt(r.u_v_sq);
                    }),
                    ledger_series(rec, "|z|", [](const LedgerRow& r) {
                        return std::sqrt(r.z_sq);
                    })});
}

void plot_tail(const std::string& path, const TightnessReport& rep) {
    Series mass{"tail mass", rep.radii, rep.tail_mass};
    Series bound{"moment/R^p", rep.radii, rep.markov_bound};
    write_line_svg(path, "tail mass vs polynomial envelope", "R", "mass", {mass, bound},
                   true, true);
}

int cmd_simulate(const CommonOpts& opts) {
    const Config cfg = load_config(opts.config_path);
    banner(cfg, opts);
    const SpectralModel model = model_from_config(cfg, opts.seed);
    IntegratorConfig run = integrator_from_config(cfg);

    const Field u0(static_cast<std::size_t>(model.N()), 0.0);
    const TrajectoryRecord rec = simulate(u0, run, model, opts.seed, 0);
    write_trajectory_csv(out_path(opts, "trajectory.csv"), rec, cfg.hash());
    if (cfg.get_bool("output.plots", true))
        plot_energy(out_path(opts, "trajectory.svg"), rec);

    const auto& last = rec.ledger.back();
    std::printf("T=%g records=%zu |u(T)|=%.6g |u(T)|_V=%.6g alpha=%.6g eta_hat=%.6g\n",
                rec.times.back(), rec.size(), std::sqrt(last.u_sq),
                std::sqrt(last.u_v_sq), model.alpha, model.eta_hat);
    if (rec.blew_up) {
        std::fprintf(stderr, "trajectory blew up at t=%g\n", rec.blow_up_time);
        return 1;
    }
    return 0;
}

int cmd_invariant(const CommonOpts& opts) {
    const Config cfg = load_config(opts.config_path);
    banner(cfg, opts);
    const SpectralModel model = model_from_config(cfg, opts.seed);
    IntegratorConfig run = integrator_from_config(cfg);
    run.record_fields = true;
    const MeasureSettings ms = measure_from_config(cfg, run.T);

    const Field u0(static_cast<std::size_t>(model.N()), 0.0);
    const TrajectoryRecord rec = simulate(u0, run, model, opts.seed, 0);
    write_trajectory_csv(out_path(opts, "trajectory.csv"), rec, cfg.hash());
    if (rec.blew_up) {
        std::fprintf(stderr, "trajectory blew up at t=%g\n", rec.blow_up_time);
        return 1;
    }

    // Nested time-averaged measures along one path: mu_T for T running over
    // T_full/8 .. T_full, each with proportional burn-in, plus the
    // stabilization distances mu_T vs mu_2T and the pushforward residuals.
    IntegratorConfig push = run;
    // only the endpoint of each pushforward run is consumed
    push.record_stride = std::max(1, static_cast<int>(std::llround(ms.shift / run.h)));
    std::vector<StabilizationRow> rows;
    std::vector<TrajectoryRecord> recs{rec};
    EmpiricalMeasure mu_full;
    for (int k = 3; k >= 0; --k) {
        const double Tk = run.T / static_cast<double>(1 << k);
        const double burn = ms.burn_in * Tk / run.T;
        const EmpiricalMeasure mu =
            build_mu_T(recs, model.basis, burn, Tk, model.delta, ms.k_coeffs,
                       ms.state_cap);
        StabilizationRow row;
        row.T = Tk;
        if (k > 0) {
            const double T2 = run.T / static_cast<double>(1 << (k - 1));
            const EmpiricalMeasure mu2 =
                build_mu_T(recs, model.basis, ms.burn_in * T2 / run.T, T2, model.delta,
                           ms.k_coeffs, ms.state_cap);
            row.distance_to_2T = stabilization_distance(mu, mu2);
        } else {
            row.distance_to_2T = std::numeric_limits<double>::quiet_NaN();
            mu_full = mu;
        }
        const InvarianceResult inv = invariance_residual(
            mu, ms.shift, push, model, opts.seed + 100 + static_cast<std::uint64_t>(k));
        row.invariance_residual = inv.residual;
        rows.push_back(row);
        std::printf("T=%-10g dist_to_2T=%-12g invariance=%-12g (resim %d, blowups %d)\n",
                    row.T, row.distance_to_2T, row.invariance_residual, inv.resimulated,
                    inv.blowups);
    }

    write_measure_csv(out_path(opts, "measure.csv"), mu_full, cfg.hash(), opts.seed);
    const TightnessReport tight = tightness_report(mu_full, ms.p);
    write_tightness_csv(out_path(opts, "tightness.csv"), tight, cfg.hash(), opts.seed);
    write_stabilization_csv(out_path(opts, "stabilization.csv"), rows, cfg.hash(),
                            opts.seed);
    if (cfg.get_bool("output.plots", true)) {
        plot_energy(out_path(opts, "trajectory.svg"), rec);
        if (!tight.degenerate) plot_tail(out_path(opts, "tightness.svg"), tight);
    }
    std::printf("measure: %zu samples, markov_ok=%d, p_hat=%.4g (se %.2g)\n",
                mu_full.count(), tight.markov_ok ? 1 : 0, tight.p_hat, tight.p_hat_se);
    return tight.markov_ok ? 0 : 1;
}

int cmd_verify(const CommonOpts& opts, const std::string& checks_csv) {
    const Config cfg = load_config(opts.config_path);
    banner(cfg, opts);
    const SpectralModel model = model_from_config(cfg, opts.seed);

    std::vector<std::string> names;
    std::string token;
    for (char c : checks_csv + ",") {
        if (c == ',') {
            if (!token.empty()) names.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }

    VerifySettings settings;
    settings.threads = opts.threads;
    const std::vector<CheckResult> results = run_checks(model, settings, opts.seed, names);

    write_verify_csv(out_path(opts, "verify_report.csv"), results, cfg.hash(), opts.seed);
    write_verify_text(out_path(opts, "verify_report.txt"), results, cfg.hash(),
                      opts.seed);
    bool all = true;
    for (const auto& res : results) {
        std::printf("%s  %s: %s\n", res.passed ? "PASS" : "FAIL", res.name.c_str(),
                    res.detail.c_str());
        all = all && res.passed;
    }
    return all ? 0 : 1;
}

int cmd_plot(const CommonOpts& opts, const std::string& in_file) {
    const CsvTable table = read_csv(in_file);
    const std::string stem = std::filesystem::path(in_file).stem().string();

    auto column = [&](const std::string& name) {
        const int c = table.column(name);
        std::vector<double> out;
        if (c < 0) return out;
        out.reserve(table.rows.size());
        for (const auto& row : table.rows)
            out.push_back(static_cast<std::size_t>(c) < row.size()
                              ? row[static_cast<std::size_t>(c)]
                              : std::numeric_limits<double>::quiet_NaN());
        return out;
    };

    if (table.column("t") >= 0 && table.column("norm_h_u") >= 0) {
        const auto t = column("t");
        write_line_svg(out_path(opts, stem + ".svg"), "energy trace", "t", "norm",
                       {{"|u|", t, column("norm_h_u")},
                        {"|u|_V", t, column("norm_v_u")},
                        {"|z|", t, column("norm_h_z")}});
    } else if (table.column("R") >= 0 && table.column("tail_mass") >= 0) {
        const auto r = column("R");
        write_line_svg(out_path(opts, stem + ".svg"),
                       "tail mass vs polynomial envelope", "R", "mass",
                       {{"tail mass", r, column("tail_mass")},
                        {"moment/R^p", r, column("markov_bound")}},
                       true, true);
    } else {
        std::fprintf(stderr, "unrecognized csv schema in %s\n", in_file.c_str());
        return 1;
    }
    std::printf("wrote %s\n", out_path(opts, stem + ".svg").c_str());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"spectral Galerkin laboratory for stochastically forced "
                 "dissipative dynamics"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string checks_csv;
    std::string in_file;

    CLI::App* sim = app.add_subcommand("simulate", "one trajectory + energy ledger");
    add_common(sim, opts, true);
    CLI::App* inv = app.add_subcommand(
        "invariant", "time-averaged measure, tightness and stabilization");
    add_common(inv, opts, true);
    CLI::App* ver = app.add_subcommand("verify", "run the inequality check suite");
    add_common(ver, opts, true);
    ver->add_option("--checks", checks_csv, "comma-separated subset (default: all)");
    CLI::App* plt = app.add_subcommand("plot", "render an SVG from a csv output");
    add_common(plt, opts, false);
    plt->add_option("--in", in_file, "trajectory.csv or tightness.csv")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) return cmd_simulate(opts);
        if (inv->parsed()) return cmd_invariant(opts);
        if (ver->parsed()) return cmd_verify(opts, checks_csv);
        if (plt->parsed()) return cmd_plot(opts, in_file);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace snse::cli
