#include "snse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "snse/constants.hpp"
#include "snse/errors.hpp"
#include "snse/integrator.hpp"
#include "snse/measure.hpp"
#include "snse/ou.hpp"
#include "snse/parallel.hpp"
#include "snse/stats.hpp"

namespace snse {

namespace {

using namespace constants;

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, static_cast<double>(args)...);
    return std::string(buf);
}

// Random field with coefficients ~ N(0,1) / lambda_l^decay; decay 0 probes
// identities on rough fields, decay 0.75 makes initial data with finite
// V-norm at any truncation level.
Field random_field(const SpectralBasis& basis, Rng& rng, double decay) {
    Field u(static_cast<std::size_t>(basis.N));
    for (int l = 0; l < basis.N; ++l)
        u[static_cast<std::size_t>(l)] =
            rng.normal() / std::pow(basis.lambda[static_cast<std::size_t>(l)], decay);
    return u;
}

}  // namespace

CheckResult check_poincare(const SpectralModel& model, const VerifySettings& s,
                           std::uint64_t seed) {
    CheckResult res;
    res.name = "poincare";
    Rng rng(make_stream(seed, StreamPurpose::check, 1, 0));
    const auto& basis = model.basis;
    const double l1 = basis.lambda1();
    const double deltas[3] = {model.delta, (2.0 * model.delta + 1.0) / 4.0, 0.5};

    double worst = 0.0;  // max lhs/rhs over every inequality instance
    for (int t = 0; t < s.trials; ++t) {
        const Field u = random_field(basis, rng, 0.0);
        const double nsq = norm_sq(u);
        const double vsq = norm_v_sq(basis, u);
        const double asq = norm_sq(apply_A(basis, u));
        worst = std::max(worst, l1 * nsq / vsq);
        for (double d : deltas) {
            const double fsq = norm_frac_sq(basis, u, d);
            worst = std::max(worst, std::pow(l1, 2.0 * d) * nsq / fsq);
            // interpolation: A^d between identity and A^{1/2} (d <= 1/2) or
            // between A^{1/2} and A (d > 1/2)
            const double rhs = d <= 0.5
                                   ? std::pow(nsq, 1.0 - 2.0 * d) * std::pow(vsq, 2.0 * d)
                                   : std::pow(vsq, 2.0 - 2.0 * d) *
                                         std::pow(asq, 2.0 * d - 1.0);
            worst = std::max(worst, fsq / rhs);
        }
    }
    res.passed = worst <= 1.0 + kExactRelTol;
    res.stat("trials", s.trials);
    res.stat("worst_ratio_minus_1", worst - 1.0);
    res.detail = fmt("poincare + interpolation chains on %.0f random fields; "
                     "worst ratio-1 = %.2e",
                     static_cast<double>(s.trials), worst - 1.0);
    return res;
}

CheckResult check_antisymmetry(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed) {
    CheckResult res;
    res.name = "antisymmetry";
    Rng rng(make_stream(seed, StreamPurpose::check, 2, 0));
    const auto& tensor = model.tensor;

    double worst = 0.0;
    double worst_lin = 0.0;
    for (int t = 0; t < s.trials; ++t) {
        const Field u = random_field(model.basis, rng, 0.0);
        const Field v = random_field(model.basis, rng, 0.0);
        const double pairing = dot(tensor.apply(u, v), v);
        // floating-point scale of the cancellation being claimed
        double mag = 0.0;
        for (const auto& e : tensor.entries)
            mag += 2.0 * std::abs(e.value * u[static_cast<std::size_t>(e.j)] *
                                  v[static_cast<std::size_t>(e.k)] *
                                  v[static_cast<std::size_t>(e.l)]);
        worst = std::max(worst, std::abs(pairing) / std::max(1.0, mag));

        if (t % 16 == 0) {  // bilinearity spot check
            const Field w = random_field(model.basis, rng, 0.0);
            Field lhs = tensor.apply(add(u, w), v);
            const Field r1 = tensor.apply(u, v);
            const Field r2 = tensor.apply(w, v);
            axpy(-1.0, r1, lhs);
            axpy(-1.0, r2, lhs);
            worst_lin = std::max(
                worst_lin, norm(lhs) / std::max(1.0, norm(r1) + norm(r2)));
        }
    }
    res.passed = worst <= kExactRelTol && worst_lin <= kExactRelTol;
    res.stat("worst_pairing_rel", worst);
    res.stat("worst_linearity_rel", worst_lin);
    res.detail = fmt("<B(u,v),v> = 0 within %.0e; worst relative pairing %.2e, "
                     "linearity defect %.2e",
                     kExactRelTol, worst, worst_lin);
    return res;
}

CheckResult check_bsum(const SpectralModel& model, const VerifySettings& s,
                       std::uint64_t seed) {
    CheckResult res;
    res.name = "bsum";
    Rng rng(make_stream(seed, StreamPurpose::check, 3, 0));
    const EtaEstimate est =
        estimate_eta(model.basis, model.tensor, std::max(1000, s.trials), rng);

    // Fresh sampled ratios must sit below both the freshly certified bound
    // and the bound stored in the model (the one gamma actually uses).
    double fresh = 0.0;
    Field el(static_cast<std::size_t>(model.N()), 0.0);
    for (int t = 0; t < s.trials; ++t) {
        Field u = random_field(model.basis, rng, 0.0);
        const double nsq = norm_sq(u);
        if (!(nsq > 0.0)) continue;
        for (int l = 0; l < model.m(); ++l) {
            el[static_cast<std::size_t>(l)] = 1.0;
            fresh = std::max(fresh, std::abs(dot(model.tensor.apply(u, el), u)) / nsq);
            el[static_cast<std::size_t>(l)] = 0.0;
        }
    }

    const bool dominates = est.certified >= est.sampled_lower - kExactRelTol;
    const bool fresh_below_cert = fresh <= est.certified * (1.0 + kExactRelTol) + 1e-300;
    const bool fresh_below_model = fresh <= model.eta_hat * (1.0 + kExactRelTol) + 1e-300;
    res.passed = dominates && fresh_below_cert && fresh_below_model;
    res.stat("certified", est.certified);
    res.stat("sampled_lower", est.sampled_lower);
    res.stat("fresh_worst", fresh);
    res.stat("model_eta_hat", model.eta_hat);
    res.detail = fmt("certified eta %.4g dominates sampled %.4g and fresh worst %.4g "
                     "(model eta_hat %.4g)",
                     est.certified, est.sampled_lower, fresh, model.eta_hat);
    return res;
}

CheckResult check_ou_moments(const SpectralModel& model, const VerifySettings& s,
                             std::uint64_t seed) {
    CheckResult res;
    res.name = "ou_moments";
    const double beta = model.noise.beta;
    if (beta <= 1.0 + 1e-9) {
        res.passed = false;
        res.detail = "beta <= 1 leaves no admissible moment order in (1, beta)";
        return res;
    }
    const double p = std::min(s.moment_p, 0.5 * (1.0 + beta));
    const OUMomentReport rep =
        moment_check(model.noise, model.basis, model.alpha, p, s.n_samples, seed);
    res.passed = rep.worst_rel_error <= kMomentRatioRelTol;
    res.stat("p", rep.p);
    res.stat("cpb", rep.cpb);
    res.stat("modes", static_cast<double>(rep.rows.size()));
    res.stat("worst_rel_error", rep.worst_rel_error);
    res.detail = fmt("stationary E|z_l|^p vs closed form over %.0f modes at p=%.3g: "
                     "worst relative error %.3g (tol %.3g)",
                     static_cast<double>(rep.rows.size()), rep.p, rep.worst_rel_error,
                     kMomentRatioRelTol);
    return res;
}

namespace {

struct ChainCounts {
    long rows = 0;
    long dineq_viol = 0;
    long pairs = 0;
    long pair_viol = 0;
    double worst_ratio = -std::numeric_limits<double>::infinity();
    int blowups = 0;

    void merge(const ChainCounts& o) {
        rows += o.rows;
        dineq_viol += o.dineq_viol;
        pairs += o.pairs;
        pair_viol += o.pair_viol;
        worst_ratio = std::max(worst_ratio, o.worst_ratio);
        blowups += o.blowups;
    }
};

// Pooled violation counts for one resolution. Trajectory ids are offset so
// the h and h/2 sweeps see independent noise.
ChainCounts run_chain(const SpectralModel& model, const VerifySettings& s,
                      std::uint64_t seed, double h, std::uint32_t traj_offset) {
    IntegratorConfig cfg;
    cfg.h = h;
    cfg.T = s.energy_T;
    cfg.record_stride = 1;
    cfg.record_fields = false;

    std::vector<ChainCounts> per(static_cast<std::size_t>(s.energy_traj));
    parallel_for(s.energy_traj, s.threads, [&](int i) {
        ChainCounts& c = per[static_cast<std::size_t>(i)];
        Rng u0_rng(make_stream(seed, StreamPurpose::field_gen, 5,
                               traj_offset + static_cast<std::uint32_t>(i)));
        const Field u0 = random_field(model.basis, u0_rng, 0.75);
        const TrajectoryRecord rec =
            simulate(u0, cfg, model, seed, traj_offset + static_cast<std::uint32_t>(i));
        if (rec.blew_up) {
            c.blowups = 1;
            return;
        }

        const double gron_tol = kGronwallTol * (h / 1e-3);
        for (const auto& row : rec.ledger) {
            if (!std::isfinite(row.dineq_residual)) continue;  // final open row
            ++c.rows;
            const double ratio = row.dineq_residual / (h * row.scale0());
            c.worst_ratio = std::max(c.worst_ratio, ratio);
            // A row fails the tau(h)-strengthened inequality when its slack
            // is below tau(h) = kCTau * h * scale0. This mass sits on the
            // h-proportional branch of the slack distribution, so it is the
            // quantity whose halving the refinement gate can measure; rows
            // with ratio > 0 (the inequality itself broken) are a subset.
            if (ratio > -kCTau) ++c.dineq_viol;
        }

        // Coarse (tau, t) grid for the integrated forms.
        const std::size_t n = rec.ledger.size();
        std::vector<std::size_t> grid;
        for (int g = 0; g < s.energy_pairs; ++g) {
            const std::size_t idx =
                static_cast<std::size_t>(g) * (n - 1) / static_cast<std::size_t>(
                    std::max(1, s.energy_pairs - 1));
            if (grid.empty() || idx > grid.back()) grid.push_back(idx);
        }
        for (std::size_t a = 0; a < grid.size(); ++a) {
            for (std::size_t b = a + 1; b < grid.size(); ++b) {
                const GronwallResult gr = gronwall_bound(rec, grid[a], grid[b]);
                ++c.pairs;
                if (gr.actual > gr.bound * (1.0 + gron_tol)) ++c.pair_viol;

                const VIntegralResult vi = v_norm_time_integral(rec, grid[a], grid[b]);
                ++c.pairs;
                if (vi.residual > gron_tol * std::max(1.0, std::abs(vi.rhs)))
                    ++c.pair_viol;
            }
        }
    });

    ChainCounts total;
    for (const auto& c : per) total.merge(c);
    return total;
}

CheckResult energy_chain_impl(const std::string& name, const SpectralModel& model,
                              const VerifySettings& s, std::uint64_t seed) {
    CheckResult res;
    res.name = name;
    const ChainCounts ch = run_chain(model, s, seed, s.energy_h, 0);
    const ChainCounts cf = run_chain(model, s, seed, 0.5 * s.energy_h, 1u << 20);

    const double mass_h = static_cast<double>(ch.dineq_viol + ch.pair_viol) /
                          std::max(1.0, static_cast<double>(ch.rows + ch.pairs));
    const double mass_f = static_cast<double>(cf.dineq_viol + cf.pair_viol) /
                          std::max(1.0, static_cast<double>(cf.rows + cf.pairs));
    // Far from tightness (strong forcing or large alpha) no row comes within
    // tau(h) of the bound at either resolution; the inequality is then
    // verified outright and the refinement factor has nothing to measure.
    const bool both_clean = ch.dineq_viol + ch.pair_viol == 0 &&
                            cf.dineq_viol + cf.pair_viol == 0;
    const double factor = mass_f > 0.0 ? mass_h / mass_f
                                       : std::numeric_limits<double>::infinity();
    const bool factor_ok = both_clean || (mass_f > 0.0 && factor >= kRefineLo &&
                                          factor <= kRefineHi);
    const bool worst_ok = ch.worst_ratio <= kCTau && cf.worst_ratio <= kCTau;

    res.passed = ch.blowups == 0 && cf.blowups == 0 && worst_ok && factor_ok;
    res.stat("rows_h", static_cast<double>(ch.rows));
    res.stat("viol_h", static_cast<double>(ch.dineq_viol + ch.pair_viol));
    res.stat("mass_h", mass_h);
    res.stat("mass_h_over_2", mass_f);
    res.stat("refinement_factor", factor);
    res.stat("worst_ratio_h", ch.worst_ratio);
    res.stat("worst_ratio_h_over_2", cf.worst_ratio);
    res.stat("blowups", static_cast<double>(ch.blowups + cf.blowups));
    res.detail = fmt("near-tight mass %.3g -> %.3g under h -> h/2 (factor %.3g, "
                     "band [%.2g, %.2g]); worst residual ratio %.3g vs +%.2g",
                     mass_h, mass_f, factor, kRefineLo, kRefineHi, ch.worst_ratio,
                     kCTau);
    return res;
}

}  // namespace

CheckResult check_energy_chain(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed) {
    return energy_chain_impl("energy_chain", model, s, seed);
}

CheckResult check_estz(const SpectralModel& model, const VerifySettings& s,
                       std::uint64_t seed) {
    CheckResult res;
    res.name = "estz";
    const double p = s.estz_p;
    if (!(p > 0.0)) throw ParamError("estz needs a positive moment order");
    const double kappa = 2.0 / p;

    OUProcess ou(model.noise, model.basis, model.alpha, seed, 0x00E57A00u);
    OUState st = ou.stationary_init();
    const long per_block = std::max(1L, std::lround(1.0 / s.estz_h));

    std::vector<double> block_max(static_cast<std::size_t>(s.estz_blocks), 0.0);
    for (int k = 0; k < s.estz_blocks; ++k) {
        double mx = 0.0;
        for (long i = 0; i < per_block; ++i) {
            ou.exact_step(st, s.estz_h);
            for (double zl : st.z) mx = std::max(mx, std::abs(zl));
        }
        block_max[static_cast<std::size_t>(k)] = mx;
    }

    const double s0 = median(block_max);
    std::vector<double> log_n, log_freq;
    double last_level = 0.0;
    for (double n = 2.0; n <= static_cast<double>(s.estz_blocks); n *= 2.0) {
        const double level = s0 * std::pow(n, kappa);
        long exceed = 0;
        for (double b : block_max)
            if (b >= level) ++exceed;
        const double freq = static_cast<double>(exceed) / static_cast<double>(s.estz_blocks);
        if (exceed >= 5 && freq <= 0.5) {
            log_n.push_back(std::log(n));
            log_freq.push_back(std::log(freq));
            last_level = level;
        }
    }

    res.stat("blocks", static_cast<double>(s.estz_blocks));
    res.stat("kappa", kappa);
    res.stat("fit_points", static_cast<double>(log_n.size()));
    res.stat("required_decay", kappa * p - kEstzMargin);
    if (log_n.size() < 2) {
        // Tail too light to populate the exceedance grid: the polynomial
        // envelope holds vacuously (exceedances die faster than any power).
        res.passed = true;
        res.stat("decay", std::numeric_limits<double>::quiet_NaN());
        res.detail = "tail too light to fit exceedance decay; envelope vacuous";
        return res;
    }
    double decay, decay_se;
    if (log_n.size() == 2) {  // two usable levels: slope through both
        decay = -(log_freq[1] - log_freq[0]) / (log_n[1] - log_n[0]);
        decay_se = std::numeric_limits<double>::quiet_NaN();
    } else {
        const LineFit fit = fit_line(log_n, log_freq);
        decay = -fit.slope;
        decay_se = fit.slope_se;
    }
    res.passed = decay >= kappa * p - kEstzMargin;
    res.stat("decay", decay);
    res.stat("decay_se", decay_se);
    res.stat("top_level", last_level);
    res.detail = fmt("block-max exceedance freq ~ n^-%.3g over %.0f points "
                     "(need >= %.3g for thresholds s0 n^%.3g)",
                     decay, static_cast<double>(log_n.size()), kappa * p - kEstzMargin,
                     kappa);
    return res;
}

namespace {

CheckResult gamma_negativity_impl(const std::string& name, const SpectralModel& model,
                                  const VerifySettings& s, std::uint64_t seed,
                                  std::uint32_t trajectory_id) {
    CheckResult res;
    res.name = name;
    const double target = -model.lambda1() / 4.0;
    const long n = std::max(2L, std::lround(s.gamma_T / s.gamma_h));

    OUProcess ou(model.noise, model.basis, model.alpha, seed, trajectory_id);
    OUState st = ou.stationary_init();

    std::vector<double> gam(static_cast<std::size_t>(n + 1));
    gam[0] = model.gamma_of_z(st.z);
    for (long i = 1; i <= n; ++i) {
        ou.exact_step(st, s.gamma_h);
        gam[static_cast<std::size_t>(i)] = model.gamma_of_z(st.z);
    }

    // Gamma(t_i) by trapezoid, and phi_i = Gamma_i - target * t_i. The onset
    // is the first index from which phi never increases again, i.e. from
    // which exp(int gamma) decays at least like exp(target * (t - onset)).
    std::vector<double> phi(gam.size());
    double cum = 0.0;
    phi[0] = 0.0;
    for (std::size_t i = 1; i < gam.size(); ++i) {
        cum += 0.5 * s.gamma_h * (gam[i] + gam[i - 1]);
        phi[i] = cum - target * (static_cast<double>(i) * s.gamma_h);
    }
    std::size_t onset = gam.size() - 1;
    double suffix_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = gam.size(); i-- > 0;) {
        if (phi[i] >= suffix_max) {
            suffix_max = phi[i];
            onset = i;
        }
    }
    const double onset_t = static_cast<double>(onset) * s.gamma_h;

    const BatchMeans bm = batch_means(gam, kBatchMeansBatches);
    const double avg = cum / s.gamma_T;
    const bool avg_ok = avg + kBandSigmas * bm.se <= target;
    const bool onset_ok = onset_t <= 0.75 * s.gamma_T;

    res.passed = avg_ok && onset_ok;
    res.stat("avg_gamma", avg);
    res.stat("se", bm.se);
    res.stat("target", target);
    res.stat("onset_t", onset_t);
    res.stat("horizon", s.gamma_T);
    res.detail = fmt("time-avg gamma %.4g (+%.2g band) vs target %.4g; "
                     "envelope onset at t = %.4g",
                     avg, kBandSigmas * bm.se, target, onset_t);
    return res;
}

}  // namespace

CheckResult check_gamma_negativity(const SpectralModel& model, const VerifySettings& s,
                                   std::uint64_t seed) {
    return gamma_negativity_impl("gamma_negativity", model, s, seed, 0x00A33A00u);
}

CheckResult check_adelta_bound(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed) {
    CheckResult res;
    res.name = "adelta_bound";
    const double deltas[2] = {0.25, 0.5};

    res.passed = true;
    for (int di = 0; di < 2; ++di) {
        SpectralModel md = model;
        md.delta = deltas[di];

        for (int half = 0; half < 2; ++half) {
            const double h = half == 0 ? s.adelta_h : 0.5 * s.adelta_h;
            IntegratorConfig cfg;
            cfg.h = h;
            cfg.T = s.adelta_T;
            cfg.record_stride = 1;
            cfg.record_fields = false;

            std::vector<double> overshoot(static_cast<std::size_t>(s.adelta_runs));
            std::vector<int> blew(static_cast<std::size_t>(s.adelta_runs), 0);
            parallel_for(s.adelta_runs, s.threads, [&](int r) {
                const std::uint32_t id = 0x00200000u +
                                         static_cast<std::uint32_t>(4000 * di + r);
                Rng u0_rng(make_stream(seed, StreamPurpose::field_gen, 8, id));
                const Field u0 = random_field(md.basis, u0_rng, 0.75);
                const TrajectoryRecord rec = simulate(u0, cfg, md, seed, id);
                if (rec.blew_up) {
                    blew[static_cast<std::size_t>(r)] = 1;
                    return;
                }
                overshoot[static_cast<std::size_t>(r)] =
                    adelta_worst_overshoot(rec, kAdeltaK);
            });

            int blowups = 0;
            for (int b : blew) blowups += b;
            const double worst =
                *std::max_element(overshoot.begin(), overshoot.end());
            const double tau = kAdeltaTauCoeff * h;
            const bool ok = blowups == 0 && worst <= tau;
            res.passed = res.passed && ok;

            char key[64];
            std::snprintf(key, sizeof(key), "worst_d%.2f_h%s", deltas[di],
                          half == 0 ? "" : "_half");
            res.stat(key, worst);
            if (blowups > 0) res.stat("blowups", blowups);
            if (di == 0 && half == 0)
                res.detail = fmt("worst envelope overshoot %.3g vs allowance %.3g at "
                                 "h = %.1e (K = %.3g)",
                                 worst, tau, h, kAdeltaK);
        }
    }
    return res;
}

CheckResult check_feller(const SpectralModel& model, const VerifySettings& s,
                         std::uint64_t seed) {
    CheckResult res;
    res.name = "feller";
    IntegratorConfig cfg;
    cfg.h = s.energy_h;
    cfg.T = s.feller_t_eval;
    cfg.record_stride = 1;

    Rng u0_rng(make_stream(seed, StreamPurpose::field_gen, 6, 0));
    const Field u0 = random_field(model.basis, u0_rng, 0.75);

    const double radii[4] = {1e-6, 1e-5, 1e-4, 1e-3};
    double ratios[4] = {0.0, 0.0, 0.0, 0.0};
    double dists[4] = {0.0, 0.0, 0.0, 0.0};
    int blowups = 0;
    for (int i = 0; i < 4; ++i) {
        const FellerReport rep = feller_probe(u0, radii[i], s.feller_pairs,
                                              s.feller_t_eval, cfg, model, seed);
        blowups += rep.blowups;
        ratios[i] = rep.median_ratio;
        dists[i] = rep.median_distance;
        char key[32];
        std::snprintf(key, sizeof(key), "ratio_r%.0e", radii[i]);
        res.stat(key, rep.median_ratio);
    }

    const double rmin = *std::min_element(ratios, ratios + 4);
    const double rmax = *std::max_element(ratios, ratios + 4);
    const bool spread_ok = rmin > 0.0 && rmax / rmin <= kFellerDecadeRatio;
    bool monotone_ok = true;
    for (int i = 0; i + 1 < 4; ++i) monotone_ok = monotone_ok && dists[i] <= dists[i + 1] * 1.1;
    res.passed = blowups == 0 && spread_ok && monotone_ok;
    res.stat("ratio_spread", rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity());
    res.stat("blowups", blowups);
    res.detail = fmt("shared-noise distance/radius stable over radii 1e-6..1e-3: "
                     "spread %.3g (cap %.1f)",
                     rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity(),
                     kFellerDecadeRatio);
    return res;
}

CheckResult negative_gamma_control(const SpectralModel& model, const VerifySettings& s,
                                   std::uint64_t seed) {
    CheckResult res;
    res.name = "negative_gamma_control";
    if (!(model.eta_hat > 0.0)) {
        res.passed = false;
        res.detail = "control needs eta_hat > 0 to have any effect on gamma";
        return res;
    }
    SpectralModel broken = model;
    broken.alpha = 0.0;
    for (double& sg : broken.noise.sigma) sg *= 20.0;

    VerifySettings s2 = s;
    s2.gamma_T = std::min(s.gamma_T, 200.0);
    const CheckResult inner =
        gamma_negativity_impl("negative_gamma_control_inner", broken, s2, seed,
                              0x00A33B00u);
    res.passed = !inner.passed;
    for (const auto& kv : inner.stats) res.stat("inner_" + kv.first, kv.second);
    res.detail = "alpha -> 0, sigma x20 must break gamma negativity: inner check " +
                 std::string(inner.passed ? "passed (control FAILS)" : "failed as required");
    return res;
}

CheckResult negative_energy_control(const SpectralModel& model, const VerifySettings& s,
                                    std::uint64_t seed) {
    CheckResult res;
    res.name = "negative_energy_control";
    if (!(model.eta_hat > 0.0)) {
        res.passed = false;
        res.detail = "control needs eta_hat > 0 to have any effect on the ledger";
        return res;
    }
    // Bookkeeping with the interaction bound erased while the dynamics keep
    // the full bilinearity, and the noise amplified so that bilinearity is
    // load-bearing: gamma loses its compensating positive part and p its
    // cubic term, so residuals turn positive at an h-independent rate and
    // the worst residual blows through +tau(h); the check must fail.
    SpectralModel broken = model;
    broken.eta_hat = 0.0;
    broken.eta_lower = 0.0;
    for (double& sg : broken.noise.sigma) sg *= 20.0;

    VerifySettings s2 = s;
    s2.energy_traj = std::min(s.energy_traj, 20);
    s2.energy_T = std::min(s.energy_T, 4.0);
    const CheckResult inner =
        energy_chain_impl("negative_energy_control_inner", broken, s2, seed + 1);
    res.passed = !inner.passed;
    for (const auto& kv : inner.stats) res.stat("inner_" + kv.first, kv.second);
    res.detail = "eta_hat -> 0 with sigma x20 must break the energy chain: inner check " +
                 std::string(inner.passed ? "passed (control FAILS)" : "failed as required");
    return res;
}

const std::vector<std::pair<std::string, CheckFn>>& check_registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"poincare", check_poincare},
        {"antisymmetry", check_antisymmetry},
        {"bsum", check_bsum},
        {"ou_moments", check_ou_moments},
        {"energy_chain", check_energy_chain},
        {"estz", check_estz},
        {"gamma_negativity", check_gamma_negativity},
        {"adelta_bound", check_adelta_bound},
        {"feller", check_feller},
        {"negative_gamma_control", negative_gamma_control},
        {"negative_energy_control", negative_energy_control},
    };
    return reg;
}

std::vector<CheckResult> run_checks(const SpectralModel& model, const VerifySettings& s,
                                    std::uint64_t seed,
                                    const std::vector<std::string>& names) {
    const auto& reg = check_registry();
    std::vector<std::pair<std::string, CheckFn>> todo;
    if (names.empty()) {
        todo = reg;
    } else {
        for (const auto& want : names) {
            bool found = false;
            for (const auto& entry : reg) {
                if (entry.first == want) {
                    todo.push_back(entry);
                    found = true;
                    break;
                }
            }
            if (!found) {
                std::string known;
                for (const auto& entry : reg) known += " " + entry.first;
                throw ParamError("unknown check '" + want + "'; available:" + known);
            }
        }
    }

    std::vector<CheckResult> out;
    out.reserve(todo.size());
    for (const auto& [name, fn] : todo) {
        try {
            out.push_back(fn(model, s, seed));
        } catch (const std::exception& e) {
            CheckResult bad;
            bad.name = name;
            bad.passed = false;
            bad.detail = std::string("threw: ") + e.what();
            out.push_back(bad);
        }
    }
    return out;
}

}  // namespace snse
