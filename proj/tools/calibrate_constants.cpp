// Fits the two frozen discretization constants (kCTau, kAdeltaK and its
// allowance kAdeltaTauCoeff) on calibration ensembles, then reports the
// violation masses the chosen values produce at h and h/2. The printed
// values are frozen by hand into include/snse/constants.hpp; the verify
// suite re-tests them on fresh seeds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "snse/config.hpp"
#include "snse/constants.hpp"
#include "snse/integrator.hpp"
#include "snse/ou.hpp"
#include "snse/parallel.hpp"
#include "snse/stats.hpp"

using namespace snse;

namespace {

constexpr std::uint64_t kCalSeed = 777;  // distinct from every test seed

Field random_u0(const SpectralBasis& basis, std::uint64_t seed, std::uint32_t id) {
    Rng rng(make_stream(seed, StreamPurpose::field_gen, 42, id));
    Field u(static_cast<std::size_t>(basis.N));
    for (int l = 0; l < basis.N; ++l)
        u[static_cast<std::size_t>(l)] =
            rng.normal() / std::pow(basis.lambda[static_cast<std::size_t>(l)], 0.75);
    return u;
}

struct FamilyRatios {
    std::vector<double> ratios;     // dineq residual / (h * scale0), all rows
    std::vector<double> overshoot_ratio;  // adelta overshoot / h, per run and delta
    double fitted_K = 0.0;
};

FamilyRatios sweep(const SpectralModel& model, int n_traj, double T, double h) {
    IntegratorConfig cfg;
    cfg.h = h;
    cfg.T = T;
    cfg.record_stride = 1;
    cfg.record_fields = false;

    FamilyRatios fam;
    std::vector<TrajectoryRecord> recs;
    for (int i = 0; i < n_traj; ++i) {
        const Field u0 = random_u0(model.basis, kCalSeed, static_cast<std::uint32_t>(i));
        TrajectoryRecord rec =
            simulate(u0, cfg, model, kCalSeed, static_cast<std::uint32_t>(i));
        if (rec.blew_up) {
            std::printf("  blow-up in calibration run %d at t=%g (skipped)\n", i,
                        rec.blow_up_time);
            continue;
        }
        for (const auto& row : rec.ledger)
            if (std::isfinite(row.dineq_residual))
                fam.ratios.push_back(row.dineq_residual / (h * row.scale0()));
        recs.push_back(std::move(rec));
    }

    // Envelope constant over both deltas of interest; the records above were
    // produced at model.delta, rerun the other delta on the same u0 set.
    std::vector<TrajectoryRecord> env_recs = recs;
    SpectralModel other = model;
    other.delta = model.delta == 0.25 ? 0.5 : 0.25;
    for (int i = 0; i < n_traj && i < 20; ++i) {
        const Field u0 = random_u0(model.basis, kCalSeed, static_cast<std::uint32_t>(i));
        TrajectoryRecord rec = simulate(u0, cfg, other, kCalSeed,
                                        static_cast<std::uint32_t>(1000 + i));
        if (!rec.blew_up) env_recs.push_back(std::move(rec));
    }
    fam.fitted_K = fit_adelta_K(env_recs);
    const double K_frozen = fam.fitted_K * constants::kConstantFitHeadroom;
    for (const auto& rec : env_recs)
        fam.overshoot_ratio.push_back(adelta_worst_overshoot(rec, K_frozen) / h);
    return fam;
}

double mass_at(const std::vector<double>& ratios, double c) {
    long n = 0;
    for (double r : ratios)
        if (r > c) ++n;
    return static_cast<double>(n) / std::max<std::size_t>(1, ratios.size());
}

SpectralModel build(const std::string& text) {
    return model_from_config(parse_config_text(text), kCalSeed);
}

}  // namespace

int main() {
    const std::string abstract_text =
        "model.basis = sphere\n"
        "model.n = 8\n"
        "model.m = 4\n"
        "model.tensor = random\n"
        "model.tensor_fill = 24\n"
        "model.f_amplitude = 0.5\n"
        "noise.beta = 1.5\n"
        "noise.sigma = 1.0\n"
        "ou.alpha = auto\n";
    const std::string weak_text =
        "model.basis = sphere\n"
        "model.n = 8\n"
        "model.m = 4\n"
        "model.tensor = random\n"
        "model.tensor_fill = 24\n"
        "model.f_amplitude = 0\n"
        "noise.beta = 1.5\n"
        "noise.sigma = 0.1\n"
        "ou.alpha = 1\n";
    const std::string nse_text =
        "model.basis = nse2d\n"
        "model.grid = 12\n"
        "model.m = 4\n"
        "model.f_amplitude = 0.5\n"
        "noise.beta = 1.5\n"
        "noise.sigma = 0.5\n"
        "ou.alpha = auto\n";

    std::printf("== abstract family (N=8, m=4) ==\n");
    const SpectralModel abs_model = build(abstract_text);
    std::printf("  alpha=%.6g eta_hat=%.6g lambda1=%.6g\n", abs_model.alpha,
                abs_model.eta_hat, abs_model.lambda1());
    const FamilyRatios abs_h = sweep(abs_model, 60, 6.0, 1e-3);
    const FamilyRatios abs_f = sweep(abs_model, 60, 6.0, 5e-4);

    std::printf("== nse2d family (grid=12) ==\n");
    const SpectralModel nse_model = build(nse_text);
    std::printf("  N=%d alpha=%.6g eta_hat=%.6g lambda1=%.6g\n", nse_model.N(),
                nse_model.alpha, nse_model.eta_hat, nse_model.lambda1());
    const FamilyRatios nse_h = sweep(nse_model, 12, 3.0, 1e-3);
    const FamilyRatios nse_f = sweep(nse_model, 12, 3.0, 5e-4);

    // kCTau: the near-tightness mass P(residual > -c*h*scale0) must sit on
    // the h-proportional branch of the slack distribution, i.e. it should
    // roughly halve under h -> h/2. Forced/calibrated families never come
    // near tightness, so the fit runs on the weak-noise unforced family; the
    // suggestion is the candidate whose refinement factor is closest to 2.
    std::printf("\n== weak-noise family (f=0, sigma=0.1, alpha=1) ==\n");
    const SpectralModel weak_model = build(weak_text);
    const FamilyRatios weak_h = sweep(weak_model, 60, 10.0, 1e-3);
    const FamilyRatios weak_f = sweep(weak_model, 60, 10.0, 5e-4);
    double best_c = 0.0, best_gap = 1e300;
    for (double c : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0}) {
        const double mh = mass_at(weak_h.ratios, -c);
        const double mf = mass_at(weak_f.ratios, -c);
        const double factor = mh / std::max(1e-12, mf);
        std::printf("  c=%-5g mass(h)=%-10.4g mass(h/2)=%-10.4g factor=%.4g\n",
                    c, mh, mf, factor);
        if (mf > 0 && std::abs(factor - 2.0) < best_gap) {
            best_gap = std::abs(factor - 2.0);
            best_c = c;
        }
    }
    std::printf("suggest kCTau = %.4g\n", best_c);
    std::printf("forced-family sanity: worst ratio %.4g (abstract), %.4g (nse2d) "
                "-- both must stay below +kCTau\n",
                *std::max_element(abs_h.ratios.begin(), abs_h.ratios.end()),
                *std::max_element(nse_h.ratios.begin(), nse_h.ratios.end()));

    const double K = std::max({abs_h.fitted_K, abs_f.fitted_K, nse_h.fitted_K,
                               nse_f.fitted_K});
    std::printf("\nfitted envelope K per family/resolution: %.4g %.4g %.4g %.4g\n",
                abs_h.fitted_K, abs_f.fitted_K, nse_h.fitted_K, nse_f.fitted_K);
    std::printf("suggest kAdeltaK = %.4g (max * headroom %.2f)\n",
                K * constants::kConstantFitHeadroom, constants::kConstantFitHeadroom);

    double worst_over_h = 0.0;
    for (const auto* fam : {&abs_h, &abs_f, &nse_h, &nse_f})
        for (double r : fam->overshoot_ratio) worst_over_h = std::max(worst_over_h, r);
    std::printf("worst overshoot/h with frozen K: %.4g\n", worst_over_h);
    std::printf("suggest kAdeltaTauCoeff = %.4g\n",
                std::max(1.0, 2.0 * std::max(0.0, worst_over_h)));

    // Monte-Carlo adequacy of the stationary moment comparison at the
    // default budget: spread of 16 independent repetitions.
    std::printf("\nmoment-check repetition spread (n=100000, p=1.2):\n");
    std::vector<double> worst;
    for (int rep = 0; rep < 16; ++rep) {
        const OUMomentReport r =
            moment_check(abs_model.noise, abs_model.basis, abs_model.alpha, 1.2, 100000,
                         kCalSeed + 1000 + static_cast<std::uint64_t>(rep));
        worst.push_back(r.worst_rel_error);
    }
    std::sort(worst.begin(), worst.end());
    std::printf("  worst_rel_error: median=%.4g max=%.4g (gate %.4g)\n",
                median(worst), worst.back(), constants::kMomentRatioRelTol);
    return 0;
}
