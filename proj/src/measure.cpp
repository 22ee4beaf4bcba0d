#include "snse/measure.hpp"

#include <algorithm>
#include <cmath>

#include "snse/constants.hpp"
#include "snse/errors.hpp"
#include "snse/stats.hpp"

namespace snse {

namespace {

std::vector<std::string> observable_names(int k_coeffs) {
    std::vector<std::string> names{"norm_h", "norm_v", "norm_fracdelta"};
    for (int i = 1; i <= k_coeffs; ++i) names.push_back("c" + std::to_string(i));
    return names;
}

void append_observables(std::vector<double>& out, const Field& u,
                        const SpectralBasis& basis, double delta, int k_coeffs) {
    const FieldNorms n = norms(basis, u, delta);
    out.push_back(n.h);
    out.push_back(n.v);
    out.push_back(n.frac);
    for (int i = 0; i < k_coeffs; ++i)
        out.push_back(i < basis.N ? u[static_cast<std::size_t>(i)] : 0.0);
}

}  // namespace

EmpiricalMeasure build_mu_T(const std::vector<TrajectoryRecord>& records,
                            const SpectralBasis& basis, double burn_in, double T,
                            double delta, int k_coeffs, std::size_t state_cap) {
    if (records.empty()) throw ParamError("build_mu_T needs at least one record");
    if (!(burn_in >= 0.0 && burn_in < T)) throw ParamError("need 0 <= burn_in < T");

    EmpiricalMeasure mu;
    mu.names = observable_names(k_coeffs);
    mu.dim = mu.names.size();
    mu.burn_in = burn_in;
    mu.T = T;
    mu.delta = delta;

    std::vector<const Field*> retained;
    for (const auto& rec : records) {
        if (rec.u.size() != rec.times.size())
            throw ParamError("build_mu_T needs records with stored fields");
        for (std::size_t i = 0; i < rec.times.size(); ++i) {
            const double t = rec.times[i];
            if (t <= burn_in || t > T) continue;
            append_observables(mu.samples, rec.u[i], basis, delta, k_coeffs);
            retained.push_back(&rec.u[i]);
        }
    }
    if (mu.samples.empty())
        throw ParamError("no recorded states fall inside (burn_in, T]");

    const std::size_t n = retained.size();
    const std::size_t stride = n <= state_cap ? 1 : (n + state_cap - 1) / state_cap;
    for (std::size_t i = 0; i < n; i += stride) mu.states.push_back(*retained[i]);
    return mu;
}

TightnessReport tightness_report(const EmpiricalMeasure& mu, double p,
                                 std::size_t n_radii) {
    if (!(p > 0.0)) throw ParamError("tightness_report needs p > 0");
    if (mu.count() == 0) throw ParamError("tightness_report on empty measure");
    const std::size_t frac_col = 2;  // |A^delta u| column

    std::vector<double> fr(mu.count());
    for (std::size_t i = 0; i < mu.count(); ++i) fr[i] = mu.samples[i * mu.dim + frac_col];
    std::sort(fr.begin(), fr.end());

    TightnessReport rep;
    const double lo = fr.front(), hi = fr.back();
    if (!(hi > lo) || !(hi > 0.0)) {
        rep.degenerate = true;
        rep.markov_ok = true;
        return rep;
    }

    double moment = 0.0;
    for (double x : fr) moment += std::pow(x, p);
    moment /= static_cast<double>(fr.size());
    rep.moment_p = moment;

    // Geometric grid from the median to just above the sample maximum.
    const double r_lo = std::max(quantile(fr, 0.5), 1e-12);
    const double r_hi = hi * 1.05;
    const double ratio = std::pow(r_hi / r_lo, 1.0 / static_cast<double>(n_radii - 1));
    rep.markov_ok = true;
    std::vector<double> log_r, log_mass;
    for (std::size_t j = 0; j < n_radii; ++j) {
        const double R = r_lo * std::pow(ratio, static_cast<double>(j));
        const auto it = std::upper_bound(fr.begin(), fr.end(), R);
        const std::size_t exceed = static_cast<std::size_t>(fr.end() - it);
        const double mass = static_cast<double>(exceed) / static_cast<double>(fr.size());
        const double bound = moment / std::pow(R, p);
        rep.radii.push_back(R);
        rep.tail_mass.push_back(mass);
        rep.markov_bound.push_back(bound);
        if (mass > bound * (1.0 + 1e-12)) rep.markov_ok = false;
        if (exceed >= 5 && mass <= 0.5) {
            log_r.push_back(std::log(R));
            log_mass.push_back(std::log(mass));
        }
    }

    if (log_r.size() >= 3) {
        const LineFit fit = fit_line(log_r, log_mass);
        rep.p_hat = -fit.slope;
        rep.p_hat_se = fit.slope_se;
    } else {
        rep.degenerate = true;
    }
    return rep;
}

double stabilization_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    if (a.names != b.names) throw DiagnosticError("observable schema mismatch");
    return energy_distance(a.samples, b.samples, a.dim, constants::kEnergyDistanceCap);
}

FellerReport feller_probe(const Field& u0, double radius, int n_pairs, double t_eval,
                          const IntegratorConfig& cfg, const SpectralModel& model,
                          std::uint64_t seed) {
    if (!(radius >= 0.0)) throw ParamError("feller_probe needs radius >= 0");
    if (n_pairs < 1) throw ParamError("feller_probe needs n_pairs >= 1");

    IntegratorConfig run = cfg;
    run.T = t_eval;
    run.record_fields = true;
    run.record_stride = std::max(run.record_stride, 1);

    FellerReport rep;
    rep.radius = radius;
    rep.t_eval = t_eval;
    rep.n_pairs = n_pairs;

    // trajectory_id fixed across members = shared noise realization
    const TrajectoryRecord base = simulate(u0, run, model, seed, 0);
    if (base.blew_up) {
        rep.blowups = n_pairs;
        return rep;
    }
    const Field& u_end = base.u.back();

    Rng dir_rng(make_stream(seed, StreamPurpose::feller, 0, 0));
    std::vector<double> dists;
    for (int i = 0; i < n_pairs; ++i) {
        Field dir(u0.size());
        double n2 = 0.0;
        do {
            for (auto& x : dir) x = dir_rng.normal();
            n2 = norm_sq(dir);
        } while (!(n2 > 0.0));
        scale(dir, radius / std::sqrt(n2));
        const Field u0p = add(u0, dir);
        const TrajectoryRecord pert = simulate(u0p, run, model, seed, 0);
        if (pert.blew_up) {
            ++rep.blowups;
            continue;
        }
        dists.push_back(norm(sub(pert.u.back(), u_end)));
    }
    if (dists.empty()) return rep;
    rep.median_distance = median(dists);
    rep.max_distance = *std::max_element(dists.begin(), dists.end());
    rep.median_ratio = radius > 0.0 ? rep.median_distance / radius : 0.0;
    return rep;
}

InvarianceResult invariance_residual(const EmpiricalMeasure& mu, double s,
                                     const IntegratorConfig& cfg, const SpectralModel& model,
                                     std::uint64_t seed) {
    if (!(s > 0.0)) throw ParamError("invariance_residual needs shift s > 0");
    if (mu.states.empty()) throw ParamError("measure holds no states to push forward");
    const int k_coeffs = static_cast<int>(mu.dim) - 3;  // schema: 3 norms + k coefficients

    IntegratorConfig run = cfg;
    run.T = s;
    run.record_fields = true;

    EmpiricalMeasure push;
    push.names = mu.names;
    push.dim = mu.dim;
    push.delta = mu.delta;

    InvarianceResult res;
    for (std::size_t j = 0; j < mu.states.size(); ++j) {
        const TrajectoryRecord rec =
            simulate(mu.states[j], run, model, seed + 1, static_cast<std::uint32_t>(j));
        if (rec.blew_up) {
            ++res.blowups;
            continue;
        }
        append_observables(push.samples, rec.u.back(), model.basis, mu.delta, k_coeffs);
        ++res.resimulated;
    }
    if (res.resimulated == 0) throw DiagnosticError("all pushforward runs blew up");
    res.residual = stabilization_distance(mu, push);
    return res;
}

}  // namespace snse
