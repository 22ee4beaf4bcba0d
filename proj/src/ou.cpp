#include "snse/ou.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "snse/constants.hpp"
#include "snse/errors.hpp"
#include "snse/stats.hpp"

namespace snse {

double ou_stationary_scale(double sigma, double beta, double theta) {
    if (!(theta > 0.0)) throw ParamError("OU damping lambda_l + alpha must be positive");
    return sigma * std::pow(beta * theta, -1.0 / beta);
}

double ou_jump_scale(double sigma, double beta, double theta, double h) {
    if (!(h > 0.0)) throw ParamError("OU step needs h > 0");
    if (!(theta > 0.0)) throw ParamError("OU damping lambda_l + alpha must be positive");
    return sigma * std::pow(-std::expm1(-beta * theta * h) / (beta * theta), 1.0 / beta);
}

OUProcess::OUProcess(StableParams params, const SpectralBasis& basis, double alpha,
                     std::uint64_t seed, std::uint32_t trajectory_id)
    : params_(std::move(params)), alpha_(alpha) {
    params_.validate();
    basis.validate();
    if (!(alpha >= 0.0)) throw ParamError("alpha must be >= 0");
    if (params_.m() != basis.m) throw ParamError("noise mode count mismatch");
    theta_.resize(static_cast<std::size_t>(basis.m));
    for (int l = 0; l < basis.m; ++l) {
        theta_[static_cast<std::size_t>(l)] = basis.lambda[static_cast<std::size_t>(l)] + alpha;
        init_rng_.emplace_back(
            make_stream(seed, StreamPurpose::ou_init, trajectory_id, static_cast<std::uint32_t>(l)));
        jump_rng_.emplace_back(
            make_stream(seed, StreamPurpose::ou_jump, trajectory_id, static_cast<std::uint32_t>(l)));
    }
}

double OUProcess::stationary_scale(int l) const {
    return ou_stationary_scale(params_.sigma[static_cast<std::size_t>(l)], params_.beta,
                               theta_[static_cast<std::size_t>(l)]);
}

double OUProcess::jump_scale(int l, double h) const {
    return ou_jump_scale(params_.sigma[static_cast<std::size_t>(l)], params_.beta,
                         theta_[static_cast<std::size_t>(l)], h);
}

OUState OUProcess::stationary_init() {
    OUState s;
    s.t = 0.0;
    s.z.resize(theta_.size(), 0.0);
    for (int l = 0; l < m(); ++l) {
        const double scale = stationary_scale(l);
        if (scale == 0.0) continue;
        s.z[static_cast<std::size_t>(l)] =
            scale * sample_standard_stable(params_.beta, init_rng_[static_cast<std::size_t>(l)]);
    }
    return s;
}

void OUProcess::exact_step(OUState& state, double h) {
    if (!(h > 0.0)) throw ParamError("OU step needs h > 0");
    if (state.z.size() != theta_.size()) throw ParamError("OU state dimension mismatch");
    for (int l = 0; l < m(); ++l) {
        const std::size_t i = static_cast<std::size_t>(l);
        double zl = std::exp(-theta_[i] * h) * state.z[i];
        const double scale = jump_scale(l, h);
        if (scale > 0.0)
            zl += scale * sample_standard_stable(params_.beta, jump_rng_[i]);
        state.z[i] = zl;
    }
    state.t += h;
}

double ergodic_average(const std::vector<OUState>& path) {
    if (path.size() < 2) throw DiagnosticError("ergodic_average needs >= 2 samples");
    const double T = path.back().t - path.front().t;
    if (!(T > 0.0)) throw DiagnosticError("ergodic_average needs increasing times");
    auto sum_abs = [](const OUState& s) {
        double a = 0.0;
        for (double zl : s.z) a += std::abs(zl);
        return a;
    };
    double integral = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double dt = path[i].t - path[i - 1].t;
        integral += 0.5 * dt * (sum_abs(path[i]) + sum_abs(path[i - 1]));
    }
    return integral / T;
}

namespace {

// Median of block means: consistent for the mean (which exists for
// exponent p < beta) while immune to the single-jump blowups that wreck the
// plain average of a heavy-tailed sample.
double median_of_means(const std::vector<double>& xs, std::size_t blocks) {
    std::vector<double> bm;
    const std::size_t len = xs.size() / blocks;
    bm.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double s = 0.0;
        for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += xs[i];
        bm.push_back(s / static_cast<double>(len));
    }
    return median(std::move(bm));
}

}  // namespace

double estimate_cpb(double beta, double p, int n, std::uint64_t seed) {
    if (!(p > 0.0 && p < beta)) throw ParamError("C_{p,beta} needs 0 < p < beta");
    if (n < 1000) throw ParamError("estimate_cpb needs n >= 1000");

    static std::mutex cache_mutex;
    static std::map<std::tuple<double, double, int, std::uint64_t>, double> cache;
    const auto key = std::make_tuple(beta, p, n, seed);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    Rng rng(make_stream(seed, StreamPurpose::mc, 0, 0));
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = std::pow(std::abs(sample_standard_stable(beta, rng)), p);
    const double est = median_of_means(xs, constants::kBatchMeansBatches);

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = est;
    return est;
}

OUMomentReport moment_check(const StableParams& params, const SpectralBasis& basis,
                            double alpha, double p, int n_samples, std::uint64_t seed) {
    params.validate();
    if (!(p < params.beta)) throw ParamError("p-th moment diverges for p >= beta");
    if (!(p > 1.0)) throw ParamError("moment_check needs p > 1");
    if (n_samples < 1000) throw ParamError("moment_check needs n_samples >= 1000");

    OUMomentReport report;
    report.p = p;
    report.cpb = estimate_cpb(params.beta, p, n_samples, seed);

    for (int l = 0; l < params.m(); ++l) {
        const double theta = basis.lambda[static_cast<std::size_t>(l)] + alpha;
        const double scale = ou_stationary_scale(params.sigma[static_cast<std::size_t>(l)],
                                                 params.beta, theta);
        Rng rng(make_stream(seed, StreamPurpose::mc, 1, static_cast<std::uint32_t>(l)));
        std::vector<double> xs(static_cast<std::size_t>(n_samples));
        for (auto& x : xs)
            x = std::pow(std::abs(scale * sample_standard_stable(params.beta, rng)), p);
        OUMomentRow row;
        row.mode = l + 1;
        row.empirical = median_of_means(xs, constants::kBatchMeansBatches);
        row.formula = report.cpb * std::pow(params.sigma[static_cast<std::size_t>(l)], p) *
                      std::pow(params.beta * theta, -p / params.beta);
        row.rel_error = row.formula != 0.0
                            ? std::abs(row.empirical - row.formula) / row.formula
                            : std::abs(row.empirical);
        report.worst_rel_error = std::max(report.worst_rel_error, row.rel_error);
        report.rows.push_back(row);
    }
    return report;
}

CalibrationResult calibrate_alpha(const SpectralBasis& basis, double eta_hat,
                                  const StableParams& params, std::uint64_t seed,
                                  double target_override) {
    params.validate();
    basis.validate();
    if (!(params.beta > 1.0))
        throw CalibrationError("calibrate_alpha needs beta > 1 (E|z| diverges otherwise)");
    if (!(eta_hat >= 0.0)) throw CalibrationError("eta_hat must be >= 0");

    CalibrationResult res;
    res.eta_hat = eta_hat;
    res.target = target_override > 0.0 ? target_override : basis.lambda1() / 4.0;

    // One shared standard sample, rescaled per alpha: E|z_1(0)| =
    // stationary_scale(alpha) * E|S|, so the estimate is exactly monotone
    // along the search grid.
    const int n = 65536;
    Rng rng(make_stream(seed, StreamPurpose::calibration, 0, 0));
    std::vector<double> abs_s(static_cast<std::size_t>(n));
    for (auto& x : abs_s) x = std::abs(sample_standard_stable(params.beta, rng));
    const BatchMeans bm = batch_means(abs_s, constants::kBatchMeansBatches);

    const double m = static_cast<double>(basis.m);
    const double sigma1 = params.sigma.front();
    const double lambda1 = basis.lambda1();

    double alpha = 0.0;
    while (true) {
        const double scale = ou_stationary_scale(sigma1, params.beta, lambda1 + alpha);
        const double est = scale * bm.mean;
        const double band = scale * constants::kBandSigmas * bm.se;
        res.tested_alphas.push_back(alpha);
        if (4.0 * eta_hat * m * (est + band) <= res.target) {
            res.alpha = alpha;
            res.e_abs_z1 = est;
            res.band = band;
            return res;
        }
        alpha = alpha == 0.0 ? 0.25 : 2.0 * alpha;
        if (alpha > constants::kAlphaSearchMax)
            throw CalibrationError(
                "alpha search exhausted above 1e8 without satisfying the damping bound");
    }
}

}  // namespace snse
