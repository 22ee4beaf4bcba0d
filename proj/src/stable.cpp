#include "snse/stable.hpp"

#include <algorithm>
#include <cmath>

#include "snse/constants.hpp"
#include "snse/errors.hpp"

namespace snse {

void StableParams::validate() const {
    if (!(beta > 0.0) || !(beta <= 2.0))
        throw ParamError("stability index beta must lie in (0, 2]");
    if (sigma.empty())
        throw ParamError("need at least one driven mode (m >= 1)");
    for (double s : sigma)
        if (!(s >= 0.0)) throw ParamError("per-mode scales sigma_l must be >= 0");
}

StableParams StableParams::uniform(double beta, int m, double sigma_value) {
    StableParams p;
    p.beta = beta;
    p.sigma.assign(static_cast<std::size_t>(m), sigma_value);
    p.validate();
    return p;
}

double noise_finiteness_sum(const StableParams& params, const std::vector<double>& lambda) {
    double total = 0.0;
    for (std::size_t l = 0; l < params.sigma.size() && l < lambda.size(); ++l)
        total += std::pow(std::abs(params.sigma[l]), params.beta) *
                 std::pow(lambda[l], params.beta / 2.0);
    return total;
}

double sample_standard_stable(double beta, Rng& rng) {
    if (!(beta > 0.0) || !(beta <= 2.0))
        throw ParamError("stability index beta must lie in (0, 2]");
    const double u = M_PI * (rng.uniform01() - 0.5);  // uniform on (-pi/2, pi/2)
    const double w = rng.exponential();
    // Symmetric CMS. At beta = 1 the second factor has exponent 0 and the
    // expression reduces to tan(u), the standard Cauchy.
    const double a = std::sin(beta * u) / std::pow(std::cos(u), 1.0 / beta);
    const double b = std::pow(std::cos((1.0 - beta) * u) / w, (1.0 - beta) / beta);
    return a * b;
}

double levy_increment(double beta, double scale, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw ParamError("levy_increment requires dt > 0");
    if (!(scale >= 0.0)) throw ParamError("levy_increment requires scale >= 0");
    if (scale == 0.0) return 0.0;
    return scale * std::pow(dt, 1.0 / beta) * sample_standard_stable(beta, rng);
}

TailIndexEstimate tail_index_estimate(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < static_cast<std::size_t>(constants::kTailMinSamples))
        throw DiagnosticError("tail_index_estimate needs at least 1e4 samples");

    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(samples[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());

    const std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    const double pivot = mags[k];
    if (!(pivot > 0.0))
        throw DiagnosticError("tail_index_estimate: degenerate sample (upper tail not positive)");

    double log_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) log_sum += std::log(mags[i] / pivot);
    if (!(log_sum > 0.0))
        throw DiagnosticError("tail_index_estimate: degenerate sample (no tail spread)");

    TailIndexEstimate est;
    est.k = k;
    est.beta_hat = static_cast<double>(k) / log_sum;
    est.light_tail = est.beta_hat >= constants::kLightTailThreshold;
    return est;
}

}  // namespace snse
