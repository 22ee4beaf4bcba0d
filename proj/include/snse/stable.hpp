#pragma once

#include <cstddef>
#include <vector>

#include "snse/rng.hpp"

namespace snse {

// Parameters of the finite-dimensional symmetric beta-stable forcing.
// sigma has exactly m entries; modes beyond m carry no noise.
struct StableParams {
    double beta = 1.5;            // stability index, in (0, 2]
    std::vector<double> sigma;    // per-mode scales, all >= 0

    int m() const { return static_cast<int>(sigma.size()); }
    void validate() const;  // throws ParamError on violation

    static StableParams uniform(double beta, int m, double sigma_value);
};

// sum_l |sigma_l|^beta * lambda_l^{beta/2}; finite by construction for
// finite m, computed so runs can log it.
double noise_finiteness_sum(const StableParams& params, const std::vector<double>& lambda);

// One draw from the standard symmetric beta-stable law via the
// Chambers-Mallows-Stuck construction. Exact and allocation-free. For
// beta = 2 the law is centered Gaussian with variance 2.
double sample_standard_stable(double beta, Rng& rng);

// Increment L(t+dt) - L(t) of a beta-stable Levy process with the given
// scale: standard stable times scale * dt^{1/beta} (self-similarity).
double levy_increment(double beta, double scale, double dt, Rng& rng);

struct TailIndexEstimate {
    double beta_hat = 0.0;
    std::size_t k = 0;        // order statistics used
    bool light_tail = false;  // Hill is inconsistent at beta = 2; flag estimates >= 2
};

// Hill estimate of the tail exponent of |samples|, using the top sqrt(n)
// order statistics. Targets beta for beta-stable input with beta < 2.
TailIndexEstimate tail_index_estimate(const std::vector<double>& samples);

}  // namespace snse
