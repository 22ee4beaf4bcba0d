#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snse/integrator.hpp"
#include "snse/model.hpp"

namespace snse {

// Time-averaged empirical measure over the recorded states in (burn_in, T],
// represented by its observable cloud (uniform weights). A capped subsample
// of full states is kept so the measure can be pushed forward through the
// dynamics again.
struct EmpiricalMeasure {
    std::vector<std::string> names;  // observable schema
    std::size_t dim = 0;
    std::vector<double> samples;  // flattened rows, count() x dim
    std::vector<Field> states;    // deterministic subsample for resimulation
    double burn_in = 0.0;
    double T = 0.0;
    double delta = 0.25;

    std::size_t count() const { return dim == 0 ? 0 : samples.size() / dim; }
};

// Observables: |u|, |u|_V, |A^delta u|, then the first k coefficients.
EmpiricalMeasure build_mu_T(const std::vector<TrajectoryRecord>& records,
                            const SpectralBasis& basis, double burn_in, double T,
                            double delta, int k_coeffs = 8,
                            std::size_t state_cap = 1024);

struct TightnessReport {
    std::vector<double> radii;
    std::vector<double> tail_mass;     // mu(|A^delta u| > R)
    std::vector<double> markov_bound;  // E|A^delta u|^p / R^p
    double moment_p = 0.0;             // empirical E|A^delta u|^p
    double p_hat = 0.0;                // fitted tail exponent
    double p_hat_se = 0.0;
    bool degenerate = false;
    bool markov_ok = false;  // dominance at every radius (an identity)
};

TightnessReport tightness_report(const EmpiricalMeasure& mu, double p,
                                 std::size_t n_radii = 24);

// Energy distance between the observable clouds (half convention: two point
// masses at distance d give exactly d).
double stabilization_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct FellerReport {
    double radius = 0.0;
    double t_eval = 0.0;
    double median_distance = 0.0;
    double max_distance = 0.0;
    double median_ratio = 0.0;  // distance / radius
    int n_pairs = 0;
    int blowups = 0;
};

// Perturbs u0 by `radius` in random directions, reruns with the identical
// noise realization, and reports how far the solutions sit apart at t_eval.
FellerReport feller_probe(const Field& u0, double radius, int n_pairs, double t_eval,
                          const IntegratorConfig& cfg, const SpectralModel& model,
                          std::uint64_t seed);

struct InvarianceResult {
    double residual = 0.0;  // stabilization distance between mu and its pushforward
    int resimulated = 0;
    int blowups = 0;
};

// Empirical residual of invariance under the time-s transition: resimulate
// from the stored state subsample with fresh noise and compare clouds.
InvarianceResult invariance_residual(const EmpiricalMeasure& mu, double s,
                                     const IntegratorConfig& cfg, const SpectralModel& model,
                                     std::uint64_t seed);

}  // namespace snse
