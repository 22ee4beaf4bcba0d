#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "snse/model.hpp"

namespace snse {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // one-line human summary
    std::vector<std::pair<std::string, double>> stats;

    void stat(const std::string& key, double value) { stats.emplace_back(key, value); }
};

// Budget knobs for the stochastic checks; defaults match the verification
// runs the project is sized for.
struct VerifySettings {
    int trials = 10000;      // random inputs for the exact-identity checks
    int n_samples = 100000;  // OU moment Monte Carlo
    double moment_p = 1.2;   // moment order, must sit in (1, beta)
    int energy_traj = 100;
    double energy_T = 10.0;
    double energy_h = 1e-3;
    int energy_pairs = 16;  // per-run subgrid for integrated-inequality pairs
    int estz_blocks = 4000;
    double estz_p = 1.2;
    double estz_h = 0.01;
    int adelta_runs = 50;
    double adelta_T = 1.0;
    double adelta_h = 1e-3;
    double gamma_T = 400.0;
    double gamma_h = 0.01;
    int feller_pairs = 12;
    double feller_t_eval = 1.0;
    int threads = 1;
};

// Exact identities on random fields: Poincare pair, antisymmetry pair,
// certified eta domination.
CheckResult check_poincare(const SpectralModel& model, const VerifySettings& s,
                           std::uint64_t seed);
CheckResult check_antisymmetry(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed);
CheckResult check_bsum(const SpectralModel& model, const VerifySettings& s,
                       std::uint64_t seed);

// Structural stationary-moment ratios across modes.
CheckResult check_ou_moments(const SpectralModel& model, const VerifySettings& s,
                             std::uint64_t seed);

// Differential/integrated energy inequalities under h -> h/2 refinement.
CheckResult check_energy_chain(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed);

// Block-max sublinear growth of the stationary z path.
CheckResult check_estz(const SpectralModel& model, const VerifySettings& s,
                       std::uint64_t seed);

// Time-averaged gamma falls below -lambda_1/4 past an onset and the
// exponential envelope decays accordingly.
CheckResult check_gamma_negativity(const SpectralModel& model, const VerifySettings& s,
                                   std::uint64_t seed);

// Fractional-norm envelope with the frozen fitted constant.
CheckResult check_adelta_bound(const SpectralModel& model, const VerifySettings& s,
                               std::uint64_t seed);

// Continuity probe: shared-noise distance ratios across a dyadic radius sweep.
CheckResult check_feller(const SpectralModel& model, const VerifySettings& s,
                         std::uint64_t seed);

// Negative controls: deliberately broken inputs must make the corresponding
// check fail; the control passes exactly when it does.
CheckResult negative_gamma_control(const SpectralModel& model, const VerifySettings& s,
                                   std::uint64_t seed);
CheckResult negative_energy_control(const SpectralModel& model, const VerifySettings& s,
                                    std::uint64_t seed);

using CheckFn = std::function<CheckResult(const SpectralModel&, const VerifySettings&,
                                          std::uint64_t)>;

// Registry in canonical execution order.
const std::vector<std::pair<std::string, CheckFn>>& check_registry();

std::vector<CheckResult> run_checks(const SpectralModel& model, const VerifySettings& s,
                                    std::uint64_t seed,
                                    const std::vector<std::string>& names);

}  // namespace snse
