#pragma once

// Every tolerance, significance level, and frozen fitted constant used by the
// verification checks lives here. Checks reference these by name; nothing is
// tuned at call sites.

namespace snse::constants {

// Exact-identity checks (antisymmetry, Poincare, certified eta): relative slop
// allowed for floating-point accumulation only.
inline constexpr double kExactRelTol = 1e-12;

// Two-sample Kolmogorov-Smirnov: fixed 1% significance. Critical statistic is
// kKs01Coeff * sqrt((n+m)/(n*m)).
inline constexpr double kKsLevel = 0.01;
inline constexpr double kKs01Coeff = 1.6276236115189503;  // sqrt(-ln(0.005)/2)

// Stable-noise law checks.
inline constexpr double kGaussianVarianceRelTol = 0.02;  // beta=2 variance vs 2*scale^2
inline constexpr double kCauchyIqrRelTol = 0.03;
inline constexpr double kSymmetrySigmas = 3.0;           // |mean sign| <= 3/sqrt(N)

// OU structural moment ratios (eq_fin across modes).
inline constexpr double kMomentRatioRelTol = 0.05;

// Ergodic-average self-consistency and calibration.
inline constexpr double kErgodicRelTol = 0.05;
inline constexpr int kBatchMeansBatches = 32;
inline constexpr double kBandSigmas = 2.0;      // upper edge of MC confidence band
inline constexpr double kAlphaSearchMax = 1e8;  // search exhaustion bound

// Energy-chain discretization tolerance tau(h) = kCTau * h (relative to the
// row's own scale, see ledger implementation). Two roles: the worst residual
// must stay below +tau(h) (the inequality holds to tolerance), and a step
// counts toward the refinement mass when its residual is within tau(h) of
// tightness, i.e. fails the tau(h)-strengthened inequality. Fitted once on
// the abstract calibration ensemble (tools/calibrate_constants) so the mass
// sits on the h-proportional branch of the slack distribution, then frozen.
inline constexpr double kCTau = 2.5;

// Refinement gate for the energy chain: violation mass must shrink by a
// factor in [kRefineLo, kRefineHi] when h -> h/2.
inline constexpr double kRefineLo = 1.5;
inline constexpr double kRefineHi = 3.0;

// Gronwall dominance: actual <= bound * (1 + kGronwallTol) at h = 1e-3.
inline constexpr double kGronwallTol = 1e-2;

// Fitted constant K(nu) of the A^delta a priori bound, fitted once on the
// abstract calibration ensemble (tools/calibrate_constants) and frozen with
// kConstantFitHeadroom on top of the largest fitted value.
inline constexpr double kAdeltaK = 0.04;

// Discretization allowance for the A^delta envelope: the worst relative
// overshoot on a fresh ensemble must stay below kAdeltaTauCoeff * h.
inline constexpr double kAdeltaTauCoeff = 1.0;

// Block-max sublinear growth: fitted exceedance decay exponent must reach
// kappa*p minus this margin.
inline constexpr double kEstzMargin = 0.2;

// Tail-index diagnostic.
inline constexpr int kTailMinSamples = 10000;
inline constexpr double kLightTailThreshold = 2.0;

// Measure pipeline defaults.
inline constexpr double kBlowUpBudget = 0.01;  // fraction of runs allowed to blow up
inline constexpr int kEnergyDistanceCap = 2048;  // cloud size cap (deterministic thinning)
inline constexpr double kFellerDecadeRatio = 10.0;  // median-ratio spread across the sweep

// Bilinear-bound existence fits: a constant fitted on one sample must cover a
// fresh sample within this factor.
inline constexpr double kConstantFitHeadroom = 1.25;

}  // namespace snse::constants
