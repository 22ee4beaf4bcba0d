#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snse/field.hpp"
#include "snse/model.hpp"
#include "snse/ou.hpp"

namespace snse {

enum class Scheme { semi_implicit, explicit_euler };

Scheme scheme_from_string(const std::string& name);

struct IntegratorConfig {
    double h = 1e-3;
    double T = 1.0;
    Scheme scheme = Scheme::semi_implicit;
    int record_stride = 1;
    bool record_fields = true;  // store u (and v) snapshots, not just the ledger

    void validate() const;
};

// Per recorded time: the quantities of the energy bookkeeping. The forward
// difference and the inequality residual live on the step from this row to
// the next (last row keeps NaN there).
struct LedgerRow {
    double t = 0.0;
    double v_sq = 0.0;       // |v|^2
    double v_v_sq = 0.0;     // |v|^2_V
    double v_frac_sq = 0.0;  // |A^delta v|^2
    double u_sq = 0.0;
    double u_v_sq = 0.0;
    double u_frac_sq = 0.0;
    double z_sq = 0.0;
    double gamma = 0.0;
    double p = 0.0;
    double rhs_sq = 0.0;          // |-Cv - B(u,u) + f + alpha z|^2 (local error scale)
    double av_sq = 0.0;           // |Av|^2
    double g_env = 0.0;           // G(t) of the fractional envelope at model.delta
    double dplus_v_sq = 0.0;      // (|v(t+h')|^2 - |v(t)|^2)/h' on the record grid
    double dineq_residual = 0.0;  // LHS - RHS of the differential inequality

    // Row scale for h-proportional tolerances: violations are counted when
    // the residual exceeds kCTau * h * scale0().
    double scale0() const;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Field> u;                 // empty when record_fields = false
    std::vector<Field> v;                 // empty when record_fields = false
    std::vector<std::vector<double>> z;   // z snapshot per recorded time
    std::vector<LedgerRow> ledger;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::uint32_t trajectory_id = 0;
    bool blew_up = false;
    double blow_up_time = 0.0;

    std::size_t size() const { return times.size(); }
};

// One step of the v-equation with z frozen at its start-of-step value.
// semi_implicit solves (I + h nu A) v' = v + h (-Cv - B(u,u) + f + alpha z)
// exactly (A is diagonal); explicit_euler treats A explicitly too.
// Throws BlowUpError(t_next) when the result is non-finite.
Field step_v(const Field& v, const std::vector<double>& z_now, double h, double t_next,
             Scheme scheme, const SpectralModel& model);

// Full run: stationary z init, v(0) = u0 - z(0), exact z stepping alongside
// the v scheme, energy ledger on the recording grid. A blow-up stops the
// run and returns the partial record with the flag set (callers decide
// whether that is an error).
TrajectoryRecord simulate(const Field& u0, const IntegratorConfig& cfg,
                          const SpectralModel& model, std::uint64_t seed,
                          std::uint32_t trajectory_id = 0);

// Right side of the pathwise exponential-envelope bound on |v(t)|^2 given
// the recorded gamma and p, by trapezoid quadrature between record indices.
struct GronwallResult {
    double bound = 0.0;
    double actual = 0.0;
};
GronwallResult gronwall_bound(const TrajectoryRecord& rec, std::size_t i_tau,
                              std::size_t i_t);

// Trapezoid value of int |v|^2_V ds over [tau, t] together with the
// integrated-inequality right side
//   |v(tau)|^2 - |v(t)|^2 + (sup |v|^2) int gamma^+ + int 2p
// and the residual (integral - rhs).
struct VIntegralResult {
    double integral = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};
VIntegralResult v_norm_time_integral(const TrajectoryRecord& rec, std::size_t i_tau,
                                     std::size_t i_t);

// Fractional-norm a priori envelope: checks
//   |A^d v(t)|^2 <= e^{K I(0,t)} |A^d v(0)|^2 + K int e^{K I(s,t)} G(s) ds
// on the record grid (d = model.delta), I(s,t) = int |v|^2 |v|^2_V,
// G = |A^{d+1/2} f|^2 + alpha^2 |A^d z|^2 + |A^{(2d+1)/4} z|^4 (precomputed
// into the ledger). Returns the worst relative overshoot
// max_t (lhs - rhs)/max(1, lhs); negative when dominance holds everywhere.
double adelta_worst_overshoot(const TrajectoryRecord& rec, double K);

// Smallest K making the envelope dominate on all supplied records
// (bisection; used once to fit the frozen constant).
double fit_adelta_K(const std::vector<TrajectoryRecord>& recs);

}  // namespace snse
