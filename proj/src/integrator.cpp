#include "snse/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "snse/errors.hpp"

namespace snse {

Scheme scheme_from_string(const std::string& name) {
    if (name == "semi_implicit") return Scheme::semi_implicit;
    if (name == "explicit_euler") return Scheme::explicit_euler;
    throw ParamError("unknown scheme '" + name + "' (semi_implicit|explicit_euler)");
}

void IntegratorConfig::validate() const {
    if (!(h > 0.0)) throw ParamError("time step h must be positive");
    if (!(T >= h)) throw ParamError("horizon T must be >= h");
    if (record_stride < 1) throw ParamError("record_stride must be >= 1");
}

Field step_v(const Field& v, const std::vector<double>& z_now, double h, double t_next,
             Scheme scheme, const SpectralModel& model) {
    const Field zf = model.z_as_field(z_now);
    const Field u = add(v, zf);
    Field rhs = model.tensor.apply(u, u);  // B(u,u)
    scale(rhs, -1.0);
    const Field cv = model.coriolis.apply(v);
    axpy(-1.0, cv, rhs);
    axpy(1.0, model.f, rhs);
    axpy(model.alpha, zf, rhs);

    Field out(v.size());
    if (scheme == Scheme::semi_implicit) {
        for (std::size_t l = 0; l < v.size(); ++l)
            out[l] = (v[l] + h * rhs[l]) / (1.0 + h * model.nu * model.basis.lambda[l]);
    } else {
        for (std::size_t l = 0; l < v.size(); ++l)
            out[l] = v[l] + h * (rhs[l] - model.nu * model.basis.lambda[l] * v[l]);
    }
    for (double x : out)
        if (!std::isfinite(x)) throw BlowUpError(t_next);
    return out;
}

double LedgerRow::scale0() const {
    return std::max({1.0, v_v_sq, std::abs(gamma) * v_sq, 2.0 * p});
}

namespace {

LedgerRow make_row(double t, const Field& v, const std::vector<double>& z,
                   const SpectralModel& model) {
    LedgerRow row;
    row.t = t;
    row.v_sq = norm_sq(v);
    row.v_v_sq = norm_v_sq(model.basis, v);
    row.v_frac_sq = norm_frac_sq(model.basis, v, model.delta);
    const Field zf = model.z_as_field(z);
    const Field u = add(v, zf);
    row.u_sq = norm_sq(u);
    row.u_v_sq = norm_v_sq(model.basis, u);
    row.u_frac_sq = norm_frac_sq(model.basis, u, model.delta);
    row.z_sq = 0.0;
    for (double zl : z) row.z_sq += zl * zl;
    row.gamma = model.gamma_of_z(z);
    row.p = model.p_of_z(z);

    Field rhs = model.tensor.apply(u, u);
    scale(rhs, -1.0);
    axpy(-1.0, model.coriolis.apply(v), rhs);
    axpy(1.0, model.f, rhs);
    axpy(model.alpha, zf, rhs);
    row.rhs_sq = norm_sq(rhs);
    row.av_sq = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) {
        const double avl = model.basis.lambda[l] * v[l];
        row.av_sq += avl * avl;
    }

    const double f_term =
        norm_frac_sq(model.basis, model.f, std::min(model.delta + 0.5, 1.0));
    const double z_term =
        model.alpha * model.alpha * norm_frac_sq(model.basis, zf, model.delta);
    const double q = norm_frac_sq(model.basis, zf, (2.0 * model.delta + 1.0) / 4.0);
    row.g_env = f_term + z_term + q * q;

    row.dplus_v_sq = std::numeric_limits<double>::quiet_NaN();
    row.dineq_residual = std::numeric_limits<double>::quiet_NaN();
    return row;
}

void close_ledger_row(LedgerRow& row, const LedgerRow& next) {
    const double dt = next.t - row.t;
    row.dplus_v_sq = (next.v_sq - row.v_sq) / dt;
    // LHS - RHS of: (1/2) d+|v|^2/dt + (1/2)|v|^2_V <= (1/2) gamma |v|^2 + p
    row.dineq_residual = 0.5 * row.dplus_v_sq + 0.5 * row.v_v_sq -
                         (0.5 * row.gamma * row.v_sq + row.p);
}

}  // namespace

TrajectoryRecord simulate(const Field& u0, const IntegratorConfig& cfg,
                          const SpectralModel& model, std::uint64_t seed,
                          std::uint32_t trajectory_id) {
    cfg.validate();
    model.validate();
    if (static_cast<int>(u0.size()) != model.N())
        throw ParamError("initial condition length must equal N");
    for (double x : u0)
        if (!std::isfinite(x)) throw ParamError("initial condition must be finite");

    OUProcess ou(model.noise, model.basis, model.alpha, seed, trajectory_id);
    OUState zs = ou.stationary_init();
    Field v = sub(u0, model.z_as_field(zs.z));

    TrajectoryRecord rec;
    rec.seed = seed;
    rec.trajectory_id = trajectory_id;
    const long n_steps = static_cast<long>(std::llround(cfg.T / cfg.h));

    auto record = [&](double t) {
        rec.times.push_back(t);
        if (cfg.record_fields) {
            rec.u.push_back(add(v, model.z_as_field(zs.z)));
            rec.v.push_back(v);
        }
        rec.z.push_back(zs.z);
        rec.ledger.push_back(make_row(t, v, zs.z, model));
        if (rec.ledger.size() >= 2)
            close_ledger_row(rec.ledger[rec.ledger.size() - 2], rec.ledger.back());
    };

    record(0.0);
    for (long step = 0; step < n_steps; ++step) {
        const double t_next = static_cast<double>(step + 1) * cfg.h;
        try {
            v = step_v(v, zs.z, cfg.h, t_next, cfg.scheme, model);
        } catch (const BlowUpError& e) {
            rec.blew_up = true;
            rec.blow_up_time = e.t;
            return rec;
        }
        ou.exact_step(zs, cfg.h);
        zs.t = t_next;  // avoid accumulated-sum drift against the record grid
        if ((step + 1) % cfg.record_stride == 0) record(t_next);
    }
    return rec;
}

GronwallResult gronwall_bound(const TrajectoryRecord& rec, std::size_t i_tau,
                              std::size_t i_t) {
    if (i_t >= rec.ledger.size() || i_tau > i_t)
        throw ParamError("gronwall_bound needs record indices tau <= t inside the record");
    const auto& led = rec.ledger;

    // cum[i] = int_{t_tau}^{t_i} gamma ds (trapezoid)
    std::vector<double> cum(i_t - i_tau + 1, 0.0);
    for (std::size_t i = i_tau + 1; i <= i_t; ++i) {
        const double dt = led[i].t - led[i - 1].t;
        cum[i - i_tau] = cum[i - i_tau - 1] + 0.5 * dt * (led[i].gamma + led[i - 1].gamma);
    }
    const double full = cum.back();

    GronwallResult res;
    res.actual = led[i_t].v_sq;
    res.bound = led[i_tau].v_sq * std::exp(full);
    // int e^{int_s^t gamma} 2 p(s) ds, trapezoid in s
    for (std::size_t i = i_tau + 1; i <= i_t; ++i) {
        const double dt = led[i].t - led[i - 1].t;
        const double f_lo = std::exp(full - cum[i - i_tau - 1]) * 2.0 * led[i - 1].p;
        const double f_hi = std::exp(full - cum[i - i_tau]) * 2.0 * led[i].p;
        res.bound += 0.5 * dt * (f_lo + f_hi);
    }
    return res;
}

VIntegralResult v_norm_time_integral(const TrajectoryRecord& rec, std::size_t i_tau,
                                     std::size_t i_t) {
    if (i_t >= rec.ledger.size() || i_tau > i_t)
        throw ParamError("v_norm_time_integral needs indices tau <= t inside the record");
    const auto& led = rec.ledger;

    double integral = 0.0, int_gamma_plus = 0.0, int_2p = 0.0, sup_v_sq = led[i_tau].v_sq;
    for (std::size_t i = i_tau + 1; i <= i_t; ++i) {
        const double dt = led[i].t - led[i - 1].t;
        integral += 0.5 * dt * (led[i].v_v_sq + led[i - 1].v_v_sq);
        int_gamma_plus += 0.5 * dt * (std::max(led[i].gamma, 0.0) +
                                      std::max(led[i - 1].gamma, 0.0));
        int_2p += 0.5 * dt * (2.0 * led[i].p + 2.0 * led[i - 1].p);
        sup_v_sq = std::max(sup_v_sq, led[i].v_sq);
    }

    VIntegralResult res;
    res.integral = integral;
    res.rhs = led[i_tau].v_sq - led[i_t].v_sq + sup_v_sq * int_gamma_plus + int_2p;
    res.residual = res.integral - res.rhs;
    return res;
}

double adelta_worst_overshoot(const TrajectoryRecord& rec, double K) {
    if (rec.ledger.size() < 2) throw ParamError("record too short for the envelope check");
    const auto& led = rec.ledger;
    const std::size_t n = led.size();

    // cumulative I(0, t_i) = int |v|^2 |v|^2_V
    std::vector<double> cum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = led[i].t - led[i - 1].t;
        cum[i] = cum[i - 1] + 0.5 * dt *
                                  (led[i].v_sq * led[i].v_v_sq +
                                   led[i - 1].v_sq * led[i - 1].v_v_sq);
    }

    // The t = 0 row is skipped: there the bound reduces to the identity
    // lhs = lhs and would pin the worst overshoot at exactly zero.
    double worst = -std::numeric_limits<double>::infinity();
    double running = 0.0;  // int_0^{t_i} e^{-K cum(s)} G(s) ds, trapezoid
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = led[i].t - led[i - 1].t;
        running += 0.5 * dt * (std::exp(-K * cum[i - 1]) * led[i - 1].g_env +
                               std::exp(-K * cum[i]) * led[i].g_env);
        const double rhs = std::exp(K * cum[i]) * (led[0].v_frac_sq + K * running);
        const double lhs = led[i].v_frac_sq;
        worst = std::max(worst, (lhs - rhs) / std::max(1.0, lhs));
    }
    return worst;
}

double fit_adelta_K(const std::vector<TrajectoryRecord>& recs) {
    auto ok = [&](double K) {
        for (const auto& rec : recs)
            if (adelta_worst_overshoot(rec, K) > 0.0) return false;
        return true;
    };
    double hi = 1.0;
    while (!ok(hi)) {
        hi *= 2.0;
        if (hi > 1e12) throw CalibrationError("no finite envelope constant fits the ensemble");
    }
    double lo = 0.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace snse
