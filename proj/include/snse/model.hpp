#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "snse/basis.hpp"
#include "snse/coriolis.hpp"
#include "snse/field.hpp"
#include "snse/stable.hpp"
#include "snse/tensor.hpp"

namespace snse {

// Everything immutable that defines one dynamical system:
//   du + [nu A u + B(u,u) + C u] dt = f dt + sum_l sigma_l e_l dL_l.
// The damping shift alpha belongs to the auxiliary z-process / change of
// variables, not to the physics, but it travels with the model because the
// energy bookkeeping (gamma, p) needs it next to eta_hat.
struct SpectralModel {
    SpectralBasis basis;
    BilinearTensor tensor;
    CoriolisOperator coriolis;
    Field f;  // deterministic forcing, size N
    double nu = 1.0;
    double delta = 0.25;
    StableParams noise;
    double alpha = 0.0;

    // Certified bound with |<B(u,e_l),u>| <= eta_hat |u|^2 for l < m, plus
    // the Monte-Carlo lower bound that was observed when it was certified.
    double eta_hat = 0.0;
    double eta_lower = 0.0;

    void validate() const;

    int N() const { return basis.N; }
    int m() const { return basis.m; }
    double lambda1() const { return basis.lambda1(); }

    // Energy-ledger constants. c_forcing multiplies |f|^2 and alpha|z|^2 in
    // p(t); c_young is the Young-inequality weight on |v|^2. The pairing
    // <f + alpha z, v> <= 2 c_young |v|^2 + (|f|^2 + alpha^2 |z|^2)/(4 c_young)
    // with c_young = lambda_1/8 needs c_forcing >= (2/lambda_1) max(1, alpha),
    // which is what we use (logged with every run).
    double c_young() const { return lambda1() / 8.0; }
    double c_forcing() const { return 2.0 * std::max(1.0, alpha) / lambda1(); }

    // gamma(t) = -lambda_1/2 + 4 eta_hat sum_l |z_l|
    double gamma_of_z(const std::vector<double>& z) const;
    // p(t) = c|f|^2 + c alpha |z|^2 + 2 eta_hat |z|^2 sum_l |z_l|
    double p_of_z(const std::vector<double>& z) const;

    // |z|^2 and the norms of z viewed as a Field supported on the first m modes.
    Field z_as_field(const std::vector<double>& z) const;
};

// Deterministic tensor/config fingerprint embedded in every output file.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace snse
