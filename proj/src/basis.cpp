#include "snse/basis.hpp"

#include <algorithm>
#include <cmath>

#include "snse/errors.hpp"

namespace snse {

void SpectralBasis::validate() const {
    if (N < 1) throw ParamError("basis needs N >= 1 modes");
    if (m < 1 || m > N) throw ParamError("noise mode count m must satisfy 1 <= m <= N");
    if (static_cast<int>(lambda.size()) != N)
        throw ParamError("eigenvalue list length must equal N");
    if (!(lambda.front() > 0.0)) throw ParamError("lambda_1 must be positive");
    for (int l = 1; l < N; ++l)
        if (lambda[l] < lambda[l - 1]) throw ParamError("eigenvalues must be nondecreasing");
}

SpectralBasis SpectralBasis::sphere_like(int N, int m) {
    SpectralBasis b;
    b.N = N;
    b.m = m;
    b.lambda.resize(static_cast<std::size_t>(std::max(N, 0)));
    for (int l = 0; l < N; ++l) {
        const double ell = static_cast<double>(l + 1);
        b.lambda[static_cast<std::size_t>(l)] = ell * (ell + 1.0);
    }
    b.validate();
    return b;
}

SpectralBasis SpectralBasis::torus_like(int N, int m) {
    // Collect |k|^2 over a half-plane of integer wavevectors (k1 > 0, or
    // k1 == 0 and k2 > 0), enough of them to cover N after sorting.
    std::vector<double> sq;
    int box = 2;
    while (static_cast<int>(sq.size()) < N) {
        sq.clear();
        for (int k1 = -box; k1 <= box; ++k1)
            for (int k2 = -box; k2 <= box; ++k2) {
                if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
                sq.push_back(static_cast<double>(k1 * k1 + k2 * k2));
            }
        ++box;
    }
    std::sort(sq.begin(), sq.end());
    sq.resize(static_cast<std::size_t>(N));

    SpectralBasis b;
    b.N = N;
    b.m = m;
    b.lambda = std::move(sq);
    b.validate();
    return b;
}

SpectralBasis SpectralBasis::explicit_list(std::vector<double> lambda, int m) {
    SpectralBasis b;
    b.N = static_cast<int>(lambda.size());
    b.m = m;
    b.lambda = std::move(lambda);
    b.validate();
    return b;
}

SpectralBasis SpectralBasis::from_rule(const std::string& rule, int N, int m) {
    if (rule == "sphere") return sphere_like(N, m);
    if (rule == "torus") return torus_like(N, m);
    throw ParamError("unknown eigenvalue rule '" + rule + "' (expected sphere|torus|explicit)");
}

Field apply_A(const SpectralBasis& basis, const Field& u) {
    Field out(u.size());
    for (std::size_t l = 0; l < u.size(); ++l) out[l] = basis.lambda[l] * u[l];
    return out;
}

Field apply_frac_A(const SpectralBasis& basis, const Field& u, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw ParamError("fractional power delta must lie in [0, 1]");
    if (delta == 0.0) return u;
    if (delta == 1.0) return apply_A(basis, u);
    Field out(u.size());
    for (std::size_t l = 0; l < u.size(); ++l)
        out[l] = std::pow(basis.lambda[l], delta) * u[l];
    return out;
}

double norm_v_sq(const SpectralBasis& basis, const Field& u) {
    double s = 0.0;
    for (std::size_t l = 0; l < u.size(); ++l) s += basis.lambda[l] * u[l] * u[l];
    return s;
}

double norm_frac_sq(const SpectralBasis& basis, const Field& u, double delta) {
    double s = 0.0;
    for (std::size_t l = 0; l < u.size(); ++l)
        s += std::pow(basis.lambda[l], 2.0 * delta) * u[l] * u[l];
    return s;
}

FieldNorms norms(const SpectralBasis& basis, const Field& u, double delta) {
    FieldNorms n;
    n.h = norm(u);
    n.v = std::sqrt(norm_v_sq(basis, u));
    n.frac = std::sqrt(norm_frac_sq(basis, u, delta));
    return n;
}

}  // namespace snse
