#include "snse/model.hpp"

#include <cmath>

#include "snse/errors.hpp"

namespace snse {

void SpectralModel::validate() const {
    basis.validate();
    tensor.validate();
    if (tensor.N != basis.N) throw ParamError("tensor dimension must match basis");
    if (coriolis.N != basis.N) throw ParamError("Coriolis dimension must match basis");
    if (static_cast<int>(f.size()) != basis.N)
        throw ParamError("forcing vector length must equal N");
    noise.validate();
    if (noise.m() != basis.m)
        throw ParamError("noise scale count must equal the basis noise mode count m");
    if (!(nu > 0.0)) throw ParamError("viscosity nu must be positive");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ParamError("delta must lie in [0, 1]");
    if (!(alpha >= 0.0)) throw ParamError("damping shift alpha must be >= 0");
    for (double x : f)
        if (!std::isfinite(x)) throw ParamError("forcing must be finite");
}

double SpectralModel::gamma_of_z(const std::vector<double>& z) const {
    double sum_abs = 0.0;
    for (double zl : z) sum_abs += std::abs(zl);
    return -lambda1() / 2.0 + 4.0 * eta_hat * sum_abs;
}

double SpectralModel::p_of_z(const std::vector<double>& z) const {
    double sum_abs = 0.0, z_sq = 0.0;
    for (double zl : z) {
        sum_abs += std::abs(zl);
        z_sq += zl * zl;
    }
    const double c = c_forcing();
    return c * norm_sq(f) + c * alpha * z_sq + 2.0 * eta_hat * z_sq * sum_abs;
}

Field SpectralModel::z_as_field(const std::vector<double>& z) const {
    Field out(static_cast<std::size_t>(basis.N), 0.0);
    for (std::size_t l = 0; l < z.size(); ++l) out[l] = z[l];
    return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace snse
