#include "snse/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "snse/errors.hpp"

namespace snse {

void BilinearTensor::validate() const {
    if (N < 1) throw ParamError("tensor needs N >= 1");
    for (const auto& e : entries) {
        if (e.j < 0 || e.j >= N || e.k < 0 || e.k >= N || e.l < 0 || e.l >= N)
            throw ParamError("tensor entry index out of range");
        if (e.k >= e.l) throw ParamError("tensor entries must be stored with k < l");
    }
}

void BilinearTensor::add(int j, int k, int l, double value) {
    if (k == l) return;  // diagonal slot has no antisymmetric content
    if (k > l) {
        std::swap(k, l);
        value = -value;
    }
    entries.push_back({j, k, l, value});
}

void BilinearTensor::compress() {
    std::map<std::tuple<int, int, int>, double> acc;
    for (const auto& e : entries) acc[{e.j, e.k, e.l}] += e.value;
    entries.clear();
    for (const auto& [key, value] : acc) {
        if (value == 0.0) continue;
        entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
    }
}

Field BilinearTensor::apply(const Field& u, const Field& v) const {
    Field out(u.size(), 0.0);
    for (const auto& e : entries) {
        const double base = e.value * u[static_cast<std::size_t>(e.j)];
        out[static_cast<std::size_t>(e.l)] += base * v[static_cast<std::size_t>(e.k)];
        out[static_cast<std::size_t>(e.k)] -= base * v[static_cast<std::size_t>(e.l)];
    }
    return out;
}

BilinearTensor BilinearTensor::zero(int N) {
    BilinearTensor t;
    t.N = N;
    t.validate();
    return t;
}

BilinearTensor BilinearTensor::random_sparse(int N, int fill, Rng& rng) {
    BilinearTensor t;
    t.N = N;
    for (int i = 0; i < fill; ++i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(N)));
        const double value = 2.0 * rng.uniform01() - 1.0;
        t.add(j, k, l, value);
    }
    t.compress();
    t.validate();
    return t;
}

namespace {

Field random_unit_field(int N, Rng& rng) {
    Field u(static_cast<std::size_t>(N));
    double n2 = 0.0;
    do {
        for (auto& x : u) x = rng.normal();
        n2 = norm_sq(u);
    } while (!(n2 > 0.0));
    scale(u, 1.0 / std::sqrt(n2));
    return u;
}

}  // namespace

EtaEstimate estimate_eta(const SpectralBasis& basis, const BilinearTensor& tensor,
                         int trials, Rng& rng) {
    if (trials < 1000) throw ParamError("estimate_eta needs trials >= 1000");
    tensor.validate();

    EtaEstimate est;

    // Certified part. For fixed l, <B(u,e_l),u> = sum_{j,r} b_{j,l,r} u_j u_r
    // (the middle slot pinned to l). Only the symmetric part of M_{jr} =
    // b_{j,l,r} contributes to the quadratic form; both the Frobenius norm
    // and the induced-1 norm (max absolute row sum) of sym(M) bound its
    // spectral radius, so take the smaller.
    for (int l = 0; l < basis.m; ++l) {
        std::map<std::pair<int, int>, double> sym;  // keys with j <= r
        auto put = [&sym](int j, int r, double v) {
            // accumulate sym(M)_{jr}: raw M_{ab} += v adds v to the diagonal
            // or v/2 to the unordered off-diagonal slot
            if (j == r) {
                sym[{j, j}] += v;
                return;
            }
            if (j > r) std::swap(j, r);
            sym[{j, r}] += 0.5 * v;
        };
        for (const auto& e : tensor.entries) {
            // stored entry covers b_{j,k,l'} with k < l'; pin middle slot = l
            if (e.k == l) put(e.j, e.l, e.value);
            if (e.l == l) put(e.j, e.k, -e.value);  // mirrored sign
        }
        double frob_sq = 0.0;
        std::map<int, double> row_abs;
        for (const auto& [key, v] : sym) {
            const auto [j, r] = key;
            if (j == r) {
                frob_sq += v * v;
                row_abs[j] += std::abs(v);
            } else {
                frob_sq += 2.0 * v * v;  // unordered key stands for two entries
                row_abs[j] += std::abs(v);
                row_abs[r] += std::abs(v);
            }
        }
        double row_max = 0.0;
        for (const auto& [j, s] : row_abs) {
            (void)j;
            row_max = std::max(row_max, s);
        }
        est.certified = std::max(est.certified, std::min(std::sqrt(frob_sq), row_max));
    }

    // Sampled lower bound over random unit fields.
    Field el(static_cast<std::size_t>(tensor.N), 0.0);
    for (int t = 0; t < trials; ++t) {
        const Field u = random_unit_field(tensor.N, rng);
        for (int l = 0; l < basis.m; ++l) {
            el[static_cast<std::size_t>(l)] = 1.0;
            const double q = std::abs(dot(tensor.apply(u, el), u));
            el[static_cast<std::size_t>(l)] = 0.0;
            est.sampled_lower = std::max(est.sampled_lower, q);
        }
    }
    est.certified = std::max(est.certified, est.sampled_lower);
    return est;
}

double fit_bilinear_constant(const SpectralBasis& basis, const BilinearTensor& tensor,
                             int trials, Rng& rng) {
    double c = 0.0;
    for (int t = 0; t < trials; ++t) {
        Field u = random_unit_field(tensor.N, rng);
        Field v = random_unit_field(tensor.N, rng);
        Field w = random_unit_field(tensor.N, rng);
        const double num = std::abs(dot(tensor.apply(u, v), w));
        const double den = std::sqrt(norm(u)) * std::pow(norm_v_sq(basis, u), 0.25) *
                           std::sqrt(norm(v)) * std::pow(norm_v_sq(basis, v), 0.25) *
                           std::sqrt(norm_v_sq(basis, w));
        if (den > 0.0) c = std::max(c, num / den);
    }
    return c;
}

}  // namespace snse
