#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "snse/errors.hpp"
#include "snse/nse2d.hpp"
#include "snse/rng.hpp"

using namespace snse;

namespace {

constexpr int kQuad = 32;  // uniform grid, exact for trig polynomials below Nyquist

Field one_hot(int n, int i) {
    Field u(static_cast<std::size_t>(n), 0.0);
    u[static_cast<std::size_t>(i)] = 1.0;
    return u;
}

// <f, g> over [0, 2pi]^2 by the trapezoid rule on the periodic grid.
double quad_inner(const Nse2dLayout& layout, const Field& a, const Field& b) {
    const double step = 2.0 * M_PI / kQuad;
    double s = 0.0;
    for (int i = 0; i < kQuad; ++i)
        for (int j = 0; j < kQuad; ++j) {
            const auto va = nse2d_eval(layout, a, i * step, j * step);
            const auto vb = nse2d_eval(layout, b, i * step, j * step);
            s += va[0] * vb[0] + va[1] * vb[1];
        }
    return s * step * step;
}

// b(e_j, e_k, e_l) = integral of ((e_j . grad) e_k) . e_l, with the middle
// gradient taken analytically.
double quad_entry(const Nse2dLayout& layout, int j, int k, int l) {
    const int n = static_cast<int>(layout.modes.size());
    const Field ej = one_hot(n, j), el = one_hot(n, l);
    const auto& mk = layout.modes[static_cast<std::size_t>(k)];
    const double nrm =
        std::sqrt(static_cast<double>(mk.a[0] * mk.a[0] + mk.a[1] * mk.a[1])) * M_PI *
        std::sqrt(2.0);
    const double step = 2.0 * M_PI / kQuad;
    double s = 0.0;
    for (int i = 0; i < kQuad; ++i)
        for (int q = 0; q < kQuad; ++q) {
            const double x1 = i * step, x2 = q * step;
            const auto vj = nse2d_eval(layout, ej, x1, x2);
            const auto vl = nse2d_eval(layout, el, x1, x2);
            const double phase = mk.a[0] * x1 + mk.a[1] * x2;
            const double dphi = mk.trig == 0 ? -std::sin(phase) : std::cos(phase);
            const double adv = (vj[0] * mk.a[0] + vj[1] * mk.a[1]) * dphi;
            s += adv * (-mk.a[1] * vl[0] + mk.a[0] * vl[1]) / nrm;
        }
    return s * step * step;
}

}  // namespace

TEST_CASE("nse2d layout orders shells and rejects tiny grids") {
    CHECK_THROWS_AS(nse2d_layout(5), ParamError);
    const Nse2dLayout layout = nse2d_layout(12);
    CHECK(layout.kmax == 4);
    const SpectralBasis basis = nse2d_basis(layout, 4);
    REQUIRE(basis.N == static_cast<int>(layout.modes.size()));
    CHECK(basis.lambda[0] == 1.0);
    CHECK(basis.lambda[3] == 1.0);  // |k|^2 = 1 shell holds exactly 4 modes
    CHECK(basis.lambda[4] == 2.0);
    for (int l = 1; l < basis.N; ++l)
        CHECK(basis.lambda[static_cast<std::size_t>(l)] >=
              basis.lambda[static_cast<std::size_t>(l - 1)]);
}

TEST_CASE("nse2d modes are orthonormal in L2") {
    const Nse2dLayout layout = nse2d_layout(12);
    const int n = static_cast<int>(layout.modes.size());
    Rng rng(make_stream(9, StreamPurpose::tensor, 1, 0));
    for (int trial = 0; trial < 40; ++trial) {
        const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const double ip = quad_inner(layout, one_hot(n, i), one_hot(n, j));
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("nse2d tensor entries match the quadrature oracle") {
    const Nse2dLayout layout = nse2d_layout(12);
    const BilinearTensor tensor = nse2d_tensor(layout);
    const int n = static_cast<int>(layout.modes.size());

    // Random triples almost never interact (the tensor is sparse), so they
    // exercise the zero entries of the quadrature oracle ...
    Rng rng(make_stream(9, StreamPurpose::tensor, 2, 0));
    for (int trial = 0; trial < 60; ++trial) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const double oracle = quad_entry(layout, j, k, l);
        const double entry = dot(tensor.apply(one_hot(n, j), one_hot(n, k)), one_hot(n, l));
        CHECK(std::abs(entry - oracle) < 1e-10);
    }

    // ... while the stored canonical entries exercise the nonzero ones.
    REQUIRE(tensor.entries.size() >= 10);
    const std::size_t stride = std::max<std::size_t>(1, tensor.entries.size() / 40);
    int nonzero = 0;
    for (std::size_t e = 0; e < tensor.entries.size(); e += stride) {
        const TensorEntry& ent = tensor.entries[e];
        const double oracle = quad_entry(layout, ent.j, ent.k, ent.l);
        CHECK(std::abs(ent.value - oracle) < 1e-10);
        if (std::abs(oracle) > 1e-8) ++nonzero;
    }
    CHECK(nonzero >= 3);
}

TEST_CASE("frozen reference entry b((1,0)cos, (0,1)cos, (1,1)sin)") {
    const Nse2dLayout layout = nse2d_layout(12);
    const BilinearTensor tensor = nse2d_tensor(layout);
    const int n = static_cast<int>(layout.modes.size());
    const int j = layout.find({1, 0}, 0);
    const int k = layout.find({0, 1}, 0);
    const int l = layout.find({1, 1}, 1);
    REQUIRE(j >= 0);
    REQUIRE(k >= 0);
    REQUIRE(l >= 0);
    const double entry = dot(tensor.apply(one_hot(n, j), one_hot(n, k)), one_hot(n, l));
    CHECK(entry == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("Taylor-Green vortex is a fixed point of the bilinearity") {
    const Nse2dLayout layout = nse2d_layout(12);
    const BilinearTensor tensor = nse2d_tensor(layout);
    const int n = static_cast<int>(layout.modes.size());
    const int i1 = layout.find({1, 1}, 1);
    const int i2 = layout.find({1, -1}, 1);
    REQUIRE(i1 >= 0);
    REQUIRE(i2 >= 0);
    Field u(static_cast<std::size_t>(n), 0.0);
    u[static_cast<std::size_t>(i1)] = -M_PI;
    u[static_cast<std::size_t>(i2)] = -M_PI;

    // Sanity: the coefficients reproduce (cos x1 sin x2, -sin x1 cos x2).
    const auto v = nse2d_eval(layout, u, 0.3, 1.1);
    CHECK(v[0] == doctest::Approx(std::cos(0.3) * std::sin(1.1)).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(-std::sin(0.3) * std::cos(1.1)).epsilon(1e-12));

    // (u . grad) u is a pure gradient, so its divergence-free projection
    // vanishes: every Galerkin coefficient cancels exactly.
    const Field bu = tensor.apply(u, u);
    for (double x : bu) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("nse2d advection conserves energy pathwise") {
    const Nse2dLayout layout = nse2d_layout(9);
    const BilinearTensor tensor = nse2d_tensor(layout);
    const int n = static_cast<int>(layout.modes.size());
    Rng rng(make_stream(9, StreamPurpose::tensor, 3, 0));
    for (int trial = 0; trial < 50; ++trial) {
        Field u(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
        for (auto& x : u) x = rng.normal();
        for (auto& x : w) x = rng.normal();
        CHECK(std::abs(dot(tensor.apply(u, w), w)) <= 1e-11 * norm_sq(w) * norm(u));
        CHECK(std::abs(dot(tensor.apply(u, u), u)) <= 1e-11 * norm_sq(u) * norm(u));
    }
}
