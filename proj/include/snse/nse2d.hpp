#pragma once

#include <array>
#include <vector>

#include "snse/basis.hpp"
#include "snse/tensor.hpp"

namespace snse {

// 2D incompressible NSE on the periodic box [0,2pi]^2, velocity form.
// Real divergence-free basis, one cos and one sin mode per wavevector a in
// the closed half-plane (a1 > 0, or a1 == 0 and a2 > 0):
//
//   e_{a,cos}(x) = (a_perp/|a|) cos(a.x) / (pi sqrt(2)),   a_perp = (-a2, a1)
//   e_{a,sin}(x) = (a_perp/|a|) sin(a.x) / (pi sqrt(2))
//
// both unit-norm in L^2, eigenvalue lambda = |a|^2. Modes are ordered by
// (|a|^2, a1, a2, trig) so lambda is nondecreasing and the m noise modes sit
// in the lowest shell(s).
struct Nse2dLayout {
    struct Mode {
        std::array<int, 2> a{};
        int trig = 0;  // 0 = cos, 1 = sin
    };
    int grid = 16;
    int kmax = 5;  // 2/3-rule truncation: |a1|,|a2| <= floor(grid/3)
    std::vector<Mode> modes;

    int find(const std::array<int, 2>& a, int trig) const;  // -1 when absent
};

Nse2dLayout nse2d_layout(int grid);

SpectralBasis nse2d_basis(const Nse2dLayout& layout, int m);

// b(e_j, e_k, e_l) = integral of ((e_j . grad) e_k) . e_l over the box,
// assembled exactly from the trig product-to-sum expansion (no quadrature,
// no aliasing). Entries are stored antisymmetrized in (k, l).
BilinearTensor nse2d_tensor(const Nse2dLayout& layout);

// Point evaluation of a coefficient vector as a velocity field, for test
// oracles that integrate in physical space.
std::array<double, 2> nse2d_eval(const Nse2dLayout& layout, const Field& u,
                                 double x1, double x2);

}  // namespace snse
