#include "snse/nse2d.hpp"

#include <algorithm>
#include <cmath>

#include "snse/errors.hpp"

namespace snse {

namespace {

bool in_half_plane(const std::array<int, 2>& a) {
    return a[0] > 0 || (a[0] == 0 && a[1] > 0);
}

double cross2(const std::array<int, 2>& a, const std::array<int, 2>& b) {
    return static_cast<double>(a[0]) * b[1] - static_cast<double>(a[1]) * b[0];
}

double dot2(const std::array<int, 2>& a, const std::array<int, 2>& b) {
    return static_cast<double>(a[0]) * b[0] + static_cast<double>(a[1]) * b[1];
}

double abs2(const std::array<int, 2>& a) { return dot2(a, a); }

}  // namespace

int Nse2dLayout::find(const std::array<int, 2>& a, int trig) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].a == a && modes[i].trig == trig) return static_cast<int>(i);
    return -1;
}

Nse2dLayout nse2d_layout(int grid) {
    if (grid < 6) throw ParamError("nse2d grid must be >= 6 (kmax = grid/3 >= 2)");
    Nse2dLayout layout;
    layout.grid = grid;
    layout.kmax = grid / 3;

    std::vector<std::array<int, 2>> vecs;
    for (int a1 = -layout.kmax; a1 <= layout.kmax; ++a1)
        for (int a2 = -layout.kmax; a2 <= layout.kmax; ++a2) {
            const std::array<int, 2> a{a1, a2};
            if (in_half_plane(a)) vecs.push_back(a);
        }
    std::sort(vecs.begin(), vecs.end(), [](const auto& a, const auto& b) {
        const double la = abs2(a), lb = abs2(b);
        if (la != lb) return la < lb;
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    for (const auto& a : vecs) {
        layout.modes.push_back({a, 0});
        layout.modes.push_back({a, 1});
    }
    return layout;
}

SpectralBasis nse2d_basis(const Nse2dLayout& layout, int m) {
    std::vector<double> lambda;
    lambda.reserve(layout.modes.size());
    for (const auto& mode : layout.modes) lambda.push_back(abs2(mode.a));
    return SpectralBasis::explicit_list(std::move(lambda), m);
}

BilinearTensor nse2d_tensor(const Nse2dLayout& layout) {
    const int N = static_cast<int>(layout.modes.size());
    BilinearTensor t;
    t.backend = "nse2d";
    t.N = N;

    // (e_j . grad) e_k for j = (a, s), k = (b, t):
    //   prefactor * phi_s(a.x) * phi_t'(b.x) * b_perp,
    //   prefactor = cross(a, b) / (|a||b| * 2 pi^2).
    // The trig product expands as kappa_plus * trig(a+b) + kappa_minus *
    // trig(a-b); pairing with e_l = (c_perp/|c|) phi_r(c.x)/(pi sqrt 2)
    // contributes (b.c)/|c| * kappa * (+-2 pi^2) / (pi sqrt 2) whenever the
    // expansion wavevector equals +-c and the trig types agree.
    struct Term {
        std::array<int, 2> d;
        int trig;     // 0 = cos, 1 = sin
        double coef;  // kappa
    };

    for (int j = 0; j < N; ++j) {
        const auto& mj = layout.modes[static_cast<std::size_t>(j)];
        for (int k = 0; k < N; ++k) {
            const auto& mk = layout.modes[static_cast<std::size_t>(k)];
            const double cr = cross2(mj.a, mk.a);
            if (cr == 0.0) continue;  // parallel wavevectors do not interact
            const double pref =
                cr / (std::sqrt(abs2(mj.a)) * std::sqrt(abs2(mk.a)) * 2.0 * M_PI * M_PI);

            // phi_t' : cos -> -sin, sin -> cos. Write the product
            // phi_s(A) * phi_t'(B) as sum over (A+B, A-B) trig terms.
            // With A = a.x, B = b.x:
            //   cos A cos B = (cos(A-B) + cos(A+B))/2
            //   sin A sin B = (cos(A-B) - cos(A+B))/2
            //   sin A cos B = (sin(A+B) + sin(A-B))/2
            //   cos A sin B = (sin(A+B) - sin(A-B))/2
            const std::array<int, 2> sum{mj.a[0] + mk.a[0], mj.a[1] + mk.a[1]};
            const std::array<int, 2> dif{mj.a[0] - mk.a[0], mj.a[1] - mk.a[1]};
            std::vector<Term> terms;
            if (mj.trig == 0 && mk.trig == 0) {
                // cos A * (-sin B) = -(sin(A+B) - sin(A-B))/2
                terms.push_back({sum, 1, -0.5});
                terms.push_back({dif, 1, 0.5});
            } else if (mj.trig == 0 && mk.trig == 1) {
                // cos A * cos B
                terms.push_back({sum, 0, 0.5});
                terms.push_back({dif, 0, 0.5});
            } else if (mj.trig == 1 && mk.trig == 0) {
                // sin A * (-sin B) = -(cos(A-B) - cos(A+B))/2
                terms.push_back({sum, 0, 0.5});
                terms.push_back({dif, 0, -0.5});
            } else {
                // sin A * cos B
                terms.push_back({sum, 1, 0.5});
                terms.push_back({dif, 1, 0.5});
            }

            for (const auto& term : terms) {
                std::array<int, 2> d = term.d;
                double coef = term.coef;
                if (d[0] == 0 && d[1] == 0) continue;  // mean mode integrates away
                if (!in_half_plane(d)) {
                    d = {-d[0], -d[1]};
                    if (term.trig == 1) coef = -coef;  // sin is odd, cos even
                }
                const int l = layout.find(d, term.trig);
                if (l < 0) continue;  // dealiased away by the truncation
                const auto& ml = layout.modes[static_cast<std::size_t>(l)];
                const double val = pref * coef * dot2(mk.a, ml.a) /
                                   std::sqrt(abs2(ml.a)) * (2.0 * M_PI * M_PI) /
                                   (M_PI * std::sqrt(2.0));
                // The exact integrals already satisfy b_{jkl} = -b_{jlk};
                // store half from this (k, l) ordering and let the (l, k)
                // pass contribute the mirrored half, so any residual
                // asymmetry from the truncation is averaged out.
                t.add(j, k, l, 0.5 * val);
            }
        }
    }
    t.compress();
    t.validate();
    return t;
}

std::array<double, 2> nse2d_eval(const Nse2dLayout& layout, const Field& u,
                                 double x1, double x2) {
    std::array<double, 2> out{0.0, 0.0};
    for (std::size_t i = 0; i < layout.modes.size() && i < u.size(); ++i) {
        const auto& mode = layout.modes[i];
        if (u[i] == 0.0) continue;
        const double phase = mode.a[0] * x1 + mode.a[1] * x2;
        const double wave = mode.trig == 0 ? std::cos(phase) : std::sin(phase);
        const double nrm = std::sqrt(abs2(mode.a)) * M_PI * std::sqrt(2.0);
        out[0] += u[i] * (-mode.a[1]) / nrm * wave;
        out[1] += u[i] * (mode.a[0]) / nrm * wave;
    }
    return out;
}

}  // namespace snse
