#pragma once

#include <string>
#include <vector>

#include "snse/field.hpp"

namespace snse {

// Diagonalized Stokes operator: the basis is identified with its eigenvalue
// list. lambda must be positive and nondecreasing; m <= N modes carry noise.
struct SpectralBasis {
    int N = 0;
    int m = 0;
    std::vector<double> lambda;

    void validate() const;

    double lambda1() const { return lambda.front(); }

    // lambda_l = l(l+1), l = 1..N (spherical Laplacian spacing).
    static SpectralBasis sphere_like(int N, int m);
    // Sorted |k|^2 over integer wavevectors on the unit torus (k != 0),
    // one mode per lattice point in a half-plane, truncated to N.
    static SpectralBasis torus_like(int N, int m);
    static SpectralBasis explicit_list(std::vector<double> lambda, int m);

    static SpectralBasis from_rule(const std::string& rule, int N, int m);
};

// (A u)_l = lambda_l u_l
Field apply_A(const SpectralBasis& basis, const Field& u);

// (A^delta u)_l = lambda_l^delta u_l, delta in [0, 1]
Field apply_frac_A(const SpectralBasis& basis, const Field& u, double delta);

struct FieldNorms {
    double h = 0.0;     // |u|
    double v = 0.0;     // |u|_V = |A^{1/2} u|
    double frac = 0.0;  // |A^delta u|
};

FieldNorms norms(const SpectralBasis& basis, const Field& u, double delta);

inline double norm_h(const Field& u) { return norm(u); }
double norm_v_sq(const SpectralBasis& basis, const Field& u);
double norm_frac_sq(const SpectralBasis& basis, const Field& u, double delta);

}  // namespace snse
