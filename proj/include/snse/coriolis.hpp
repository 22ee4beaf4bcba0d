#pragma once

#include <vector>

#include "snse/basis.hpp"
#include "snse/field.hpp"

namespace snse {

// Skew pair: rotates the (i, j) plane at rate omega, i.e.
// (Cu)_i = -omega u_j, (Cu)_j = omega u_i.
struct SkewPair {
    int i = 0;
    int j = 0;
    double omega = 0.0;
};

struct CoriolisOperator {
    int N = 0;
    std::vector<SkewPair> pairs;
    // True when every pair couples modes with equal eigenvalue, so that
    // C commutes with A and <Cv, A^{2 delta} v> = 0 exactly.
    bool commutes_with_A = true;

    void validate(const SpectralBasis& basis);

    Field apply(const Field& u) const;

    static CoriolisOperator zero(int N);
    // Rotates consecutive equal-eigenvalue mode pairs at the given rate;
    // modes without an equal-lambda partner are left alone.
    static CoriolisOperator equal_lambda_pairs(const SpectralBasis& basis, double omega);
    static CoriolisOperator from_pairs(int N, std::vector<SkewPair> pairs,
                                       const SpectralBasis& basis);
};

}  // namespace snse
