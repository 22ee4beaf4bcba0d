#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snse/basis.hpp"
#include "snse/field.hpp"
#include "snse/rng.hpp"

namespace snse {

// One canonical trilinear entry b(e_j, e_k, e_l) = value with k < l; the
// mirrored entry b(e_j, e_l, e_k) = -value is implied, which is what makes
// <B(u,v),v> = 0 exact rather than approximate.
struct TensorEntry {
    int j = 0;
    int k = 0;  // k < l always
    int l = 0;
    double value = 0.0;
};

struct BilinearTensor {
    std::string backend = "abstract";
    int N = 0;
    std::vector<TensorEntry> entries;

    void validate() const;

    // out_l = sum_{j,k} b_{jkl} u_j v_k; expands each canonical entry into
    // its antisymmetric pair.
    Field apply(const Field& u, const Field& v) const;

    // Adds an entry, folding (j,k,l) with k > l into the canonical k < l
    // slot with flipped sign. Entries with k == l are dropped (they would
    // break antisymmetry and contribute nothing admissible).
    void add(int j, int k, int l, double value);
    void compress();  // merge duplicate (j,k,l) keys, drop exact zeros

    static BilinearTensor zero(int N);
    // Random sparse tensor: `fill` entries drawn with Rng over index triples
    // and signed magnitudes in [-1,1]; duplicates merge.
    static BilinearTensor random_sparse(int N, int fill, Rng& rng);
};

struct EtaEstimate {
    double certified = 0.0;     // analytic upper bound on sup |<B(u,e_l),u>| / |u|^2
    double sampled_lower = 0.0; // Monte-Carlo lower bound over random unit fields
};

// Certified bound per noise direction e_l: <B(u,e_l),u> = u^T M u with
// M_{jr} = b_{j,l,r}; |u^T M u| <= min(||sym(M)||_F, ||sym(M)||_1) |u|^2.
// The returned certified value is the max over l = 1..m and always
// dominates the sampled lower bound.
EtaEstimate estimate_eta(const SpectralBasis& basis, const BilinearTensor& tensor,
                         int trials, Rng& rng);

// Smallest constant c with |<B(u,v),w>| <= c |u|^{1/2}|u|_V^{1/2}
// |v|^{1/2}|v|_V^{1/2} |w|_V over `trials` random triples.
double fit_bilinear_constant(const SpectralBasis& basis, const BilinearTensor& tensor,
                             int trials, Rng& rng);

}  // namespace snse
