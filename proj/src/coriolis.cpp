#include "snse/coriolis.hpp"

#include "snse/errors.hpp"

namespace snse {

void CoriolisOperator::validate(const SpectralBasis& basis) {
    if (N != basis.N) throw ParamError("Coriolis dimension must match basis");
    commutes_with_A = true;
    for (const auto& p : pairs) {
        if (p.i < 0 || p.i >= N || p.j < 0 || p.j >= N || p.i == p.j)
            throw ParamError("Coriolis pair indices must be distinct and in range");
        if (basis.lambda[static_cast<std::size_t>(p.i)] !=
            basis.lambda[static_cast<std::size_t>(p.j)])
            commutes_with_A = false;
    }
}

Field CoriolisOperator::apply(const Field& u) const {
    Field out(u.size(), 0.0);
    for (const auto& p : pairs) {
        out[static_cast<std::size_t>(p.i)] -= p.omega * u[static_cast<std::size_t>(p.j)];
        out[static_cast<std::size_t>(p.j)] += p.omega * u[static_cast<std::size_t>(p.i)];
    }
    return out;
}

CoriolisOperator CoriolisOperator::zero(int N) {
    CoriolisOperator c;
    c.N = N;
    return c;
}

CoriolisOperator CoriolisOperator::equal_lambda_pairs(const SpectralBasis& basis, double omega) {
    CoriolisOperator c;
    c.N = basis.N;
    for (int l = 0; l + 1 < basis.N;) {
        if (basis.lambda[static_cast<std::size_t>(l)] ==
            basis.lambda[static_cast<std::size_t>(l + 1)]) {
            c.pairs.push_back({l, l + 1, omega});
            l += 2;
        } else {
            ++l;
        }
    }
    c.validate(basis);
    return c;
}

CoriolisOperator CoriolisOperator::from_pairs(int N, std::vector<SkewPair> pairs,
                                              const SpectralBasis& basis) {
    CoriolisOperator c;
    c.N = N;
    c.pairs = std::move(pairs);
    c.validate(basis);
    return c;
}

}  // namespace snse
