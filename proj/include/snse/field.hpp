#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace snse {

// Galerkin coefficient vector. Everything downstream works on plain
// std::vector<double>; these helpers keep the call sites tidy.
using Field = std::vector<double>;

inline double dot(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Field& a) { return dot(a, a); }

inline double norm(const Field& a) { return std::sqrt(norm_sq(a)); }

// y += c * x
inline void axpy(double c, const Field& x, Field& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale(Field& x, double c) {
    for (double& v : x) v *= c;
}

inline Field add(const Field& a, const Field& b) {
    Field out(a);
    axpy(1.0, b, out);
    return out;
}

inline Field sub(const Field& a, const Field& b) {
    Field out(a);
    axpy(-1.0, b, out);
    return out;
}

}  // namespace snse
