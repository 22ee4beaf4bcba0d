#include "snse/stats.hpp"

#include <algorithm>
#include <cmath>

#include "snse/constants.hpp"
#include "snse/errors.hpp"

namespace snse {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DiagnosticError("ks_two_sample needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        // advance both samples past the current support point so ties are
        // compared after the full jump, not mid-jump
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return constants::kKs01Coeff * std::sqrt((nn + mm) / (nn * mm));
}

namespace {

double point_dist(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return std::sqrt(s);
}

// Deterministic thinning to at most max_points rows.
std::vector<double> thin(const std::vector<double>& xs, std::size_t dim,
                         std::size_t max_points) {
    const std::size_t n = xs.size() / dim;
    if (n <= max_points) return xs;
    const std::size_t stride = (n + max_points - 1) / max_points;
    std::vector<double> out;
    out.reserve(((n / stride) + 1) * dim);
    for (std::size_t i = 0; i < n; i += stride)
        out.insert(out.end(), xs.begin() + static_cast<std::ptrdiff_t>(i * dim),
                   xs.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
    return out;
}

double mean_cross_dist(const std::vector<double>& a, const std::vector<double>& b,
                       std::size_t dim) {
    const std::size_t na = a.size() / dim, nb = b.size() / dim;
    double s = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            s += point_dist(&a[i * dim], &b[j * dim], dim);
    return s / (static_cast<double>(na) * static_cast<double>(nb));
}

// All-pairs mean including the zero diagonal (V-statistic), so that the
// distance between a cloud and itself is exactly zero.
double mean_self_dist(const std::vector<double>& a, std::size_t dim) {
    const std::size_t n = a.size() / dim;
    if (n < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            s += point_dist(&a[i * dim], &a[j * dim], dim);
    return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace

double energy_distance(const std::vector<double>& a, const std::vector<double>& b,
                       std::size_t dim, std::size_t max_points) {
    if (dim == 0 || a.size() % dim != 0 || b.size() % dim != 0)
        throw DiagnosticError("energy_distance: sample size not a multiple of dim");
    if (a.empty() || b.empty())
        throw DiagnosticError("energy_distance needs nonempty clouds");
    const std::vector<double> at = thin(a, dim, max_points);
    const std::vector<double> bt = thin(b, dim, max_points);
    return mean_cross_dist(at, bt, dim) - 0.5 * mean_self_dist(at, dim) -
           0.5 * mean_self_dist(bt, dim);
}

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw DiagnosticError("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw DiagnosticError("quantile of empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ParamError("quantile level must be in [0,1]");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

BatchMeans batch_means(const std::vector<double>& xs, std::size_t n_batches) {
    if (n_batches < 2) throw ParamError("batch_means needs >= 2 batches");
    if (xs.size() < 2 * n_batches)
        throw DiagnosticError("batch_means: sequence too short for requested batches");
    const std::size_t len = xs.size() / n_batches;
    std::vector<double> bm(n_batches, 0.0);
    for (std::size_t b = 0; b < n_batches; ++b) {
        double s = 0.0;
        for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += xs[i];
        bm[b] = s / static_cast<double>(len);
    }
    BatchMeans out;
    out.batches = n_batches;
    out.mean = mean(bm);
    double var = 0.0;
    for (double v : bm) var += (v - out.mean) * (v - out.mean);
    var /= static_cast<double>(n_batches - 1);
    out.se = std::sqrt(var / static_cast<double>(n_batches));
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw DiagnosticError("fit_line needs >= 3 matched points");
    const std::size_t n = x.size();
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DiagnosticError("fit_line: degenerate abscissae");
    LineFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    const double sigma2 = ss_res / static_cast<double>(n - 2);
    f.slope_se = std::sqrt(sigma2 / sxx);
    return f;
}

}  // namespace snse
