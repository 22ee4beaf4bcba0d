#pragma once

#include <cstddef>
#include <vector>

namespace snse {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Critical value at the 1% level: 1.6276 * sqrt((n+m)/(n m)).
double ks_critical_1pct(std::size_t n, std::size_t m);

// Energy distance between one-dimensional or multi-dimensional sample
// clouds, half convention:
//   D = E|X-Y| - (1/2)E|X-X'| - (1/2)E|Y-Y'|,
// with all-pairs (V-statistic) means, so two point masses at distance d give
// exactly d, identical clouds give exactly 0, and D >= 0 always. Rows are
// flattened points of dimension dim. Clouds larger than max_points are
// thinned with a deterministic stride.
double energy_distance(const std::vector<double>& a, const std::vector<double>& b,
                       std::size_t dim, std::size_t max_points = 2048);

double mean(const std::vector<double>& xs);
double quantile(std::vector<double> xs, double q);  // linear interpolation
double median(std::vector<double> xs);

// Batch-means standard error of the mean for a correlated sequence.
struct BatchMeans {
    double mean = 0.0;
    double se = 0.0;
    std::size_t batches = 0;
};
BatchMeans batch_means(const std::vector<double>& xs, std::size_t n_batches);

// Least-squares line y = intercept + slope * x with the usual OLS standard
// error on the slope.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    std::size_t n = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace snse
