#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stdf {

double mean(std::span<const double> v);
/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double stddev(std::span<const double> v);
/// Standard error of the mean.
double std_error(std::span<const double> v);

/// Linear-interpolation quantile (Hyndman-Fan type 7), level in [0,1].
double quantile(std::span<const double> v, double level);
double median(std::span<const double> v);

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log(y) against log(x); all values must be positive.
LineFit fit_log_log(std::span<const double> x, std::span<const double> y);

/// Smallest C with statistic[i] <= C * shape[i] for every pilot trial.
double calibrate_constant(std::span<const double> statistic, std::span<const double> shape);

/// Fraction of trials with statistic[i] <= C * shape[i].
double coverage(std::span<const double> statistic, std::span<const double> shape, double C);

} // namespace stdf
