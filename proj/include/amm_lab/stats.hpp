#pragma once

#include <cstddef>
#include <span>

namespace amm_lab {

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

/// Sample mean and standard error of the mean (n - 1 normalisation).
/// Requires at least two samples.
MeanStderr mean_stderr(std::span<const double> samples);

/// sqrt(a^2 + b^2): standard error of a difference of independent means.
double combined_stderr(double a, double b);

/// Ordinary least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace amm_lab
