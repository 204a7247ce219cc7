#include "amm_lab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace amm_lab {

MeanStderr mean_stderr(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("mean_stderr: need at least two samples");
    }
    const auto n = static_cast<double>(samples.size());
    // Welford keeps the variance accurate when the spread is tiny relative
    // to the mean.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : samples) {
        ++k;
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
    }
    const double var = m2 / (n - 1.0);
    return {mean, std::sqrt(var / n), samples.size()};
}

double combined_stderr(double a, double b) { return std::hypot(a, b); }

double ols_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("ols_slope: need two or more paired points");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("ols_slope: degenerate abscissae");
    }
    return sxy / sxx;
}

}  // namespace amm_lab
