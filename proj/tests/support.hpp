#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace testing {

// Asymptotic Kolmogorov tail P(sqrt(n) D_n > t).
inline double kolmogorov_q(double t) {
    if (t < 0.2) return 1.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) s += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * t * t);
    return std::clamp(s, 0.0, 1.0);
}

// One-sample KS statistic of `x` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> x, Cdf cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

template <class Cdf>
double ks_pvalue(const std::vector<double>& x, Cdf cdf) {
    return kolmogorov_q(std::sqrt(static_cast<double>(x.size())) * ks_statistic(x, cdf));
}

} // namespace testing
