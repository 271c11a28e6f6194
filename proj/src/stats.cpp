#include "stdf/stats.hpp"

#include <algorithm>
#include <cmath>

#include "stdf/error.hpp"

namespace stdf {

double mean(std::span<const double> v) {
    if (v.empty()) throw DomainError("mean of an empty set");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double std_error(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

double quantile(std::span<const double> v, double level) {
    if (v.empty()) throw DomainError("quantile of an empty set");
    if (!(level >= 0.0 && level <= 1.0)) throw DomainError("quantile level must lie in [0,1]");
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    const double h = level * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double median(std::span<const double> v) { return quantile(v, 0.5); }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        rss += r * r;
    }
    f.slope_stderr = x.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
    f.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    return f;
}

LineFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw DomainError("log-log fit needs positive abscissae");
        lx[i] = std::log(x[i]);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw DomainError("log-log fit needs positive ordinates");
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

double calibrate_constant(std::span<const double> statistic, std::span<const double> shape) {
    if (statistic.size() != shape.size() || statistic.empty())
        throw DomainError("calibration needs paired, nonempty pilot data");
    double c = 0.0;
    for (std::size_t i = 0; i < statistic.size(); ++i) {
        if (!(shape[i] > 0.0)) throw DomainError("calibration shape must be positive");
        c = std::max(c, statistic[i] / shape[i]);
    }
    return c;
}

double coverage(std::span<const double> statistic, std::span<const double> shape, double C) {
    if (statistic.size() != shape.size() || statistic.empty())
        throw DomainError("coverage needs paired, nonempty data");
    std::size_t ok = 0;
    for (std::size_t i = 0; i < statistic.size(); ++i)
        if (statistic[i] <= C * shape[i]) ++ok;
    return static_cast<double>(ok) / static_cast<double>(statistic.size());
}

} // namespace stdf
