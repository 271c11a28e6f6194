#include "doctest.h"

#include <cmath>

#include "stdf/stats.hpp"

using namespace stdf;

TEST_CASE("summary statistics against reference values") {
    const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6};
    CHECK(mean(v) == doctest::Approx(3.875));
    CHECK(stddev(v) == doctest::Approx(2.748376143938713));
    CHECK(std_error(v) == doctest::Approx(2.748376143938713 / std::sqrt(8.0)));
    CHECK(quantile(v, 0.3) == doctest::Approx(2.1));
    CHECK(quantile(v, 0.95) == doctest::Approx(7.95));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 9.0);
    CHECK(median(v) == 3.5);
    CHECK(stddev(std::vector<double>{2.0}) == 0.0);
}

TEST_CASE("least squares against reference values") {
    const std::vector<double> x{1, 2, 3, 4, 5.5}, y{2.1, 3.9, 6.2, 7.8, 11.1};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(1.995081967213115));
    CHECK(f.intercept == doctest::Approx(0.03524590163934427));
    CHECK(f.slope_stderr == doctest::Approx(0.05424718723860368));
    CHECK(f.r_squared == doctest::Approx(0.9977869458775215));
}

TEST_CASE("log-log fit recovers a power law") {
    std::vector<double> x, y;
    for (double k : {50.0, 100.0, 200.0, 400.0}) {
        x.push_back(k);
        y.push_back(3.0 * std::pow(k, -0.5));
    }
    const auto f = fit_log_log(x, y);
    CHECK(f.slope == doctest::Approx(-0.5));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)));
}

TEST_CASE("calibration gives full pilot coverage") {
    const std::vector<double> stat{1.0, 2.0, 0.5, 3.0}, shape{1.0, 1.0, 1.0, 2.0};
    const double C = calibrate_constant(stat, shape);
    CHECK(C == 2.0);
    CHECK(coverage(stat, shape, C) == 1.0);
    CHECK(coverage(stat, shape, 1.0) == 0.5);
}
