#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "stdf/concentration.hpp"
#include "stdf/error.hpp"
#include "stdf/rng.hpp"
#include "stdf/stats.hpp"

using namespace stdf;

namespace {

// Candidate thresholds per axis: a regular grid plus every data breakpoint and
// points just either side of it, all in threshold units.
std::vector<double> candidates(const PseudoUniformSample& u, std::size_t j, double reach) {
    std::vector<double> c;
    for (int g = 0; g <= 50; ++g) c.push_back(reach * g / 50.0);
    for (std::size_t i = 0; i < u.n(); ++i) {
        const double b = u.values(i, j);
        if (b > reach) continue;
        for (double v : {b, b - 1e-13, b + 1e-13})
            if (v >= 0.0 && v <= reach) c.push_back(v);
    }
    return c;
}

// Brute-force sup over candidate thresholds of |weight(A_c) - mass(c)|.
template <class Weight, class Mass>
double brute_sup_2d(const PseudoUniformSample& u, double reach, Weight weight, Mass mass) {
    const auto c1 = candidates(u, 0, reach), c2 = candidates(u, 1, reach);
    double best = 0.0;
    for (double a : c1)
        for (double b : c2) best = std::max(best, std::abs(weight(a, b) - mass(a, b)));
    return best;
}

PseudoUniformSample fixed_sample(std::vector<std::vector<double>> rows) {
    PseudoUniformSample u{Matrix(rows.size(), rows.front().size())};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) u.values(i, j) = rows[i][j];
    return u;
}

} // namespace

TEST_CASE("union mass") {
    CHECK(union_mass({2, 10, 100, 1.0}, StdfModel::independence(2)) == doctest::Approx(0.19));
    CHECK(union_mass({3, 7, 100, 2.0}, StdfModel::comonotone(3)) == doctest::Approx(0.14));
    const double p = union_mass({2, 10, 100, 1.0}, StdfModel::logistic(2.0, 2));
    CHECK(p >= 0.1);
    CHECK(p <= 0.2);
    // Frequency cross-check.
    const auto u = draw_pseudo_uniforms(StdfModel::logistic(2.0, 2), 1000000, 77);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < u.n(); ++i) hits += (u.values(i, 0) < 0.1 || u.values(i, 1) < 0.1);
    const double f = static_cast<double>(hits) / 1e6;
    CHECK(std::abs(f - p) < 5 * std::sqrt(p * (1 - p) / 1e6));
    for (std::size_t d = 1; d <= 4; ++d) {
        RectClassSpec cls{d, 30, 1000, 3.0};
        CHECK(union_mass(cls, StdfModel::independence(d)) <= d * 3.0 * 30 / 1000 + 1e-15);
    }
    CHECK_THROWS_AS(union_mass({2, 500, 1000, 3.0}, StdfModel::independence(2)), DomainError);
}

TEST_CASE("exact sup equals a brute-force scan over breakpoints") {
    std::mt19937_64 eng(99);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 10 + eng() % 30, k = 1 + eng() % n;
        const double T = 0.5 + static_cast<double>(eng() % 100) / 40.0;
        RectClassSpec cls{2, k, n, std::min(T, static_cast<double>(n) / k)};
        const auto model = rep % 3 == 0 ? StdfModel::independence(2)
                           : rep % 3 == 1 ? StdfModel::comonotone(2)
                                          : StdfModel::logistic(2.5, 2);
        const auto u = draw_pseudo_uniforms(model, n, eng());
        const double reach = cls.reach();
        const auto count = [&](double a, double b) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < n; ++i) c += (u.values(i, 0) < a || u.values(i, 1) < b);
            return static_cast<double>(c) / n;
        };
        const auto mass = [&](double a, double b) { return tail_union_prob(model, std::vector<double>{a, b}); };
        const auto exact = sup_empirical_deviation(u, cls, model);
        CHECK(exact.exact);
        CHECK(exact.value == doctest::Approx(brute_sup_2d(u, reach, count, mass)).epsilon(1e-9));

        std::vector<int> sigma(n);
        auto e2 = make_engine(rep, 0, "signs");
        for (auto& s : sigma) s = rademacher(e2);
        const auto signed_sum = [&](double a, double b) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += (u.values(i, 0) < a || u.values(i, 1) < b) ? sigma[i] : 0;
            return s;
        };
        CHECK(sup_signed_sum(u, sigma, cls).value ==
              brute_sup_2d(u, reach, signed_sum, [](double, double) { return 0.0; }));
    }
}

TEST_CASE("empty-count and single-point cases") {
    const auto far = fixed_sample({{0.9, 0.8}, {0.95, 0.7}, {0.6, 0.99}});
    RectClassSpec cls{2, 1, 3, 0.3};
    const auto model = StdfModel::independence(2);
    CHECK(sup_empirical_deviation(far, cls, model).value == doctest::Approx(union_mass(cls, model)));

    const auto one = fixed_sample({{0.03}});
    RectClassSpec c1{1, 1, 1, 0.1};
    // Candidates: just below 0.03 (0.03), just above (0.97), x = T (0.9).
    CHECK(sup_empirical_deviation(one, c1, StdfModel::independence(1)).value == doctest::Approx(0.97));
}

TEST_CASE("d = 1 statistic matches the Kolmogorov-Smirnov form") {
    const std::size_t n = 5000, k = 200;
    const double T = 3.0;
    const auto u = draw_pseudo_uniforms(StdfModel::independence(1), n, 4);
    std::vector<double> v(u.values.col(0).begin(), u.values.col(0).end());
    std::sort(v.begin(), v.end());
    const double reach = T * k / n;
    double ks = 0.0;
    std::size_t below = 0;
    for (std::size_t i = 0; i < n && v[i] <= reach; ++i) {
        ks = std::max({ks, (i + 1.0) / n - v[i], v[i] - static_cast<double>(i) / n});
        below = i + 1;
    }
    ks = std::max(ks, std::abs(static_cast<double>(below) / n - reach));
    const auto stat = lemma2_statistic(u, k, T, StdfModel::independence(1));
    CHECK(stat.value == doctest::Approx(ks * n / k).epsilon(1e-12));
}

TEST_CASE("grid fallback for d >= 3") {
    const auto u = draw_pseudo_uniforms(StdfModel::logistic(2.0, 3), 200, 3);
    RectClassSpec cls{3, 20, 200, 2.0};
    CHECK_THROWS_AS(sup_empirical_deviation(u, cls, StdfModel::logistic(2.0, 3)), ConfigError);
    const auto r = sup_empirical_deviation(u, cls, StdfModel::logistic(2.0, 3), 0.05);
    CHECK_FALSE(r.exact);
    CHECK(r.slack == doctest::Approx(0.1 * 3 * 0.05));
    CHECK(r.value > 0.0);
}

TEST_CASE("bound formulas against independently computed values") {
    BoundParams p{10000, 2.0, 0.01, 0.05, 1.0};
    CHECK(theorem1_bound(p) == doctest::Approx(0.0027473200580362157).epsilon(1e-12));
    CHECK(remark2_bound(p) == doctest::Approx(0.0024477468306808164).epsilon(1e-12));
    CHECK(remark1_bound(p) == doctest::Approx(0.00996046331826512).epsilon(1e-12));

    BoundParams zero{500, 2.0, 0.0, 0.1, 3.0};
    CHECK(theorem1_bound(zero) == doctest::Approx(3.0 * std::log(10.0) / 500));
    BoundParams near_one{500, 2.0, 0.3, 1.0 - 1e-12, 1.0};
    CHECK(theorem1_bound(near_one) < 1e-6);

    const double np = 4.0;
    BoundParams edge{400, 3.0, 0.01, std::exp(-np), 2.0};
    CHECK(remark2_bound(edge) == doctest::Approx(2.0 * 0.01 * std::sqrt(3.0)));
    BoundParams too_small{400, 3.0, 0.01, std::exp(-np) / 2, 2.0};
    CHECK_THROWS_AS(remark2_bound(too_small), PreconditionError);

    BoundParams sauer{3, 1.0, 0.2, 0.05, 1.0};
    CHECK(remark1_bound(sauer) ==
          doctest::Approx(2 * std::sqrt(0.2) * std::sqrt((std::log(6 * std::exp(1.0)) + std::log(80.0)) / 3)));
    CHECK_THROWS_AS(remark1_bound(BoundParams{2, 3.0, 0.2, 0.05, 1.0}), DomainError);

    double last = 0.0;
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
        BoundParams q{n, 2.0, 0.01, 0.05, 1.0};
        const double ratio = remark1_bound(q) / theorem1_bound(q);
        CHECK(ratio > last);
        last = ratio;
    }
}

TEST_CASE("remark 2 never exceeds theorem 1 where it applies") {
    std::mt19937_64 eng(12);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 2000; ++rep) {
        BoundParams p{1 + eng() % 100000, 1.0 + 5 * unif(eng), unif(eng), 0.001 + 0.998 * unif(eng), 0.1 + unif(eng)};
        if (p.delta < std::exp(-static_cast<double>(p.n) * p.p)) continue;
        CHECK(remark2_bound(p) <= theorem1_bound(p));
    }
}

TEST_CASE("relative Rademacher average") {
    RectClassSpec single{1, 1, 1, 0.3};
    const auto est = relative_rademacher(StdfModel::independence(1), single, 20000, 8);
    CHECK(est.p == doctest::Approx(0.3));
    CHECK(std::abs(est.mean - 1.0) < 5 * est.std_error);

    RectClassSpec empty{2, 10, 100, 0.0};
    CHECK(relative_rademacher(StdfModel::independence(2), empty, 5, 1).mean == 0.0);

    RectClassSpec cls{2, 20, 400, 2.0};
    const auto a = relative_rademacher(StdfModel::logistic(2.0, 2), cls, 16, 3, 1);
    const auto b = relative_rademacher(StdfModel::logistic(2.0, 2), cls, 16, 3, 4);
    CHECK(a.values == b.values);
    CHECK(a.mean == b.mean);

    CHECK_THROWS_AS(relative_rademacher(StdfModel::independence(2), cls, 1, 3), ConfigError);
    CHECK_THROWS_AS(relative_rademacher(StdfModel::independence(3), RectClassSpec{3, 20, 400, 2.0}, 5, 3),
                    ConfigError);
}

TEST_CASE("class complexity q") {
    for (std::size_t d : {1u, 2u}) {
        for (auto model : {StdfModel::independence(d), StdfModel::comonotone(d), StdfModel::logistic(2.0, d)}) {
            RectClassSpec cls{d, 10, 100, 1.0};
            const double p = union_mass(cls, model);
            CHECK(class_complexity_q(model, cls, 2000, 1, true).mean == 0.0);
            const auto q = class_complexity_q(model, cls, 100000, 2);
            CHECK(q.mean <= 2 * p + 3 * q.std_error);
            if (d == 1) CHECK(std::abs(q.mean - (2 * p - p * p)) < 5 * q.std_error);
        }
    }
    RectClassSpec tiny{2, 1, 100000, 1e-3};
    CHECK(class_complexity_q(StdfModel::independence(2), tiny, 10000, 5).mean < 1e-3);
    CHECK(separated(std::vector<double>{0.01, 0.5}, std::vector<double>{0.2, 0.5}, 0.1));
    CHECK_FALSE(separated(std::vector<double>{0.3, 0.5}, std::vector<double>{0.2, 0.5}, 0.1));
}

TEST_CASE("theorem 1 coverage with a calibrated constant") {
    const auto model = StdfModel::independence(2);
    RectClassSpec cls{2, 100, 2000, 2.0};
    const double p = union_mass(cls, model);
    const BoundParams unit{cls.n, 2.0, p, 0.05, 1.0};
    const double shape = theorem1_bound(unit);
    auto run = [&](std::uint64_t seed, std::size_t trials) {
        std::vector<double> stat(trials);
        for (std::size_t t = 0; t < trials; ++t)
            stat[t] = sup_empirical_deviation(draw_pseudo_uniforms(model, cls.n, derive_seed(seed, t, "cov")), cls, model).value;
        return stat;
    };
    const auto pilot = run(1, 100);
    const std::vector<double> shapes(500, shape);
    const double C = calibrate_constant(pilot, std::span<const double>(shapes).first(100));
    CHECK(coverage(run(2, 500), shapes, C) >= 0.95);
}
