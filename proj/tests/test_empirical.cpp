#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "stdf/empirical.hpp"
#include "stdf/error.hpp"
#include "stdf/samplers.hpp"

using namespace stdf;

namespace {

Sample draw(StdfModel model, std::size_t n, std::uint64_t seed, std::vector<Margin> margins = {}) {
    GeneratorSpec s;
    s.model = model;
    s.n = n;
    s.seed = seed;
    s.margins = std::move(margins);
    return generate(s);
}

// Direct reading of the estimator on raw values: row i counts when some
// X_i^j reaches the (n - m_j + 1)-th smallest value of its column.
std::size_t brute_count(const Sample& s, std::span<const std::size_t> m) {
    const std::size_t n = s.n();
    std::vector<double> thr(s.d(), std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < s.d(); ++j) {
        if (m[j] == 0) continue;
        auto c = s.values.col(j);
        std::vector<double> sorted(c.begin(), c.end());
        std::sort(sorted.begin(), sorted.end());
        thr[j] = sorted[n - m[j]];
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool hit = false;
        for (std::size_t j = 0; j < s.d(); ++j) hit = hit || s.values(i, j) >= thr[j];
        count += hit;
    }
    return count;
}

} // namespace

TEST_CASE("ranks and order statistics") {
    Sample s{Matrix(4, 1), "t"};
    const double v[] = {0.3, -1.0, 7.0, 2.0};
    for (int i = 0; i < 4; ++i) s.values(i, 0) = v[i];
    const auto r = build_ranks(s);
    CHECK(r.ranks[0] == std::vector<std::uint32_t>{2, 1, 4, 3});
    CHECK(r.order_stats[0] == std::vector<double>{-1.0, 0.3, 2.0, 7.0});
    CHECK(r.row_of[0] == std::vector<std::uint32_t>{1, 0, 3, 2});
}

TEST_CASE("ties name the column and rows") {
    Sample s{Matrix(3, 2), "t"};
    s.values(0, 0) = 1; s.values(1, 0) = 2; s.values(2, 0) = 3;
    s.values(0, 1) = 5; s.values(1, 1) = 4; s.values(2, 1) = 5;
    try {
        build_ranks(s);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("column 2") != std::string::npos);
        CHECK(msg.find("rows 1 and 3") != std::string::npos);
    }
}

TEST_CASE("lattice index snaps exact fractions") {
    for (std::size_t k = 1; k <= 300; ++k)
        for (std::size_t m = 0; m <= 3 * k; ++m) CHECK(lattice_index(k, static_cast<double>(m) / k) == m);
    CHECK(lattice_index(10, 0.35) == 3);
    CHECK_THROWS_AS(lattice_index(10, -0.1), DomainError);
}

TEST_CASE("estimator agrees with a direct count on raw values") {
    std::mt19937_64 eng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t d = 1 + rep % 3, n = 5 + eng() % 40;
        const auto s = draw(StdfModel::logistic(2.0, d), n, eng());
        const auto ranks = build_ranks(s);
        std::vector<std::size_t> m(d);
        for (auto& v : m) v = eng() % (n + 1);
        CHECK(empirical_stdf_count(ranks, m) == brute_count(s, m));
    }
}

TEST_CASE("Lemma 1 identity holds exactly") {
    std::mt19937_64 eng(5);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t d = 1 + rep % 3, n = 2 + eng() % 49, k = 1 + eng() % n;
        const auto model = rep % 2 ? StdfModel::independence(d) : StdfModel::logistic(3.0, d);
        const auto s = draw(model, n, eng());
        const auto ranks = build_ranks(s);
        const auto u = standardize(s, std::vector<Margin>(d, Margin::uniform()));
        std::vector<double> x(d);
        for (auto& v : x) v = static_cast<double>(eng() % (n + 1)) / static_cast<double>(k);
        std::vector<std::size_t> m(d);
        for (std::size_t j = 0; j < d; ++j) m[j] = lattice_index(k, x[j]);
        if (*std::max_element(m.begin(), m.end()) > n) continue;
        CHECK(empirical_stdf_count(ranks, m) == lemma1_count(u, m));
        CHECK(empirical_stdf(ranks, k, x) == lemma1_rhs(ranks, u, k, x));
    }
}

TEST_CASE("sandwich, monotonicity and margin invariance") {
    std::mt19937_64 eng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + rep % 2, n = 60, k = 12;
        const auto seed = eng();
        const auto base = draw(StdfModel::logistic(1.5, d), n, seed);
        const auto other = draw(StdfModel::logistic(1.5, d), n, seed,
                                std::vector<Margin>(d, Margin::pareto(1.5)));
        const auto r = build_ranks(base), r2 = build_ranks(other);
        std::vector<std::size_t> m(d);
        for (auto& v : m) v = eng() % (n / 2);
        const std::size_t c = empirical_stdf_count(r, m);
        CHECK(c >= *std::max_element(m.begin(), m.end()));
        std::size_t sum = 0;
        for (auto v : m) sum += v;
        CHECK(c <= sum);
        CHECK(c == empirical_stdf_count(r2, m));
        auto up = m;
        up[rep % d] += 1;
        CHECK(empirical_stdf_count(r, up) >= c);
        (void)k;
    }
}

TEST_CASE("comonotone data give max floor(k x)/k") {
    const auto s = draw(StdfModel::comonotone(2), 500, 3);
    const auto r = build_ranks(s);
    const std::size_t k = 25;
    for (double a = 0; a <= 4.0; a += 0.13)
        for (double b = 0; b <= 4.0; b += 0.17) {
            const std::vector<double> x{a, b};
            const double expect = static_cast<double>(std::max(lattice_index(k, a), lattice_index(k, b))) / k;
            CHECK(empirical_stdf(r, k, x) == expect);
        }
    CHECK(empirical_stdf(r, k, std::vector<double>{0.0, 0.0}) == 0.0);
}

TEST_CASE("domain errors") {
    const auto s = draw(StdfModel::independence(2), 20, 1);
    const auto r = build_ranks(s);
    CHECK_THROWS_AS(empirical_stdf(r, 5, std::vector<double>{4.5, 0.0}), DomainError);
    CHECK_THROWS_AS(empirical_stdf(r, 0, std::vector<double>{0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(empirical_stdf(r, 21, std::vector<double>{0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(empirical_stdf(r, 5, std::vector<double>{0.1}), DomainError);
}

TEST_CASE("two-dimensional sweep matches pointwise counts") {
    const auto s = draw(StdfModel::logistic(2.0, 2), 300, 4);
    const auto r = build_ranks(s);
    sweep_lattice_2d(r, 40, 35, [&](std::size_t m1, std::span<const std::uint32_t> counts) {
        for (std::size_t m2 = 0; m2 < counts.size(); ++m2) {
            const std::vector<std::size_t> m{m1, m2};
            CHECK(counts[m2] == empirical_stdf_count(r, m));
        }
    });
}

TEST_CASE("F~_n counts rows below some threshold") {
    PseudoUniformSample u{Matrix(3, 2)};
    u.values(0, 0) = 0.1; u.values(0, 1) = 0.9;
    u.values(1, 0) = 0.5; u.values(1, 1) = 0.2;
    u.values(2, 0) = 0.7; u.values(2, 1) = 0.8;
    CHECK(empirical_tilde_F_count(u, std::vector<double>{0.1, 0.2}) == 2);
    CHECK(empirical_tilde_F(u, std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(empirical_tilde_F(u, std::vector<double>{1.0, 0.0}) == 1.0);
}
