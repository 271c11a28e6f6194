#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stdf/classification.hpp"
#include "stdf/error.hpp"
#include "stdf/rng.hpp"
#include "stdf/stats.hpp"

using namespace stdf;

namespace {

// Ten points on the first axis with distinct norms 1..10.
LabeledSample ten_points(int label) {
    LabeledSample s{Matrix(10, 2), std::vector<int>(10, label)};
    for (int i = 0; i < 10; ++i) s.features(i, 0) = i + 1.0;
    return s;
}

const AxisClassifier kAlwaysPlus{0, -1e300, 1};

ClassifierFamily twenty(double t) {
    const std::vector<std::size_t> c{0, 1};
    const std::vector<double> taus{-t, -t / 2, 0.0, t / 2, t};
    return axis_threshold_family(c, taus, 2.0);
}

// Independent oracle: sort by norm, take the rows beyond the m-th largest, count errors.
double brute_risk(const LabeledSample& s, const AxisClassifier& g, double alpha) {
    std::vector<std::pair<double, std::size_t>> by_norm;
    for (std::size_t i = 0; i < s.n(); ++i)
        by_norm.push_back({std::hypot(s.features(i, 0), s.features(i, 1)), i});
    std::sort(by_norm.rbegin(), by_norm.rend());
    const auto m = static_cast<std::size_t>(std::floor(s.n() * alpha + 1e-9));
    const double thr = by_norm[m - 1].first;
    std::size_t err = 0;
    for (auto [nrm, i] : by_norm) {
        const std::vector<double> x{s.features(i, 0), s.features(i, 1)};
        if (nrm > thr && g(x) != s.labels[i]) ++err;
    }
    return err / (s.n() * alpha);
}

} // namespace

TEST_CASE("empirical conditional risk on a fixed set") {
    // floor(n alpha) = 3: rows with norm 10 and 9 lie strictly above the third largest.
    CHECK(empirical_conditional_risk(ten_points(-1), kAlwaysPlus, TailRegionSpec::quantile(0.3)) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(empirical_conditional_risk(ten_points(1), kAlwaysPlus, TailRegionSpec::quantile(0.3)) == 0.0);

    auto mixed = ten_points(1);
    mixed.labels[2] = mixed.labels[5] = mixed.labels[9] = -1;
    const auto whole = TailRegionSpec::explicit_region([](std::span<const double>) { return true; }, 1.0);
    CHECK(empirical_conditional_risk(mixed, kAlwaysPlus, whole) == doctest::Approx(0.3));
    CHECK(empirical_conditional_risk(ten_points(-1), kAlwaysPlus, whole) == 1.0);

    CHECK_THROWS_AS(empirical_conditional_risk(mixed, kAlwaysPlus, TailRegionSpec::quantile(0.05)), DomainError);
    auto tied = ten_points(1);
    tied.features(3, 0) = -tied.features(4, 0);
    CHECK_THROWS_AS(empirical_conditional_risk(tied, kAlwaysPlus, TailRegionSpec::quantile(0.3)), DataError);
    CHECK_THROWS_AS(TailRegionSpec::quantile(1.0), ConfigError);
    auto bad = ten_points(1);
    bad.labels[0] = 0;
    CHECK_THROWS_AS(empirical_conditional_risk(bad, kAlwaysPlus, TailRegionSpec::quantile(0.3)), DataError);
}

TEST_CASE("empirical risk matches the order-statistic oracle and stays in [0,1]") {
    const RadialLabelModel gen{2.0, 0.2};
    const auto fam = twenty(gen.norm_quantile(0.05));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = gen.sample(1000 + 37 * seed, seed);
        for (const auto& g : fam.members) {
            const double v = empirical_conditional_risk(s, g, TailRegionSpec::quantile(0.05));
            CHECK(v == doctest::Approx(brute_risk(s, g, 0.05)));
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("norms") {
    const std::vector<double> x{3.0, -4.0};
    CHECK(norm_of(x, Norm::l2) == 5.0);
    CHECK(norm_of(x, Norm::l1) == 7.0);
    CHECK(norm_of(x, Norm::linf) == 4.0);
    CHECK(parse_norm("linf") == Norm::linf);
    CHECK_THROWS_AS(parse_norm("l3"), ConfigError);
}

TEST_CASE("radial model: quantile and joint error probabilities against sampling") {
    const RadialLabelModel gen{1.5, 0.15};
    CHECK(gen.norm_quantile(0.04) == doctest::Approx(std::pow(0.04, -1 / 1.5)));
    CHECK(gen.exterior_mass(0.5) == 1.0);
    const std::size_t n = 1000000;
    const auto s = gen.sample(n, 123);
    const double r0 = gen.norm_quantile(0.1);
    const std::vector<AxisClassifier> gs{{0, 0.0, 1}, {0, 0.0, -1}, {1, 0.5 * r0, 1}, {0, 2.0 * r0, -1},
                                         {1, -3.0, 1}, {0, 1.3 * r0, 1}};
    for (const auto& g : gs) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> x{s.features(i, 0), s.features(i, 1)};
            hits += std::hypot(x[0], x[1]) > r0 && g(x) != s.labels[i];
        }
        const double p = gen.joint_error(g, r0);
        CHECK(std::abs(static_cast<double>(hits) / n - p) < 5 * std::sqrt(p * (1 - p) / n) + 1e-12);
    }
}

TEST_CASE("true conditional risk: trivial generators") {
    const RadialLabelModel noiseless{2.0, 0.0};
    const AxisClassifier bayes{0, 0.0, 1};
    CHECK(true_conditional_risk(bayes, TailRegionSpec::quantile(0.1), noiseless).value == doctest::Approx(0.0).epsilon(1e-12));
    const RadialLabelModel coin{2.0, 0.5};
    for (const auto& g : twenty(3.0).members) {
        CHECK(true_conditional_risk(g, TailRegionSpec::quantile(0.1), coin).value == doctest::Approx(0.5));
        CHECK(true_conditional_risk(g, TailRegionSpec::exterior(5.0, 0.04), coin).value == doctest::Approx(0.5));
    }
}

TEST_CASE("true conditional risk: Monte Carlo reference") {
    CopulaLabelModel lin;
    lin.features.model = StdfModel::logistic(2.0, 2);
    lin.features.margins = {Margin::exponential(), Margin::exponential()};
    lin.rule = {0, 1.0, 1};
    lin.flip = 0.1;
    lin.reference_draws = 1000000;
    const auto r = true_conditional_risk(lin.rule, TailRegionSpec::quantile(0.1), lin);
    CHECK(r.std_error > 0.0);
    CHECK(std::abs(r.value - 0.1) < 5 * r.std_error);

    lin.reference_draws = 0;
    CHECK_THROWS_AS(true_conditional_risk(lin.rule, TailRegionSpec::quantile(0.1), lin), ConfigError);

    // Non-l2 norms on the radial model go through the reference sampler.
    RadialLabelModel gen{2.0, 0.5};
    gen.reference_draws = 200000;
    const auto l1 = true_conditional_risk({1, 0.0, 1}, TailRegionSpec::quantile(0.1, Norm::l1), gen);
    CHECK(std::abs(l1.value - 0.5) < 5 * l1.std_error);
}

TEST_CASE("empirical minimizer") {
    const RadialLabelModel noiseless{2.0, 0.0};
    const auto s = noiseless.sample(3000, 4);
    const auto fam = twenty(noiseless.norm_quantile(0.1));
    const std::size_t bayes = 2;  // coordinate 0, sign +1, threshold 0
    REQUIRE(fam.members[bayes].threshold == 0.0);
    CHECK(erm(s, fam, TailRegionSpec::quantile(0.1)) == bayes);

    ClassifierFamily twins{{{0, 1.0, 1}, {0, 1.0, 1}}, 1.0};
    CHECK(erm(s, twins, TailRegionSpec::quantile(0.1)) == 0);

    const RadialLabelModel noisy{2.0, 0.3};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = noisy.sample(2000, seed);
        std::size_t best = 0;
        double best_risk = 2.0;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const double r = brute_risk(d, fam.members[i], 0.1);
            if (r < best_risk) {
                best_risk = r;
                best = i;
            }
        }
        CHECK(erm(d, fam, TailRegionSpec::quantile(0.1)) == best);
    }
}

TEST_CASE("family serialization round trip") {
    const auto fam = twenty(2.7);
    std::stringstream ss;
    write_family(ss, fam);
    const auto back = read_family(ss, 2.0);
    REQUIRE(back.size() == fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        CHECK(back.members[i].coordinate == fam.members[i].coordinate);
        CHECK(back.members[i].threshold == fam.members[i].threshold);
        CHECK(back.members[i].sign == fam.members[i].sign);
    }
    std::istringstream bad("0,1.0\n");
    CHECK_THROWS_AS(read_family(bad, 1.0), ConfigError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_family(empty, 1.0), ConfigError);
}

TEST_CASE("rate experiment bookkeeping") {
    ClassificationConfig c;
    c.generator = {2.0, 0.1};
    c.family = ClassifierFamily{{{1, 0.7, -1}}, 1.0};
    c.schedule = {{2000, 0.05}, {8000, 0.05}, {100, 0.05}};
    c.trials = 5;
    c.seed = 9;
    c.workers = 1;
    const auto a = rate_experiment_classification(c);
    REQUIRE(a.trials.size() == 15);
    CHECK(a.warnings.size() == 1);
    CHECK(a.per_point[2].flagged);
    // Size-one family: sup deviation is the single-classifier deviation.
    const auto& rec = a.trials[3];
    const auto data = c.generator.sample(2000, derive_seed(derive_seed(9, 0, "point"), 3, "trial"));
    const auto region = TailRegionSpec::quantile(0.05);
    const double direct = std::abs(empirical_conditional_risk(data, c.family.members[0], region) -
                                   true_conditional_risk(c.family.members[0], region, c.generator).value);
    CHECK(rec.sup_deviation == doctest::Approx(direct).epsilon(1e-12));
    c.workers = 3;
    const auto b = rate_experiment_classification(c);
    for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].sup_deviation == b.trials[i].sup_deviation);
}

TEST_CASE("ERM regret is at most twice the uniform deviation") {
    ClassificationConfig c;
    c.generator = {2.0, 0.2};
    c.family = twenty(c.generator.norm_quantile(0.05));
    c.schedule = {{4000, 0.05}, {16000, 0.05}};
    c.trials = 20;
    c.seed = 3;
    const auto rep = rate_experiment_classification(c);
    for (const auto& r : rep.trials) CHECK(r.erm_regret <= 2 * r.sup_deviation + 1e-12);
}

TEST_CASE("fixed-alpha normalization drifts when alpha shrinks with n") {
    const RadialLabelModel gen{2.0, 0.1};
    std::vector<double> scaled;
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        const double alpha = std::pow(static_cast<double>(n), -0.6);
        ClassificationConfig c;
        c.generator = gen;
        c.family = twenty(gen.norm_quantile(alpha));
        c.schedule = {{n, alpha}};
        c.trials = 30;
        c.seed = 17;
        const auto rep = rate_experiment_classification(c);
        scaled.push_back(rep.per_point[0].median * std::sqrt(static_cast<double>(n)));
    }
    CHECK(scaled[0] < scaled[1]);
    CHECK(scaled[1] < scaled[2]);
}

TEST_CASE("rare region Q: deviation scales like 1/sqrt(qn)") {
    const RadialLabelModel gen{2.0, 0.1};
    const double q = 0.05, r0 = std::sqrt(1.0 / q);
    const auto region = TailRegionSpec::exterior(r0, q);
    const auto fam = twenty(r0);
    std::vector<double> truth;
    for (const auto& g : fam.members) truth.push_back(true_conditional_risk(g, region, gen).value);
    std::vector<double> scaled;
    for (std::size_t n : {2000u, 20000u, 200000u}) {
        std::vector<double> devs;
        for (std::uint64_t t = 0; t < 40; ++t) {
            const auto s = gen.sample(n, derive_seed(n, t, "q"));
            const auto sel = select_tail(s, region);
            double sup = 0.0;
            for (std::size_t i = 0; i < fam.size(); ++i)
                sup = std::max(sup, std::abs(risk_on_selection(s, fam.members[i], sel) - truth[i]));
            devs.push_back(sup);
        }
        scaled.push_back(median(devs) * std::sqrt(q * n));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi / *lo <= 2.0);
}

TEST_CASE("Appendix B inequality") {
    // Truths set equal to the empirical quantities: both deviations vanish.
    const RadialLabelModel gen{2.0, 0.2};
    const auto s = gen.sample(1000, 1);
    const ClassifierFamily fam{{{0, 0.0, 1}, {1, 2.0, -1}}, 1.0};
    const double alpha = 0.1;
    std::vector<double> norms;
    for (std::size_t i = 0; i < s.n(); ++i) norms.push_back(std::hypot(s.features(i, 0), s.features(i, 1)));
    std::sort(norms.rbegin(), norms.rend());
    const double t = 0.5 * (norms[99] + norms[100]);  // exactly n alpha = 100 points beyond t
    std::vector<double> joint;
    for (const auto& g : fam.members) {
        std::size_t err = 0;
        for (std::size_t i = 0; i < s.n(); ++i) {
            const std::vector<double> x{s.features(i, 0), s.features(i, 1)};
            err += std::hypot(x[0], x[1]) > t && g(x) != s.labels[i];
        }
        joint.push_back(err / 1000.0);
    }
    const auto det = appendixB_from_truth(s, fam, alpha, Norm::l2, t, joint);
    CHECK(det.joint_deviation == doctest::Approx(0.0));
    CHECK(det.marginal_deviation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(det.rhs == doctest::Approx(1.0 / (1000 * alpha)));
    CHECK(det.holds);

    std::size_t held = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto d = gen.sample(1000, 1000 + seed);
        held += appendixB_decomposition_check(d, fam, alpha, gen).holds;
    }
    CHECK(held == 100);
}
