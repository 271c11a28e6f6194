#include "stdf/classification.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stdf/empirical.hpp"
#include "stdf/error.hpp"
#include "stdf/parallel.hpp"
#include "stdf/rng.hpp"

namespace stdf {

namespace {

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::vector<double> row_of(const Matrix& m, std::size_t i) {
    std::vector<double> r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    return r;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

void LabeledSample::validate() const {
    if (labels.size() != features.rows())
        throw DataError("labeled sample has " + std::to_string(features.rows()) + " feature rows but " +
                        std::to_string(labels.size()) + " labels");
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != 1 && labels[i] != -1)
            throw DataError("label in row " + std::to_string(i) + " is " + std::to_string(labels[i]) +
                            ", expected -1 or +1");
    for (std::size_t j = 0; j < features.cols(); ++j)
        for (std::size_t i = 0; i < features.rows(); ++i)
            if (!std::isfinite(features(i, j)))
                throw DataError("non-finite feature at row " + std::to_string(i) + ", column " +
                                std::to_string(j));
}

void ClassifierFamily::validate(std::size_t d) const {
    if (members.empty()) throw ConfigError("classifier family is empty");
    if (!(vc_dimension > 0.0)) throw ConfigError("declared VC dimension must be positive");
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& g = members[i];
        if (g.coordinate >= d)
            throw ConfigError("member " + std::to_string(i) + " uses coordinate " +
                              std::to_string(g.coordinate) + " but d=" + std::to_string(d));
        if (g.sign != 1 && g.sign != -1)
            throw ConfigError("member " + std::to_string(i) + " has sign " + std::to_string(g.sign));
        if (std::isnan(g.threshold)) throw ConfigError("member " + std::to_string(i) + " has NaN threshold");
    }
}

void write_family(std::ostream& out, const ClassifierFamily& family) {
    out << "# coordinate,threshold,sign\n";
    for (const auto& g : family.members) out << g.coordinate << ',' << num(g.threshold) << ',' << g.sign << '\n';
}

ClassifierFamily read_family(std::istream& in, double vc_dimension) {
    ClassifierFamily family;
    family.vc_dimension = vc_dimension;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        AxisClassifier g;
        long long coord = -1;
        char c1 = 0, c2 = 0;
        if (!(ls >> coord >> c1 >> g.threshold >> c2 >> g.sign) || c1 != ',' || c2 != ',' || coord < 0)
            throw ConfigError("family line " + std::to_string(line_no) +
                              ": expected coordinate,threshold,sign");
        std::string rest;
        if (ls >> rest) throw ConfigError("family line " + std::to_string(line_no) + ": trailing text");
        g.coordinate = static_cast<std::size_t>(coord);
        family.members.push_back(g);
    }
    if (family.members.empty()) throw ConfigError("classifier family is empty");
    return family;
}

ClassifierFamily axis_threshold_family(std::span<const std::size_t> coordinates,
                                       std::span<const double> thresholds, double vc_dimension) {
    ClassifierFamily family;
    family.vc_dimension = vc_dimension;
    for (std::size_t c : coordinates)
        for (int s : {1, -1})
            for (double t : thresholds) family.members.push_back({c, t, s});
    return family;
}

double norm_of(std::span<const double> x, Norm norm) {
    double acc = 0.0;
    switch (norm) {
    case Norm::l1:
        for (double v : x) acc += std::abs(v);
        return acc;
    case Norm::l2:
        for (double v : x) acc = std::hypot(acc, v);
        return acc;
    case Norm::linf:
        for (double v : x) acc = std::max(acc, std::abs(v));
        return acc;
    }
    return acc;
}

Norm parse_norm(std::string_view text) {
    if (text == "l1") return Norm::l1;
    if (text == "l2") return Norm::l2;
    if (text == "linf") return Norm::linf;
    throw ConfigError("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

TailRegionSpec TailRegionSpec::quantile(double alpha, Norm norm) {
    TailRegionSpec r;
    r.kind = Kind::quantile;
    r.alpha = alpha;
    r.norm = norm;
    r.validate();
    return r;
}

TailRegionSpec TailRegionSpec::explicit_region(std::function<bool(std::span<const double>)> region,
                                               double mass) {
    TailRegionSpec r;
    r.kind = Kind::explicit_region;
    r.region = std::move(region);
    r.mass = mass;
    r.validate();
    return r;
}

TailRegionSpec TailRegionSpec::exterior(double radius, double mass, Norm norm) {
    TailRegionSpec r = explicit_region([radius, norm](std::span<const double> x) { return norm_of(x, norm) > radius; },
                                       mass);
    r.norm = norm;
    r.radius = radius;
    return r;
}

void TailRegionSpec::validate() const {
    if (kind == Kind::quantile) {
        if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("tail level alpha must lie in (0,1), got " + num(alpha));
    } else {
        if (!region) throw ConfigError("explicit region has no membership predicate");
        if (!(mass > 0.0 && mass <= 1.0)) throw ConfigError("region mass q must lie in (0,1], got " + num(mass));
    }
}

TailSelection select_tail(const LabeledSample& data, const TailRegionSpec& region) {
    region.validate();
    const std::size_t n = data.n();
    TailSelection sel;
    if (region.kind == TailRegionSpec::Kind::explicit_region) {
        for (std::size_t i = 0; i < n; ++i)
            if (region.region(row_of(data.features, i))) sel.rows.push_back(i);
        sel.normalizer = static_cast<double>(n) * region.mass;
        return sel;
    }
    const std::size_t m = lattice_index(n, region.alpha);
    if (m == 0)
        throw DomainError("floor(n*alpha) = 0 (n=" + std::to_string(n) + ", alpha=" + num(region.alpha) + ")");
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = norm_of(row_of(data.features, i), region.norm);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    for (std::size_t r = 1; r < n; ++r)
        if (norms[order[r]] == norms[order[r - 1]])
            throw DataError("tied feature norms in rows " + std::to_string(order[r - 1]) + " and " +
                            std::to_string(order[r]));
    // Strictly above the m-th largest norm: the top m-1 rows.
    sel.rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m - 1));
    std::sort(sel.rows.begin(), sel.rows.end());
    sel.normalizer = static_cast<double>(n) * region.alpha;
    return sel;
}

double risk_on_selection(const LabeledSample& data, const AxisClassifier& g, const TailSelection& sel) {
    std::size_t errors = 0;
    const auto& f = data.features;
    for (std::size_t i : sel.rows) {
        const int pred = f(i, g.coordinate) > g.threshold ? g.sign : -g.sign;
        if (pred != data.labels[i]) ++errors;
    }
    return static_cast<double>(errors) / sel.normalizer;
}

double empirical_conditional_risk(const LabeledSample& data, const AxisClassifier& g,
                                  const TailRegionSpec& region) {
    data.validate();
    if (g.coordinate >= data.features.cols()) throw ConfigError("classifier coordinate out of range");
    return risk_on_selection(data, g, select_tail(data, region));
}

std::size_t erm(const LabeledSample& data, const ClassifierFamily& family, const TailRegionSpec& region) {
    data.validate();
    family.validate(data.features.cols());
    const auto sel = select_tail(data, region);
    std::size_t best = 0;
    double best_risk = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const double r = risk_on_selection(data, family.members[i], sel);
        if (r < best_risk) {
            best_risk = r;
            best = i;
        }
    }
    return best;
}

void RadialLabelModel::validate() const {
    if (!(tail_index > 0.0) || !std::isfinite(tail_index))
        throw ConfigError("radial model tail index must be positive, got " + num(tail_index));
    if (!(flip >= 0.0 && flip <= 1.0)) throw ConfigError("flip probability must lie in [0,1], got " + num(flip));
}

LabeledSample RadialLabelModel::sample(std::size_t n, std::uint64_t seed) const {
    validate();
    auto eng = make_engine(seed, 0, "radial");
    LabeledSample out{Matrix(n, 2), std::vector<int>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::pow(uniform_open(eng), -1.0 / tail_index);
        const double phi = kTwoPi * uniform_open(eng);
        const double x1 = r * std::cos(phi);
        out.features(i, 0) = x1;
        out.features(i, 1) = r * std::sin(phi);
        int y = x1 > 0.0 ? 1 : -1;
        if (uniform_open(eng) < flip) y = -y;
        out.labels[i] = y;
    }
    return out;
}

double RadialLabelModel::norm_quantile(double alpha) const {
    validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("tail level must lie in (0,1], got " + num(alpha));
    return std::pow(alpha, -1.0 / tail_index);
}

double RadialLabelModel::exterior_mass(double radius) const {
    validate();
    return radius < 1.0 ? 1.0 : std::pow(radius, -tail_index);
}

namespace {

// Length of the intersection of the arcs [m1-w1, m1+w1] and [m2-w2, m2+w2],
// both shorter than the full circle.
double arc_overlap(double m1, double w1, double m2, double w2) {
    double total = 0.0;
    for (int k = -1; k <= 1; ++k) {
        const double lo = std::max(m1 - w1, m2 - w2 + k * kTwoPi);
        const double hi = std::min(m1 + w1, m2 + w2 + k * kTwoPi);
        if (hi > lo) total += hi - lo;
    }
    return total;
}

// Fraction of the circle of radius r on which g disagrees with sign(x_1).
double disagreement(const AxisClassifier& g, double r) {
    const double half_pi = std::numbers::pi / 2.0;
    const double rho = g.threshold / r;
    double g_len = 0.0, g_and_b = 0.0;
    if (rho <= -1.0) {
        g_len = kTwoPi;
        g_and_b = std::numbers::pi;
    } else if (rho < 1.0) {
        const double w = std::acos(rho);
        const double mu = g.coordinate == 0 ? 0.0 : half_pi;
        g_len = 2.0 * w;
        g_and_b = arc_overlap(mu, w, 0.0, half_pi);
    }
    const double sym_diff = g_len + std::numbers::pi - 2.0 * g_and_b;
    const double dis = g.sign == 1 ? sym_diff : kTwoPi - sym_diff;
    return std::clamp(dis / kTwoPi, 0.0, 1.0);
}

} // namespace

double RadialLabelModel::joint_error(const AxisClassifier& g, double radius) const {
    validate();
    if (g.coordinate > 1) throw ConfigError("radial model has two coordinates");
    const double r_lo = std::max(radius, 1.0);
    const double mass = std::pow(r_lo, -tail_index);
    const double a = tail_index;
    auto h = [&](double v) {
        const double r = r_lo * std::pow(v, -1.0 / a);
        return flip + (1.0 - 2.0 * flip) * disagreement(g, r);
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double integral = 0.0;
    const double tau = std::abs(g.threshold);
    if (tau > r_lo) {
        // D is constant for r <= |tau|, i.e. v >= (r_lo/|tau|)^a, with a square-root kink there.
        const double v_star = std::pow(r_lo / tau, a);
        integral = GK::integrate(h, 0.0, v_star, 20, 1e-13) + GK::integrate(h, v_star, 1.0, 20, 1e-13);
    } else {
        integral = GK::integrate(h, 0.0, 1.0, 20, 1e-13);
    }
    return mass * integral;
}

LabeledSample CopulaLabelModel::sample(std::size_t n, std::uint64_t seed) const {
    if (!(flip >= 0.0 && flip <= 1.0)) throw ConfigError("flip probability must lie in [0,1], got " + num(flip));
    if (rule.coordinate >= features.d()) throw ConfigError("label rule coordinate out of range");
    GeneratorSpec spec = features;
    spec.n = n;
    spec.seed = derive_seed(seed, 0, "features");
    Sample s = generate(spec);
    auto eng = make_engine(seed, 0, "labels");
    LabeledSample out{std::move(s.values), std::vector<int>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        int y = out.features(i, rule.coordinate) > rule.threshold ? rule.sign : -rule.sign;
        if (uniform_open(eng) < flip) y = -y;
        out.labels[i] = y;
    }
    return out;
}

namespace {

constexpr std::uint64_t kReferenceSeed = 0x5eedULL;
constexpr std::size_t kReferenceChunk = 1u << 18;

// Reference estimate over `draws` labeled draws, produced in fixed chunks so
// the result does not depend on the worker count.
template <class Sampler>
RiskValue reference_risk(const AxisClassifier& g, const TailRegionSpec& region, std::size_t draws,
                         Sampler&& sampler) {
    if (draws == 0) throw ConfigError("generator has no closed form for this region and no reference draws");
    const std::size_t chunks = (draws + kReferenceChunk - 1) / kReferenceChunk;
    std::vector<double> norms(draws);
    std::vector<unsigned char> err(draws), inside(draws);
    const bool quantile = region.kind == TailRegionSpec::Kind::quantile;
    parallel_for(chunks, 0, [&](std::size_t c) {
        const std::size_t begin = c * kReferenceChunk;
        const std::size_t len = std::min(kReferenceChunk, draws - begin);
        LabeledSample s = sampler(len, derive_seed(kReferenceSeed, c, "reference"));
        if (g.coordinate >= s.features.cols()) throw ConfigError("classifier coordinate out of range");
        for (std::size_t i = 0; i < len; ++i) {
            const auto x = row_of(s.features, i);
            err[begin + i] = g(x) != s.labels[i];
            if (quantile)
                norms[begin + i] = norm_of(x, region.norm);
            else
                inside[begin + i] = region.region(x);
        }
    });
    double scale = 0.0;
    if (quantile) {
        std::vector<double> sorted = norms;
        const auto idx = static_cast<std::size_t>(std::floor((1.0 - region.alpha) * static_cast<double>(draws)));
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(std::min(idx, draws - 1)),
                         sorted.end());
        const double t = sorted[std::min(idx, draws - 1)];
        for (std::size_t i = 0; i < draws; ++i) inside[i] = norms[i] > t;
        scale = region.alpha;
    } else {
        scale = region.mass;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i) hits += (err[i] && inside[i]) ? 1 : 0;
    const double p = static_cast<double>(hits) / static_cast<double>(draws);
    return {p / scale, std::sqrt(p * (1.0 - p) / static_cast<double>(draws)) / scale};
}

} // namespace

RiskValue true_conditional_risk(const AxisClassifier& g, const TailRegionSpec& region,
                                const LabelGenerator& generator) {
    region.validate();
    if (const auto* radial = std::get_if<RadialLabelModel>(&generator)) {
        if (region.norm == Norm::l2) {
            if (region.kind == TailRegionSpec::Kind::quantile)
                return {radial->joint_error(g, radial->norm_quantile(region.alpha)) / region.alpha, 0.0};
            if (region.radius >= 0.0) return {radial->joint_error(g, region.radius) / region.mass, 0.0};
        }
        return reference_risk(g, region, radial->reference_draws,
                              [&](std::size_t n, std::uint64_t seed) { return radial->sample(n, seed); });
    }
    const auto& copula = std::get<CopulaLabelModel>(generator);
    return reference_risk(g, region, copula.reference_draws,
                          [&](std::size_t n, std::uint64_t seed) { return copula.sample(n, seed); });
}

void ClassificationConfig::validate() const {
    generator.validate();
    if (schedule.empty()) throw ConfigError("classification schedule is empty");
    if (trials < 1) throw ConfigError("need at least one trial");
    family.validate(2);
    for (const auto& p : schedule) {
        if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw ConfigError("schedule alpha must lie in (0,1), got " + num(p.alpha));
        if (lattice_index(p.n, p.alpha) == 0)
            throw ConfigError("schedule point n=" + std::to_string(p.n) + ", alpha=" + num(p.alpha) +
                              " has floor(n*alpha) = 0");
    }
}

double sup_risk_deviation(const LabeledSample& data, const ClassifierFamily& family, double alpha,
                          const RadialLabelModel& generator) {
    const auto region = TailRegionSpec::quantile(alpha);
    const auto sel = select_tail(data, region);
    double sup = 0.0;
    for (const auto& g : family.members) {
        const double truth = true_conditional_risk(g, region, generator).value;
        sup = std::max(sup, std::abs(risk_on_selection(data, g, sel) - truth));
    }
    return sup;
}

ClassificationReport rate_experiment_classification(const ClassificationConfig& config) {
    config.validate();
    ClassificationReport report;
    const std::size_t P = config.schedule.size(), T = config.trials, G = config.family.size();

    std::vector<std::vector<double>> truth(P, std::vector<double>(G));
    for (std::size_t p = 0; p < P; ++p) {
        const auto region = TailRegionSpec::quantile(config.schedule[p].alpha);
        for (std::size_t g = 0; g < G; ++g)
            truth[p][g] = true_conditional_risk(config.family.members[g], region, config.generator).value;
        const double na = static_cast<double>(config.schedule[p].n) * config.schedule[p].alpha;
        if (na < 10.0)
            report.warnings.push_back("schedule point n=" + std::to_string(config.schedule[p].n) +
                                      ", alpha=" + num(config.schedule[p].alpha) + " has n*alpha=" + num(na) +
                                      " < 10; flagged");
    }

    report.trials.resize(P * T);
    parallel_for(P * T, config.workers, [&](std::size_t job) {
        const std::size_t p = job / T, t = job % T;
        const auto& pt = config.schedule[p];
        const auto seed = derive_seed(derive_seed(config.seed, p, "point"), t, "trial");
        const auto data = config.generator.sample(pt.n, seed);
        const auto sel = select_tail(data, TailRegionSpec::quantile(pt.alpha));
        double sup = 0.0, best_emp = std::numeric_limits<double>::infinity();
        std::size_t best = 0;
        for (std::size_t g = 0; g < G; ++g) {
            const double emp = risk_on_selection(data, config.family.members[g], sel);
            sup = std::max(sup, std::abs(emp - truth[p][g]));
            if (emp < best_emp) {
                best_emp = emp;
                best = g;
            }
        }
        const double min_true = *std::min_element(truth[p].begin(), truth[p].end());
        report.trials[job] = {pt.n, pt.alpha, t, sup, best, truth[p][best] - min_true};
    });

    std::vector<double> xs, ys;
    for (std::size_t p = 0; p < P; ++p) {
        std::vector<double> dev(T);
        for (std::size_t t = 0; t < T; ++t) dev[t] = report.trials[p * T + t].sup_deviation;
        ClassificationSummary s;
        s.n = config.schedule[p].n;
        s.alpha = config.schedule[p].alpha;
        s.n_alpha = static_cast<double>(s.n) * s.alpha;
        s.median = median(dev);
        s.mean = mean(dev);
        s.std_error = std_error(dev);
        s.flagged = s.n_alpha < 10.0;
        report.per_point.push_back(s);
        if (!s.flagged && s.median > 0.0) {
            xs.push_back(s.n_alpha);
            ys.push_back(s.median);
        }
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= 2) {
        report.slope = fit_log_log(xs, ys);
        report.slope_valid = true;
    }
    return report;
}

AppendixBResult appendixB_from_truth(const LabeledSample& data, const ClassifierFamily& family,
                                     double alpha, Norm norm, double t_alpha,
                                     std::span<const double> true_joint) {
    data.validate();
    family.validate(data.features.cols());
    if (true_joint.size() != family.size()) throw ConfigError("need one joint probability per family member");
    const std::size_t n = data.n();
    const double nd = static_cast<double>(n);
    const auto sel = select_tail(data, TailRegionSpec::quantile(alpha, norm));

    std::vector<std::size_t> beyond;
    for (std::size_t i = 0; i < n; ++i)
        if (norm_of(row_of(data.features, i), norm) > t_alpha) beyond.push_back(i);

    AppendixBResult res;
    for (std::size_t g = 0; g < family.size(); ++g) {
        const auto& cl = family.members[g];
        res.lhs = std::max(res.lhs, std::abs(risk_on_selection(data, cl, sel) - true_joint[g] / alpha));
        std::size_t errors = 0;
        for (std::size_t i : beyond)
            if (data.features(i, cl.coordinate) > cl.threshold ? cl.sign != data.labels[i]
                                                               : -cl.sign != data.labels[i])
                ++errors;
        res.joint_deviation = std::max(res.joint_deviation, std::abs(true_joint[g] - errors / nd));
    }
    res.marginal_deviation = std::abs(alpha - static_cast<double>(beyond.size()) / nd);
    res.rhs = (res.joint_deviation + res.marginal_deviation + 1.0 / nd) / alpha;
    res.holds = res.lhs <= res.rhs * (1.0 + 1e-12) + 1e-15;
    return res;
}

AppendixBResult appendixB_decomposition_check(const LabeledSample& data, const ClassifierFamily& family,
                                              double alpha, const RadialLabelModel& generator) {
    const double t = generator.norm_quantile(alpha);
    std::vector<double> joint(family.size());
    for (std::size_t g = 0; g < family.size(); ++g) joint[g] = generator.joint_error(family.members[g], t);
    return appendixB_from_truth(data, family, alpha, Norm::l2, t, joint);
}

} // namespace stdf
