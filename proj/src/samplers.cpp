#include "stdf/samplers.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <numbers>

#include "stdf/error.hpp"
#include "stdf/rng.hpp"

namespace stdf {

Margin Margin::uniform() { return {}; }

Margin Margin::exponential() {
    Margin m;
    m.kind = Kind::exponential;
    m.name = "exponential";
    return m;
}

Margin Margin::pareto(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("pareto margin needs a > 0");
    Margin m;
    m.kind = Kind::pareto;
    m.shape = a;
    char buf[48];
    std::snprintf(buf, sizeof buf, "pareto(%.17g)", a);
    m.name = buf;
    return m;
}

Margin Margin::custom(std::string name, std::function<double(double)> transform,
                      std::function<double(double)> cdf) {
    if (!transform || !cdf) throw ConfigError("custom margin needs both transform and cdf");
    Margin m;
    m.kind = Kind::custom;
    m.name = std::move(name);
    m.custom_transform = std::move(transform);
    m.custom_cdf = std::move(cdf);
    return m;
}

double Margin::transform(double u) const {
    switch (kind) {
    case Kind::uniform: return u;
    case Kind::exponential: return -std::log1p(-u);
    case Kind::pareto: return std::exp(-std::log1p(-u) / shape);
    case Kind::custom: return custom_transform(u);
    }
    return u;
}

double Margin::cdf(double x) const {
    switch (kind) {
    case Kind::uniform: return std::clamp(x, 0.0, 1.0);
    case Kind::exponential: return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case Kind::pareto: return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -shape);
    case Kind::custom: return custom_cdf(x);
    }
    return x;
}

Margin parse_margin(std::string_view text) {
    if (text == "uniform") return Margin::uniform();
    if (text == "exponential") return Margin::exponential();
    if (text.starts_with("pareto")) {
        auto rest = text.substr(6);
        if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
        else if (rest.starts_with(":")) rest = rest.substr(1);
        double a = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
            throw ConfigError("cannot parse pareto shape in '" + std::string(text) + "'");
        return Margin::pareto(a);
    }
    throw ConfigError("unknown margin '" + std::string(text) +
                      "' (expected uniform, exponential, pareto(a))");
}

void GeneratorSpec::validate() const {
    model.validate();
    if (n == 0) throw ConfigError("sample size n must be >= 1");
    if (!margins.empty() && margins.size() != model.d)
        throw ConfigError("got " + std::to_string(margins.size()) + " margins for dimension " +
                          std::to_string(model.d));
}

namespace {

void require_family(const GeneratorSpec& spec, Family f, const char* op) {
    spec.validate();
    if (spec.model.family != f)
        throw ConfigError(std::string(op) + " called with model " + to_string(spec.model));
}

Sample finish(Matrix uniforms, const GeneratorSpec& spec) {
    Sample s{std::move(uniforms), "generator:" + to_string(spec.model) + ",n=" +
                                      std::to_string(spec.n) + ",seed=" + std::to_string(spec.seed)};
    if (spec.margins.empty()) return s;
    return apply_margins(s, spec.margins);
}

// Positive stable variable with Laplace transform exp(-s^alpha), 0 < alpha <= 1
// (Kanter's representation).
double positive_stable(double alpha, Engine& eng) {
    const double w = std::numbers::pi * uniform_open(eng);
    const double e = exponential(eng);
    if (alpha == 1.0) return 1.0;
    const double a = std::sin(alpha * w) / std::pow(std::sin(w), 1.0 / alpha);
    const double b = std::pow(std::sin((1.0 - alpha) * w) / e, (1.0 - alpha) / alpha);
    return a * b;
}

} // namespace

Sample sample_independence(const GeneratorSpec& spec) {
    require_family(spec, Family::independence, "sample_independence");
    auto eng = make_engine(spec.seed, 0, "sample");
    Matrix m(spec.n, spec.d());
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.d(); ++j) m(i, j) = uniform_open(eng);
    return finish(std::move(m), spec);
}

Sample sample_comonotone(const GeneratorSpec& spec) {
    require_family(spec, Family::comonotone, "sample_comonotone");
    auto eng = make_engine(spec.seed, 0, "sample");
    Matrix m(spec.n, spec.d());
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = uniform_open(eng);
        for (std::size_t j = 0; j < spec.d(); ++j) m(i, j) = u;
    }
    return finish(std::move(m), spec);
}

Sample sample_logistic(const GeneratorSpec& spec, double theta) {
    if (!(theta >= 1.0) || !std::isfinite(theta))
        throw DomainError("logistic sampler needs theta >= 1, got " + std::to_string(theta));
    GeneratorSpec s = spec;
    s.model = StdfModel::logistic(theta, spec.d());
    require_family(s, Family::logistic, "sample_logistic");
    auto eng = make_engine(s.seed, 0, "sample");
    const double alpha = 1.0 / theta;
    Matrix m(s.n, s.d());
    for (std::size_t i = 0; i < s.n; ++i) {
        const double frailty = positive_stable(alpha, eng);
        for (std::size_t j = 0; j < s.d(); ++j) {
            // P(V <= v | S) = exp(-S (-log v)^theta)
            const double e = exponential(eng);
            m(i, j) = std::exp(-std::pow(e / frailty, alpha));
        }
    }
    return finish(std::move(m), s);
}

Sample generate(const GeneratorSpec& spec) {
    switch (spec.model.family) {
    case Family::independence: return sample_independence(spec);
    case Family::comonotone: return sample_comonotone(spec);
    case Family::logistic: return sample_logistic(spec, spec.model.theta);
    }
    throw ConfigError("unsupported model");
}

Sample apply_margins(const Sample& sample, const std::vector<Margin>& transforms) {
    if (transforms.size() != sample.d())
        throw ConfigError("got " + std::to_string(transforms.size()) + " transforms for " +
                          std::to_string(sample.d()) + " columns");
    for (const auto& t : transforms) {
        if (t.kind != Margin::Kind::custom) continue;
        double prev = t.transform(0.0005);
        for (int g = 2; g < 2000; ++g) {
            double cur = t.transform(0.0005 * g);
            if (!(cur > prev))
                throw ConfigError("margin '" + t.name + "' is not strictly increasing on (0,1)");
            prev = cur;
        }
    }
    Sample out{Matrix(sample.n(), sample.d()), sample.provenance};
    for (std::size_t j = 0; j < sample.d(); ++j)
        for (std::size_t i = 0; i < sample.n(); ++i)
            out.values(i, j) = transforms[j].transform(sample.values(i, j));
    require_finite(out.values);
    return out;
}

} // namespace stdf
