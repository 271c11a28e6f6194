#include "stdf/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "stdf/error.hpp"

namespace stdf {

StdfModel StdfModel::independence(std::size_t d) {
    StdfModel m{Family::independence, 1.0, d};
    m.validate();
    return m;
}

StdfModel StdfModel::comonotone(std::size_t d) {
    StdfModel m{Family::comonotone, 1.0, d};
    m.validate();
    return m;
}

StdfModel StdfModel::logistic(double theta, std::size_t d) {
    StdfModel m{Family::logistic, theta, d};
    m.validate();
    return m;
}

void StdfModel::validate() const {
    if (d == 0) throw ConfigError("model dimension must be >= 1");
    if (family == Family::logistic && !(theta >= 1.0 && std::isfinite(theta)))
        throw ConfigError("logistic parameter theta must be >= 1, got " + std::to_string(theta));
}

StdfModel parse_model(std::string_view text, std::size_t d) {
    if (text == "independence") return StdfModel::independence(d);
    if (text == "comonotone") return StdfModel::comonotone(d);
    if (text.starts_with("logistic")) {
        auto rest = text.substr(8);
        if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
        else if (rest.starts_with(":")) rest = rest.substr(1);
        double theta = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), theta);
        if (ec != std::errc() || ptr != rest.data() + rest.size())
            throw ConfigError("cannot parse logistic parameter in '" + std::string(text) + "'");
        return StdfModel::logistic(theta, d);
    }
    throw ConfigError("unknown model '" + std::string(text) +
                      "' (expected independence, comonotone, logistic(theta))");
}

std::string to_string(const StdfModel& model) {
    switch (model.family) {
    case Family::independence: return "independence";
    case Family::comonotone: return "comonotone";
    case Family::logistic: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "logistic(%.17g)", model.theta);
        return buf;
    }
    }
    return "?";
}

namespace {

void check_dim(const StdfModel& model, std::span<const double> x) {
    if (x.size() != model.d)
        throw DomainError("point has dimension " + std::to_string(x.size()) + ", model has " +
                          std::to_string(model.d));
}

// (sum a_j^theta)^(1/theta), scaled by the largest term against overflow.
double power_mean_norm(std::span<const double> a, double theta) {
    double amax = 0.0;
    for (double v : a) amax = std::max(amax, v);
    if (amax == 0.0 || std::isinf(amax)) return amax;
    double s = 0.0;
    for (double v : a) s += std::pow(v / amax, theta);
    return amax * std::pow(s, 1.0 / theta);
}

} // namespace

double eval_stdf(const StdfModel& model, std::span<const double> x) {
    check_dim(model, x);
    for (double v : x)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("stable tail dependence function needs finite x_j >= 0");
    switch (model.family) {
    case Family::independence: {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    case Family::comonotone: return *std::max_element(x.begin(), x.end());
    case Family::logistic: return power_mean_norm(x, model.theta);
    }
    return 0.0;
}

double tail_union_prob(const StdfModel& model, std::span<const double> u) {
    check_dim(model, u);
    for (double v : u)
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("tail_union_prob needs u in [0,1]^d");
    switch (model.family) {
    case Family::independence: {
        double log_none = 0.0;
        for (double v : u) log_none += std::log1p(-v);
        return -std::expm1(log_none);
    }
    case Family::comonotone: return *std::max_element(u.begin(), u.end());
    case Family::logistic: {
        // 1 - C(1-u) with C the Gumbel copula.
        std::vector<double> a(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) a[j] = -std::log1p(-u[j]);
        double A = power_mean_norm(a, model.theta);
        return std::isinf(A) ? 1.0 : -std::expm1(-A);
    }
    }
    return 0.0;
}

double pre_limit_tail(const StdfModel& model, double t, std::span<const double> x) {
    check_dim(model, x);
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("pre_limit_tail needs t in (0,1]");
    std::vector<double> u(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= 0.0)) throw DomainError("pre_limit_tail needs x_j >= 0");
        u[j] = t * x[j];
        if (u[j] > 1.0) throw DomainError("pre_limit_tail needs t*x_j <= 1");
    }
    if (model.family == Family::comonotone) return *std::max_element(x.begin(), x.end());
    return tail_union_prob(model, u) / t;
}

double bias_term(const StdfModel& model, double t, std::span<const double> x) {
    return std::abs(pre_limit_tail(model, t, x) - eval_stdf(model, x));
}

double bias_sup(const StdfModel& model, double t, double T, std::size_t points_per_axis) {
    if (model.family == Family::comonotone) return 0.0;
    if (points_per_axis < 2) throw ConfigError("bias grid needs at least 2 points per axis");
    if (t * T > 1.0) throw DomainError("bias_sup needs t*T <= 1");
    const std::size_t d = model.d;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d, 0.0);
    const double h = T / static_cast<double>(points_per_axis - 1);
    double best = 0.0;
    for (;;) {
        for (std::size_t j = 0; j < d; ++j) x[j] = std::min(T, h * static_cast<double>(idx[j]));
        best = std::max(best, bias_term(model, t, x));
        std::size_t j = 0;
        while (j < d && ++idx[j] == points_per_axis) idx[j++] = 0;
        if (j == d) break;
    }
    return best;
}

} // namespace stdf
