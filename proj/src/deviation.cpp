#include "stdf/deviation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stdf/error.hpp"
#include "stdf/parallel.hpp"
#include "stdf/rng.hpp"

namespace stdf {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s = buf;
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

// Cell edges of one axis: e_m = m/k for m <= M = floor(kT), then e_{M+1} = T.
std::vector<double> cell_edges(std::size_t k, double T, std::size_t M) {
    std::vector<double> e(M + 2);
    for (std::size_t m = 0; m <= M; ++m) e[m] = static_cast<double>(m) / static_cast<double>(k);
    e[M + 1] = T;
    return e;
}

std::size_t lattice_extent(std::size_t k, double T, std::size_t n) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("T must be finite and >= 0");
    if (static_cast<double>(k) * T > static_cast<double>(n))
        throw DomainError("k*T = " + num(static_cast<double>(k) * T) + " exceeds n = " +
                          std::to_string(n));
    return std::min(lattice_index(k, T), n);
}

} // namespace

SupResult sup_stdf_deviation(const RankState& ranks, std::size_t k, const StdfModel& model, double T,
                             std::optional<double> grid_step) {
    if (k < 1 || k > ranks.n) throw DomainError("k must satisfy 1 <= k <= n");
    if (model.d != ranks.d) throw ConfigError("model and sample dimensions differ");
    const std::size_t M = lattice_extent(k, T, ranks.n);
    const double kd = static_cast<double>(k);
    SupResult res;
    if (ranks.d == 1) {
        const auto e = cell_edges(k, T, M);
        std::array<std::size_t, 1> m{};
        std::array<double, 1> x{};
        for (std::size_t a = 0; a <= M; ++a) {
            m[0] = a;
            const double ln = static_cast<double>(empirical_stdf_count(ranks, m)) / kd;
            x[0] = e[a];
            const double lo = eval_stdf(model, x);
            x[0] = e[a + 1];
            const double hi = eval_stdf(model, x);
            res.value = std::max({res.value, std::abs(ln - lo), std::abs(ln - hi)});
        }
        return res;
    }
    if (ranks.d == 2) {
        const auto e = cell_edges(k, T, M);
        auto l_row = [&](std::size_t a, std::vector<double>& out) {
            std::array<double, 2> x{e[a], 0.0};
            out.resize(M + 2);
            for (std::size_t b = 0; b <= M + 1; ++b) {
                x[1] = e[b];
                out[b] = eval_stdf(model, x);
            }
        };
        std::vector<double> lo_row, hi_row;
        l_row(0, hi_row);
        sweep_lattice_2d(ranks, M, M, [&](std::size_t a, std::span<const std::uint32_t> counts) {
            std::swap(lo_row, hi_row);
            l_row(a + 1, hi_row);
            double best = res.value;
            for (std::size_t b = 0; b <= M; ++b) {
                const double ln = static_cast<double>(counts[b]) / kd;
                best = std::max({best, std::abs(ln - lo_row[b]), std::abs(ln - hi_row[b + 1])});
            }
            res.value = best;
        });
        return res;
    }
    if (!grid_step)
        throw ConfigError("d = " + std::to_string(ranks.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    const double h = *grid_step;
    if (!(h > 0.0)) throw ConfigError("grid step must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(T / h - 1e-12));
    const std::size_t d = ranks.d;
    std::vector<std::size_t> idx(d, 0), m(d);
    std::vector<double> x(d);
    for (;;) {
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = std::min(T, h * static_cast<double>(idx[j]));
            m[j] = std::min(lattice_index(k, x[j]), ranks.n);
        }
        const double ln = static_cast<double>(empirical_stdf_count(ranks, m)) / kd;
        res.value = std::max(res.value, std::abs(ln - eval_stdf(model, x)));
        std::size_t j = 0;
        while (j < d && ++idx[j] == steps + 1) idx[j++] = 0;
        if (j == d) break;
    }
    res.exact = false;
    res.slack = static_cast<double>(d) * h;
    return res;
}

void check_theorem2_preconditions(std::size_t k, std::size_t d, double T, double delta) {
    if (k < 1) throw PreconditionError("k >= 1 violated: k=" + std::to_string(k));
    if (d < 1) throw PreconditionError("d >= 1 violated");
    if (!(delta > 0.0 && delta < 1.0))
        throw PreconditionError("0 < delta < 1 violated: delta=" + num(delta));
    const double required = 3.5 * (std::log(static_cast<double>(d)) / static_cast<double>(k) + 1.0);
    if (!(T >= required))
        throw PreconditionError("T ≥ 7/2((log d)/k + 1) violated: T=" + num(T) +
                                ", required ≥ " + num(required));
    const double floor_delta = std::exp(-static_cast<double>(k));
    if (delta < floor_delta)
        throw PreconditionError("δ ≥ e^{-k} violated: delta=" + num(delta) +
                                ", required ≥ " + num(floor_delta));
}

double theorem2_shape(std::size_t k, std::size_t d, double T, double delta) {
    check_theorem2_preconditions(k, d, T, delta);
    const double dd = static_cast<double>(d);
    return dd * std::sqrt(T / static_cast<double>(k) * std::log((dd + 3.0) / delta));
}

double theorem2_bound(std::size_t k, std::size_t d, double T, double delta, double C, double bias) {
    if (!(C > 0.0)) throw ConfigError("C must be positive");
    if (!(bias >= 0.0)) throw ConfigError("bias must be >= 0");
    return C * theorem2_shape(k, d, T, delta) + bias;
}

bool check_order_stat_event(const PseudoUniformSample& u, std::size_t k, double T) {
    if (k < 1) throw DomainError("k must be >= 1");
    const std::size_t m = lattice_index(k, T);
    if (m < 1) throw DomainError("floor(k T) must be >= 1");
    if (m > u.n())
        throw DomainError("floor(k T) = " + std::to_string(m) + " exceeds n = " + std::to_string(u.n()));
    const double scale = static_cast<double>(u.n()) / static_cast<double>(k);
    std::vector<double> col;
    for (std::size_t j = 0; j < u.d(); ++j) {
        auto c = u.values.col(j);
        col.assign(c.begin(), c.end());
        auto nth = col.begin() + static_cast<std::ptrdiff_t>(m - 1);
        std::nth_element(col.begin(), nth, col.end());
        if (scale * *nth > 2.0 * T) return false;
    }
    return true;
}

SupResult check_lemma2(const PseudoUniformSample& u, std::size_t k, double T, const StdfModel& model,
                       std::optional<double> grid_step) {
    return lemma2_statistic(u, k, T, model, grid_step);
}

double lattice_rounding_sup(std::size_t k, double T, std::size_t d) {
    if (k < 1) throw DomainError("k must be >= 1");
    const std::size_t M = lattice_index(k, T);
    const double kd = static_cast<double>(k);
    // A full cell of width 1/k exists when M >= 1; otherwise the only cell is [0, T].
    const double widest = M >= 1 ? 1.0 / kd : T;
    return static_cast<double>(d) * widest;
}

Theorem2Terms theorem2_decomposition(const RankState& ranks, const PseudoUniformSample& u,
                                     std::size_t k, double T, const StdfModel& model) {
    if (ranks.d != 2 || u.d() != 2 || model.d != 2)
        throw DomainError("theorem2_decomposition is implemented for d = 2");
    if (u.n() != ranks.n) throw DomainError("pseudo-uniform sample does not match ranks");
    const std::size_t M = lattice_extent(k, T, ranks.n);
    const double kd = static_cast<double>(k);
    const double scale = static_cast<double>(ranks.n) / kd;
    const auto e = cell_edges(k, T, M);
    const auto us = sorted_columns(u.values);
    auto u_at = [&](std::size_t j, std::size_t m) { return m == 0 ? 0.0 : us[j][m - 1]; };

    Theorem2Terms t;
    t.lattice_rounding = lattice_rounding_sup(k, T, 2);
    std::array<double, 2> uu{}, v{}, x{};
    sweep_lattice_2d(ranks, M, M, [&](std::size_t a, std::span<const std::uint32_t> counts) {
        for (std::size_t b = 0; b <= M; ++b) {
            const double ln = static_cast<double>(counts[b]) / kd;
            uu = {u_at(0, a), u_at(1, b)};
            v = {scale * uu[0], scale * uu[1]};
            const double f = scale * tail_union_prob(model, uu);
            const double lv = eval_stdf(model, v);
            x = {e[a], e[b]};
            const double l_lo = eval_stdf(model, x);
            const double l_lattice = l_lo;
            x = {e[a + 1], e[b + 1]};
            const double l_hi = eval_stdf(model, x);
            t.total = std::max({t.total, std::abs(ln - l_lo), std::abs(ln - l_hi)});
            t.substitution = std::max(t.substitution, std::abs(ln - f));
            t.bias = std::max(t.bias, std::abs(f - lv));
            t.l_gap = std::max({t.l_gap, std::abs(lv - l_lo), std::abs(lv - l_hi)});
            t.order_stat_gap = std::max(t.order_stat_gap, std::abs(lv - l_lattice));
        }
    });
    return t;
}

void ExperimentConfig::validate() const {
    model.validate();
    if (n == 0) throw ConfigError("n must be >= 1");
    if (k_schedule.empty()) throw ConfigError("k_schedule must not be empty");
    for (std::size_t i = 0; i < k_schedule.size(); ++i) {
        const auto k = k_schedule[i];
        if (k < 1) throw ConfigError("k values must be >= 1");
        if (i > 0 && k <= k_schedule[i - 1]) throw ConfigError("k_schedule must be strictly increasing");
        if (10 * k > n)
            throw ConfigError("k = " + std::to_string(k) + " exceeds n/10 = " + num(n / 10.0));
        if (static_cast<double>(k) * T > static_cast<double>(n))
            throw DomainError("k*T = " + num(static_cast<double>(k) * T) + " exceeds n");
    }
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (!margins.empty() && margins.size() != model.d)
        throw ConfigError("margins must have one entry per coordinate");
    if (model.d >= 3 && !grid_step)
        throw ConfigError("d = " + std::to_string(model.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t k, std::size_t trial) {
    return derive_seed(derive_seed(master, k, "k"), trial, "trial");
}

DeviationReport run_rate_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t nk = config.k_schedule.size();
    DeviationReport rep;
    rep.trials.resize(nk * config.trials);
    parallel_for(rep.trials.size(), config.workers, [&](std::size_t job) {
        const std::size_t ki = job / config.trials;
        const std::size_t trial = job % config.trials;
        auto& rec = rep.trials[job];
        rec.k = config.k_schedule[ki];
        rec.trial = trial;
        GeneratorSpec spec{config.model, config.n, config.margins, trial_seed(config.seed, rec.k, trial)};
        const auto sample = generate(spec);
        try {
            const auto ranks = build_ranks(sample);
            const auto sup = sup_stdf_deviation(ranks, rec.k, config.model, config.T, config.grid_step);
            rec.deviation = sup.value;
            rec.slack = sup.slack;
        } catch (const DataError& e) {
            rec.aborted = true;
            rec.error = e.what();
        }
    });

    std::vector<double> ks, medians;
    for (std::size_t ki = 0; ki < nk; ++ki) {
        KSummary s;
        s.k = config.k_schedule[ki];
        std::vector<double> devs;
        for (std::size_t t = 0; t < config.trials; ++t) {
            const auto& rec = rep.trials[ki * config.trials + t];
            if (rec.aborted) ++s.aborted;
            else devs.push_back(rec.deviation);
        }
        s.completed = devs.size();
        if (!devs.empty()) {
            s.median = median(devs);
            s.upper_quantile = quantile(devs, 1.0 - config.delta);
            s.mean = mean(devs);
            s.std_error = std_error(devs);
        }
        const double t = static_cast<double>(s.k) / static_cast<double>(config.n);
        s.bias_T = bias_sup(config.model, t, config.T, config.d() <= 2 ? 201 : 21);
        s.bias_2T = 2.0 * config.T * t <= 1.0
                        ? bias_sup(config.model, t, 2.0 * config.T, config.d() <= 2 ? 201 : 21)
                        : std::numeric_limits<double>::quiet_NaN();
        try {
            s.bound_shape = theorem2_shape(s.k, config.d(), config.T, config.delta);
        } catch (const PreconditionError&) {
            s.bound_shape = std::numeric_limits<double>::quiet_NaN();
        }
        if (s.completed > 0 && s.median > 0.0) {
            ks.push_back(static_cast<double>(s.k));
            medians.push_back(s.median);
        }
        rep.per_k.push_back(s);
    }
    if (ks.size() >= 2) {
        rep.slope = fit_log_log(ks, medians);
        rep.slope_valid = true;
    }
    return rep;
}

} // namespace stdf
