#include "stdf/concentration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "stdf/error.hpp"
#include "stdf/parallel.hpp"
#include "stdf/rng.hpp"
#include "stdf/stats.hpp"

namespace stdf {

void RectClassSpec::validate() const {
    if (d == 0) throw ConfigError("class dimension must be >= 1");
    if (n == 0) throw ConfigError("n must be >= 1");
    if (k == 0) throw ConfigError("k must be >= 1");
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be finite and >= 0");
    if (scale() * T > 1.0 + 1e-12)
        throw DomainError("(k/n) T = " + std::to_string(scale() * T) + " exceeds 1");
}

void BoundParams::validate() const {
    if (n == 0) throw ConfigError("n must be >= 1");
    if (!(V > 0.0)) throw ConfigError("VC dimension must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    if (!(C > 0.0)) throw ConfigError("C must be positive");
}

double union_mass(const RectClassSpec& cls, const StdfModel& model) {
    cls.validate();
    if (model.d != cls.d) throw ConfigError("model and class dimensions differ");
    std::vector<double> u(cls.d, cls.reach());
    return tail_union_prob(model, u);
}

namespace {

// Breakpoints of one coordinate: sorted values not above `reach`, and the
// 1-based rank of each point among them (0 when above reach).
struct Axis {
    std::vector<double> breaks;
    std::vector<std::uint32_t> point_at;
    std::vector<std::uint32_t> rank;
    double reach = 0.0;

    std::size_t size() const noexcept { return breaks.size(); }
    // Left end of cell r (r = 0..size), and right end of cell r is edge(r+1).
    double edge(std::size_t r) const noexcept {
        if (r == 0) return 0.0;
        if (r > breaks.size()) return reach;
        return breaks[r - 1];
    }
};

Axis make_axis(std::span<const double> col, double reach) {
    Axis a;
    a.reach = reach;
    a.rank.assign(col.size(), 0);
    for (std::size_t i = 0; i < col.size(); ++i)
        if (col[i] <= reach) a.point_at.push_back(static_cast<std::uint32_t>(i));
    std::sort(a.point_at.begin(), a.point_at.end(),
              [&](auto x, auto y) { return col[x] < col[y]; });
    a.breaks.reserve(a.point_at.size());
    for (std::size_t r = 0; r < a.point_at.size(); ++r) {
        a.breaks.push_back(col[a.point_at[r]]);
        a.rank[a.point_at[r]] = static_cast<std::uint32_t>(r + 1);
    }
    return a;
}

// Calls row(r1, S) with S[r2] = weight of the set {u1 below cell r1 or u2 below
// cell r2}, for every cell pair.
template <class RowFn>
void scan_cells_2d(const Axis& a1, const Axis& a2, std::span<const double> w, RowFn&& row) {
    const std::size_t m1 = a1.size(), m2 = a2.size();
    std::vector<double> w2_prefix(m2 + 1, 0.0);
    for (std::size_t r = 1; r <= m2; ++r) w2_prefix[r] = w2_prefix[r - 1] + w[a2.point_at[r - 1]];
    std::vector<double> joint(m2 + 1, 0.0);
    std::vector<double> s(m2 + 1, 0.0);
    double w1 = 0.0;
    for (std::size_t r1 = 0; r1 <= m1; ++r1) {
        if (r1 >= 1) {
            const auto i = a1.point_at[r1 - 1];
            w1 += w[i];
            if (a2.rank[i] > 0) joint[a2.rank[i]] += w[i];
        }
        double cum = 0.0;
        for (std::size_t r2 = 0; r2 <= m2; ++r2) {
            cum += joint[r2];
            s[r2] = w1 + w2_prefix[r2] - cum;
        }
        row(r1, std::span<const double>(s));
    }
}

// Points that can belong to some set of the class.
std::vector<std::size_t> union_points(const PseudoUniformSample& u, double reach) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < u.n(); ++i)
        for (std::size_t j = 0; j < u.d(); ++j)
            if (u.values(i, j) < reach) {
                pts.push_back(i);
                break;
            }
    return pts;
}

// Calls fn(thresholds) for every point of the grid {0, h, 2h, ..., T}^d
// (the last value clipped to T), thresholds scaled by `scale`.
template <class Fn>
void for_each_grid_point(std::size_t d, double T, double h, double scale, Fn&& fn) {
    if (!(h > 0.0)) throw ConfigError("grid step must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(T / h - 1e-12));
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> c(d);
    for (;;) {
        for (std::size_t j = 0; j < d; ++j)
            c[j] = scale * std::min(T, h * static_cast<double>(idx[j]));
        fn(std::span<const double>(c));
        std::size_t j = 0;
        while (j < d && ++idx[j] == steps + 1) idx[j++] = 0;
        if (j == d) return;
    }
}

double grid_weight(const PseudoUniformSample& u, std::span<const std::size_t> pts,
                   std::span<const double> w, std::span<const double> c) {
    double s = 0.0;
    for (auto i : pts)
        for (std::size_t j = 0; j < u.d(); ++j)
            if (u.values(i, j) < c[j]) {
                s += w[i];
                break;
            }
    return s;
}

// sup over thresholds c in [0, reach]^d of |(1/n) #{u in A_c} - F~(c)|.
SupResult sup_mass_deviation(const PseudoUniformSample& u, double reach, const StdfModel& model,
                             std::optional<double> grid_step, double T) {
    const std::size_t d = u.d();
    const double n = static_cast<double>(u.n());
    if (model.d != d) throw ConfigError("model and sample dimensions differ");
    std::vector<double> ones(u.n(), 1.0);
    SupResult res;
    if (d == 1) {
        const Axis a = make_axis(u.values.col(0), reach);
        std::array<double, 1> c{};
        for (std::size_t r = 0; r <= a.size(); ++r) {
            const double cnt = static_cast<double>(r) / n;
            c[0] = a.edge(r);
            const double lo = tail_union_prob(model, c);
            c[0] = a.edge(r + 1);
            const double hi = tail_union_prob(model, c);
            res.value = std::max({res.value, std::abs(cnt - lo), std::abs(cnt - hi)});
        }
        return res;
    }
    if (d == 2) {
        const Axis a1 = make_axis(u.values.col(0), reach);
        const Axis a2 = make_axis(u.values.col(1), reach);
        const std::size_t m2 = a2.size();
        auto mass_row = [&](std::size_t r1, std::vector<double>& out) {
            std::array<double, 2> c{a1.edge(r1), 0.0};
            out.resize(m2 + 2);
            for (std::size_t r2 = 0; r2 <= m2 + 1; ++r2) {
                c[1] = a2.edge(r2);
                out[r2] = tail_union_prob(model, c);
            }
        };
        std::vector<double> lo_row, hi_row;
        mass_row(0, hi_row);
        scan_cells_2d(a1, a2, ones, [&](std::size_t r1, std::span<const double> s) {
            std::swap(lo_row, hi_row);
            mass_row(r1 + 1, hi_row);
            for (std::size_t r2 = 0; r2 <= m2; ++r2) {
                const double cnt = s[r2] / n;
                res.value = std::max(
                    {res.value, std::abs(cnt - lo_row[r2]), std::abs(cnt - hi_row[r2 + 1])});
            }
        });
        return res;
    }
    if (!grid_step)
        throw ConfigError("d = " + std::to_string(d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    const auto pts = union_points(u, reach);
    const double scale = reach / (T > 0.0 ? T : 1.0);
    for_each_grid_point(d, T, *grid_step, scale, [&](std::span<const double> c) {
        const double cnt = grid_weight(u, pts, ones, c) / n;
        res.value = std::max(res.value, std::abs(cnt - tail_union_prob(model, c)));
    });
    res.exact = false;
    res.slack = scale * static_cast<double>(d) * *grid_step;
    return res;
}

} // namespace

SupResult sup_empirical_deviation(const PseudoUniformSample& u, const RectClassSpec& cls,
                                  const StdfModel& model, std::optional<double> grid_step) {
    cls.validate();
    if (u.d() != cls.d) throw ConfigError("sample and class dimensions differ");
    if (cls.d >= 3 && !grid_step)
        throw ConfigError("d = " + std::to_string(cls.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    return sup_mass_deviation(u, cls.reach(), model, grid_step, cls.T);
}

SupResult lemma2_statistic(const PseudoUniformSample& u, std::size_t k, double T,
                           const StdfModel& model, std::optional<double> grid_step) {
    RectClassSpec cls{u.d(), k, u.n(), T};
    cls.validate();
    if (cls.d >= 3 && !grid_step)
        throw ConfigError("d = " + std::to_string(cls.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    auto r = sup_mass_deviation(u, cls.reach(), model, grid_step, T);
    const double scale = 1.0 / cls.scale();
    r.value *= scale;
    r.slack *= scale;
    return r;
}

SupResult sup_signed_sum(const PseudoUniformSample& u, std::span<const int> signs,
                         const RectClassSpec& cls, std::optional<double> grid_step) {
    cls.validate();
    if (u.d() != cls.d) throw ConfigError("sample and class dimensions differ");
    if (signs.size() != u.n()) throw ConfigError("need one sign per observation");
    std::vector<double> w(signs.begin(), signs.end());
    const double reach = cls.reach();
    SupResult res;
    if (cls.d == 1) {
        const Axis a = make_axis(u.values.col(0), reach);
        double s = 0.0;
        for (std::size_t r = 1; r <= a.size(); ++r) {
            s += w[a.point_at[r - 1]];
            res.value = std::max(res.value, std::abs(s));
        }
        return res;
    }
    if (cls.d == 2) {
        const Axis a1 = make_axis(u.values.col(0), reach);
        const Axis a2 = make_axis(u.values.col(1), reach);
        scan_cells_2d(a1, a2, w, [&](std::size_t, std::span<const double> s) {
            for (double v : s) res.value = std::max(res.value, std::abs(v));
        });
        return res;
    }
    if (!grid_step)
        throw ConfigError("d = " + std::to_string(cls.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    const auto pts = union_points(u, reach);
    for_each_grid_point(cls.d, cls.T, *grid_step, cls.scale(), [&](std::span<const double> c) {
        res.value = std::max(res.value, std::abs(grid_weight(u, pts, w, c)));
    });
    res.exact = false;
    return res;
}

double theorem1_bound(const BoundParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    const double log_term = std::log(1.0 / params.delta);
    return params.C * (std::sqrt(params.p) * std::sqrt(params.V / n * log_term) + log_term / n);
}

double remark2_bound(const BoundParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    if (params.delta < std::exp(-n * params.p))
        throw PreconditionError("delta >= exp(-n p) violated: delta=" + std::to_string(params.delta) +
                                ", exp(-n p)=" + std::to_string(std::exp(-n * params.p)));
    return params.C * std::sqrt(params.p) * std::sqrt(params.V / n * std::log(1.0 / params.delta));
}

double remark1_bound(const BoundParams& params) {
    params.validate();
    const double n = static_cast<double>(params.n);
    if (n < params.V)
        throw DomainError("n >= V required for the shattering bound: n=" + std::to_string(params.n) +
                          ", V=" + std::to_string(params.V));
    const double growth = params.V * std::log(2.0 * std::numbers::e * n / params.V);
    return 2.0 * std::sqrt(params.p) * std::sqrt((growth + std::log(4.0 / params.delta)) / n);
}

RademacherEstimate relative_rademacher(const StdfModel& model, const RectClassSpec& cls,
                                       std::size_t trials, std::uint64_t seed, unsigned workers,
                                       std::optional<double> grid_step) {
    cls.validate();
    if (trials < 2) throw ConfigError("relative_rademacher needs at least 2 trials");
    if (cls.d >= 3 && !grid_step)
        throw ConfigError("d = " + std::to_string(cls.d) +
                          " needs an explicit grid step (exact scan covers d <= 2)");
    const double p = union_mass(cls, model);
    RademacherEstimate est;
    est.trials = trials;
    est.n = cls.n;
    est.p = p;
    std::vector<double> values(trials, 0.0);
    if (p == 0.0) {
        est.values = std::move(values);
        return est;
    }
    parallel_for(trials, workers, [&](std::size_t t) {
        const auto u = draw_pseudo_uniforms(model, cls.n, derive_seed(seed, t, "rademacher-sample"));
        auto eng = make_engine(seed, t, "rademacher-signs");
        std::vector<int> sigma(cls.n);
        for (auto& s : sigma) s = rademacher(eng);
        const auto sup = sup_signed_sum(u, sigma, cls, grid_step);
        values[t] = sup.value / (static_cast<double>(cls.n) * p);
    });
    est.mean = mean(values);
    est.std_error = std_error(values);
    est.values = std::move(values);
    return est;
}

bool separated(std::span<const double> a, std::span<const double> b, double reach) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < std::min(b[j], reach)) return true;
        if (b[j] < std::min(a[j], reach)) return true;
    }
    return false;
}

MonteCarloEstimate class_complexity_q(const StdfModel& model, const RectClassSpec& cls,
                                      std::size_t pairs, std::uint64_t seed, bool identical_pairs) {
    cls.validate();
    if (pairs < 2) throw ConfigError("class_complexity_q needs at least 2 pairs");
    if (model.d != cls.d) throw ConfigError("model and class dimensions differ");
    const auto first = draw_pseudo_uniforms(model, pairs, derive_seed(seed, 0, "q-first"));
    const auto second = identical_pairs
                            ? first
                            : draw_pseudo_uniforms(model, pairs, derive_seed(seed, 1, "q-second"));
    std::size_t hits = 0;
    std::vector<double> a(cls.d), b(cls.d);
    for (std::size_t i = 0; i < pairs; ++i) {
        for (std::size_t j = 0; j < cls.d; ++j) {
            a[j] = first.values(i, j);
            b[j] = second.values(i, j);
        }
        if (separated(a, b, cls.reach())) ++hits;
    }
    const double q = static_cast<double>(hits) / static_cast<double>(pairs);
    return {q, std::sqrt(q * (1.0 - q) / static_cast<double>(pairs - 1)), pairs};
}

} // namespace stdf
