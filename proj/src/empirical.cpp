#include "stdf/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stdf/error.hpp"

namespace stdf {

RankState build_ranks(const Sample& sample) {
    require_finite(sample.values);
    RankState rs;
    rs.n = sample.n();
    rs.d = sample.d();
    if (rs.n == 0 || rs.d == 0) throw DataError("empty sample");
    if (rs.n > std::numeric_limits<std::uint32_t>::max()) throw DataError("sample too large");
    rs.order_stats.resize(rs.d);
    rs.ranks.resize(rs.d);
    rs.row_of.resize(rs.d);
    std::vector<std::uint32_t> idx(rs.n);
    for (std::size_t j = 0; j < rs.d; ++j) {
        auto col = sample.values.col(j);
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return col[a] < col[b]; });
        for (std::size_t r = 1; r < rs.n; ++r) {
            if (col[idx[r]] == col[idx[r - 1]]) {
                auto a = std::min(idx[r], idx[r - 1]) + 1;
                auto b = std::max(idx[r], idx[r - 1]) + 1;
                throw DataError("tie in column " + std::to_string(j + 1) + ": rows " +
                                std::to_string(a) + " and " + std::to_string(b) +
                                " share the value " + std::to_string(col[idx[r]]));
            }
        }
        auto& os = rs.order_stats[j];
        auto& rk = rs.ranks[j];
        os.resize(rs.n);
        rk.resize(rs.n);
        for (std::size_t r = 0; r < rs.n; ++r) {
            os[r] = col[idx[r]];
            rk[idx[r]] = static_cast<std::uint32_t>(r + 1);
        }
        rs.row_of[j] = idx;
    }
    return rs;
}

std::size_t lattice_index(std::size_t k, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("tail point needs finite x_j >= 0");
    const double p = static_cast<double>(k) * x;
    double m = std::floor(p);
    if (p - m > 1.0 - 1e-9) m += 1.0;
    return static_cast<std::size_t>(m);
}

namespace {

std::vector<std::size_t> lattice_of(const RankState& ranks, std::size_t k, std::span<const double> x) {
    if (k < 1 || k > ranks.n)
        throw DomainError("k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                          ", n=" + std::to_string(ranks.n) + ")");
    if (x.size() != ranks.d)
        throw DomainError("tail point has dimension " + std::to_string(x.size()) + ", sample has " +
                          std::to_string(ranks.d));
    std::vector<std::size_t> m(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) m[j] = lattice_index(k, x[j]);
    return m;
}

void check_lattice(std::span<const std::size_t> m, std::size_t n, std::size_t d) {
    if (m.size() != d) throw DomainError("lattice index has wrong dimension");
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] > n)
            throw DomainError("floor(k*x_" + std::to_string(j + 1) + ") = " + std::to_string(m[j]) +
                              " exceeds n = " + std::to_string(n));
}

} // namespace

std::size_t empirical_stdf_count(const RankState& ranks, std::span<const std::size_t> m) {
    check_lattice(m, ranks.n, ranks.d);
    const auto n = ranks.n;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ranks.d; ++j) {
            if (m[j] > 0 && ranks.ranks[j][i] >= n - m[j] + 1) {
                ++count;
                break;
            }
        }
    }
    return count;
}

double empirical_stdf(const RankState& ranks, std::size_t k, std::span<const double> x) {
    auto m = lattice_of(ranks, k, x);
    return static_cast<double>(empirical_stdf_count(ranks, m)) / static_cast<double>(k);
}

std::size_t empirical_tilde_F_count(const PseudoUniformSample& u, std::span<const double> x) {
    if (x.size() != u.d()) throw DomainError("threshold vector has wrong dimension");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("F~_n needs thresholds in [0,1]");
    std::size_t count = 0;
    for (std::size_t i = 0; i < u.n(); ++i) {
        for (std::size_t j = 0; j < u.d(); ++j) {
            if (u.values(i, j) <= x[j]) {
                ++count;
                break;
            }
        }
    }
    return count;
}

double empirical_tilde_F(const PseudoUniformSample& u, std::span<const double> x) {
    return static_cast<double>(empirical_tilde_F_count(u, x)) / static_cast<double>(u.n());
}

PseudoUniformSample standardize(const Sample& sample, const std::vector<Margin>& true_margins) {
    if (true_margins.size() != sample.d())
        throw ConfigError("got " + std::to_string(true_margins.size()) + " margins for " +
                          std::to_string(sample.d()) + " columns");
    PseudoUniformSample u{Matrix(sample.n(), sample.d())};
    for (std::size_t j = 0; j < sample.d(); ++j) {
        const auto& mj = true_margins[j];
        for (std::size_t i = 0; i < sample.n(); ++i) {
            const double x = sample.values(i, j);
            double v;
            // Closed-form complements keep precision in the upper tail.
            switch (mj.kind) {
            case Margin::Kind::uniform: v = 1.0 - x; break;
            case Margin::Kind::exponential: v = std::exp(-x); break;
            case Margin::Kind::pareto: v = x <= 1.0 ? 1.0 : std::pow(x, -mj.shape); break;
            default: v = 1.0 - mj.cdf(x); break;
            }
            u.values(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return u;
}

std::vector<std::vector<double>> sorted_columns(const Matrix& m) {
    std::vector<std::vector<double>> out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto c = m.col(j);
        out[j].assign(c.begin(), c.end());
        std::sort(out[j].begin(), out[j].end());
    }
    return out;
}

std::size_t lemma1_count(const PseudoUniformSample& u, std::span<const std::size_t> m) {
    check_lattice(m, u.n(), u.d());
    // Threshold U^j_(m_j); m_j = 0 means "no condition", encoded as -1.
    std::vector<double> thr(u.d(), -1.0);
    std::vector<double> scratch(u.n());
    for (std::size_t j = 0; j < u.d(); ++j) {
        if (m[j] == 0) continue;
        auto c = u.values.col(j);
        scratch.assign(c.begin(), c.end());
        auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(m[j] - 1);
        std::nth_element(scratch.begin(), nth, scratch.end());
        thr[j] = *nth;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < u.n(); ++i) {
        for (std::size_t j = 0; j < u.d(); ++j) {
            if (u.values(i, j) <= thr[j]) {
                ++count;
                break;
            }
        }
    }
    return count;
}

double lemma1_rhs(const RankState& ranks, const PseudoUniformSample& u, std::size_t k,
                  std::span<const double> x) {
    if (u.n() != ranks.n || u.d() != ranks.d)
        throw DomainError("pseudo-uniform sample does not match the ranked sample");
    auto m = lattice_of(ranks, k, x);
    return static_cast<double>(lemma1_count(u, m)) / static_cast<double>(k);
}

void sweep_lattice_2d(const RankState& ranks, std::size_t max1, std::size_t max2,
                      const std::function<void(std::size_t, std::span<const std::uint32_t>)>& row) {
    if (ranks.d != 2) throw DomainError("sweep_lattice_2d needs d = 2");
    const auto n = ranks.n;
    if (max1 > n || max2 > n) throw DomainError("lattice extent exceeds n");
    // joint[b] = #{i : top-rank in column 1 <= m1 and top-rank in column 2 == b}
    std::vector<std::uint32_t> joint(max2 + 1, 0);
    std::vector<std::uint32_t> counts(max2 + 1, 0);
    for (std::size_t m1 = 0; m1 <= max1; ++m1) {
        if (m1 >= 1) {
            const auto i = ranks.row_of[0][n - m1];  // rank n+1-m1
            const std::size_t b = n + 1 - ranks.ranks[1][i];
            if (b <= max2) ++joint[b];
        }
        std::uint32_t cum = 0;
        for (std::size_t m2 = 0; m2 <= max2; ++m2) {
            cum += joint[m2];
            counts[m2] = static_cast<std::uint32_t>(m1 + m2 - cum);
        }
        row(m1, counts);
    }
}

} // namespace stdf

namespace stdf {

PseudoUniformSample draw_pseudo_uniforms(const StdfModel& model, std::size_t n, std::uint64_t seed) {
    GeneratorSpec spec{model, n, {}, seed};
    auto s = generate(spec);
    PseudoUniformSample u{Matrix(n, model.d)};
    for (std::size_t j = 0; j < model.d; ++j)
        for (std::size_t i = 0; i < n; ++i) u.values(i, j) = 1.0 - s.values(i, j);
    return u;
}

} // namespace stdf
