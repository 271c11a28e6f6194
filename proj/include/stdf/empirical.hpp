#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stdf/sample.hpp"
#include "stdf/samplers.hpp"

namespace stdf {

/// Within-column ranks (1 = smallest) and ascending order statistics of a
/// tie-free sample. Immutable once built.
struct RankState {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<double>> order_stats;    // order_stats[j][r-1] = X^j_(r)
    std::vector<std::vector<std::uint32_t>> ranks;   // ranks[j][i] = rank of X_i^j
    std::vector<std::vector<std::uint32_t>> row_of;  // row_of[j][r-1] = i with rank r
};

/// Standardized variables U = 1 - F_j(X^j), entries in [0,1].
struct PseudoUniformSample {
    Matrix values;

    std::size_t n() const noexcept { return values.rows(); }
    std::size_t d() const noexcept { return values.cols(); }
};

/// Throws DataError naming the column and the two rows on the first tie.
RankState build_ranks(const Sample& sample);

/// floor(k x). Products within 1e-9 below an integer snap up to it, so x = m/k
/// maps back to m despite rounding in the division.
std::size_t lattice_index(std::size_t k, double x);

/// k * l_n at lattice indices m_j = floor(k x_j): number of rows with
/// rank(X_i^j) >= n - m_j + 1 for some j with m_j >= 1.
std::size_t empirical_stdf_count(const RankState& ranks, std::span<const std::size_t> m);

/// l_n(x) = (1/k) #{i : X_i^1 >= X^1_(n-floor(k x_1)+1) or ...}. A coordinate
/// with floor(k x_j) = 0 contributes no condition.
double empirical_stdf(const RankState& ranks, std::size_t k, std::span<const double> x);

/// n * F~_n(x): rows with some U_i^j <= x_j.
std::size_t empirical_tilde_F_count(const PseudoUniformSample& u, std::span<const double> x);

/// F~_n(x) = (1/n) #{i : U_i^1 <= x_1 or ... or U_i^d <= x_d}, x in [0,1]^d.
double empirical_tilde_F(const PseudoUniformSample& u, std::span<const double> x);

/// Entrywise 1 - F_j(X_i^j) with the true margins (synthetic data only).
PseudoUniformSample standardize(const Sample& sample, const std::vector<Margin>& true_margins);

/// Ascending copy of every column.
std::vector<std::vector<double>> sorted_columns(const Matrix& m);

/// n F~_n(U^1_(m_1), ..., U^d_(m_d)) with U_(0) := 0 contributing nothing.
std::size_t lemma1_count(const PseudoUniformSample& u, std::span<const std::size_t> m);

/// (n/k) F~_n at the floor(k x_j)-th smallest U of each column. Equals
/// empirical_stdf exactly when u is the standardization of the ranked sample.
double lemma1_rhs(const RankState& ranks, const PseudoUniformSample& u, std::size_t k,
                  std::span<const double> x);

/// Two-dimensional lattice sweep. Calls row(m1, counts) for m1 = 0..max1 where
/// counts[m2] = k * l_n at lattice indices (m1, m2), m2 = 0..max2. O(max1*max2).
void sweep_lattice_2d(const RankState& ranks, std::size_t max1, std::size_t max2,
                      const std::function<void(std::size_t, std::span<const std::uint32_t>)>& row);

} // namespace stdf

namespace stdf {

/// Draws n rows from `model` with uniform margins and returns U = 1 - V.
PseudoUniformSample draw_pseudo_uniforms(const StdfModel& model, std::size_t n, std::uint64_t seed);

} // namespace stdf
