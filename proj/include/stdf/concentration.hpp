#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stdf/empirical.hpp"
#include "stdf/oracles.hpp"

namespace stdf {

/// The class {[ (k/n) x, inf )^c : 0 <= x_j <= T } acting on standardized
/// variables; VC dimension d. A point u belongs to the set indexed by x when
/// some coordinate is strictly below (k/n) x_j.
struct RectClassSpec {
    std::size_t d = 2;
    std::size_t k = 1;
    std::size_t n = 1;
    double T = 1.0;

    double scale() const noexcept { return static_cast<double>(k) / static_cast<double>(n); }
    /// Largest threshold (k/n) T; the union of the class is {some u_j < reach}.
    /// Rounding just above 1 is clipped.
    double reach() const noexcept { return std::min(1.0, scale() * T); }
    std::size_t vc_dimension() const noexcept { return d; }
    void validate() const;
};

struct BoundParams {
    std::size_t n = 1;
    double V = 1.0;
    double p = 0.0;
    double delta = 0.05;
    double C = 1.0;

    void validate() const;
};

/// Supremum over the class with how it was obtained. `slack` is zero for the
/// exact cell scan; for the grid fallback it bounds the error of the analytic
/// part from the grid step (l1-Lipschitz argument).
struct SupResult {
    double value = 0.0;
    double slack = 0.0;
    bool exact = true;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

struct RademacherEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::size_t n = 0;
    double p = 0.0;
    std::vector<double> values;  // per-trial relative sup
};

/// p = P(some U^j < (k/n) T) under the model; p <= d T k / n.
double union_mass(const RectClassSpec& cls, const StdfModel& model);

/// sup over x in [0,T]^d of | C_n(A_x) - C(A_x) | with C the analytic law of
/// the model. Exact for d <= 2 (cell scan over data breakpoints); d >= 3 needs
/// `grid_step` (in x units) and reports the discretization slack.
SupResult sup_empirical_deviation(const PseudoUniformSample& u, const RectClassSpec& cls,
                                  const StdfModel& model, std::optional<double> grid_step = {});

/// Same scan for the normalized Lemma-2 statistic (n/k) sup |F~_n - F~| over
/// (k/n)[0,T]^d.
SupResult lemma2_statistic(const PseudoUniformSample& u, std::size_t k, double T,
                           const StdfModel& model, std::optional<double> grid_step = {});

/// sup over the class of | sum_i sigma_i 1{u_i in A} | (unnormalized), exact for d <= 2.
SupResult sup_signed_sum(const PseudoUniformSample& u, std::span<const int> signs,
                         const RectClassSpec& cls, std::optional<double> grid_step = {});

/// C [ sqrt(p) sqrt(V log(1/delta) / n) + log(1/delta) / n ].
double theorem1_bound(const BoundParams& params);
/// C sqrt(p) sqrt(V log(1/delta) / n); requires delta >= exp(-n p).
double remark2_bound(const BoundParams& params);
/// 2 sqrt(p) sqrt((V log(2 e n / V) + log(4/delta)) / n); requires n >= V.
double remark1_bound(const BoundParams& params);

/// Monte Carlo estimate of E sup_A (1/(n p)) |sum sigma_i 1{X_i in A}|. Each
/// trial draws a fresh sample and fresh signs from streams derived from
/// (seed, trial).
RademacherEstimate relative_rademacher(const StdfModel& model, const RectClassSpec& cls,
                                       std::size_t trials, std::uint64_t seed,
                                       unsigned workers = 0,
                                       std::optional<double> grid_step = {});

/// 1 when some set of the class contains exactly one of a, b.
bool separated(std::span<const double> a, std::span<const double> b, double reach);

/// Monte Carlo estimate of q = E sup_A |1{X' in A} - 1{X in A}| over
/// independent pairs. `identical_pairs` couples X' = X (test hook).
MonteCarloEstimate class_complexity_q(const StdfModel& model, const RectClassSpec& cls,
                                      std::size_t pairs, std::uint64_t seed,
                                      bool identical_pairs = false);

} // namespace stdf
