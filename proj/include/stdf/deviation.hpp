#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stdf/concentration.hpp"
#include "stdf/empirical.hpp"
#include "stdf/oracles.hpp"
#include "stdf/samplers.hpp"
#include "stdf/stats.hpp"

namespace stdf {

/// sup over x in [0,T]^d of |l_n(x) - l(x)|. For d <= 2 the scan is exact:
/// l_n is constant on the cells [m/k, (m+1)/k) and l is monotone and
/// continuous, so each cell contributes its two extreme corners. For d >= 3
/// the maximum over the grid with step `grid_step` is returned and d * step is
/// reported as slack. Requires k T <= n.
SupResult sup_stdf_deviation(const RankState& ranks, std::size_t k, const StdfModel& model, double T,
                             std::optional<double> grid_step = {});

/// Throws PreconditionError naming the violated constraint:
/// T >= 7/2 ((log d)/k + 1), delta >= exp(-k), 0 < delta < 1.
void check_theorem2_preconditions(std::size_t k, std::size_t d, double T, double delta);

/// C d sqrt((T/k) log((d+3)/delta)) + bias.
double theorem2_bound(std::size_t k, std::size_t d, double T, double delta, double C, double bias);

/// Shape of the stochastic term, theorem2_bound with C = 1 and no bias.
double theorem2_shape(std::size_t k, std::size_t d, double T, double delta);

/// True iff (n/k) U^j_(floor(kT)) <= 2T for every column j.
bool check_order_stat_event(const PseudoUniformSample& u, std::size_t k, double T);

/// sup over [0,T]^d of (n/k) |F~_n((k/n)x) - F~((k/n)x)| (exact for d <= 2).
SupResult check_lemma2(const PseudoUniformSample& u, std::size_t k, double T, const StdfModel& model,
                       std::optional<double> grid_step = {});

/// Terms of the triangle decomposition of sup |l_n - l| at the empirical order
/// statistics v_j = (n/k) U^j_(floor(k x_j)):
///   substitution = sup |(n/k) F~_n(U_(m)) - (n/k) F~(U_(m))|
///   bias         = sup |(n/k) F~(U_(m)) - l(v)|
///   l_gap        = sup |l(v) - l(x)|
/// with l_gap split into order_stat_gap = sup |l(v) - l(m/k)| and the lattice
/// rounding sup.
struct Theorem2Terms {
    double total = 0.0;
    double substitution = 0.0;
    double bias = 0.0;
    double l_gap = 0.0;
    double order_stat_gap = 0.0;
    double lattice_rounding = 0.0;
};

/// d = 2 only; u must be the true standardization of the ranked sample.
Theorem2Terms theorem2_decomposition(const RankState& ranks, const PseudoUniformSample& u,
                                     std::size_t k, double T, const StdfModel& model);

/// sup over [0,T]^d of sum_j |floor(k x_j)/k - x_j|, i.e. d times the widest cell.
double lattice_rounding_sup(std::size_t k, double T, std::size_t d);

struct ExperimentConfig {
    StdfModel model = StdfModel::comonotone(2);
    std::size_t n = 0;
    std::vector<std::size_t> k_schedule;
    double T = 1.0;
    double delta = 0.05;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::optional<double> grid_step;
    std::vector<Margin> margins;
    unsigned workers = 0;

    std::size_t d() const noexcept { return model.d; }
    void validate() const;
};

struct TrialRecord {
    std::size_t k = 0;
    std::size_t trial = 0;
    double deviation = 0.0;
    double slack = 0.0;
    bool aborted = false;
    std::string error;
};

struct KSummary {
    std::size_t k = 0;
    std::size_t completed = 0;
    std::size_t aborted = 0;
    double median = 0.0;
    double upper_quantile = 0.0;  // level 1 - delta
    double mean = 0.0;
    double std_error = 0.0;
    double bias_T = 0.0;   // grid sup of the bias over [0,T]^d at t = k/n
    double bias_2T = 0.0;  // same over [0,2T]^d; NaN when 2 T k/n > 1
    double bound_shape = 0.0;
};

struct DeviationReport {
    std::vector<TrialRecord> trials;
    std::vector<KSummary> per_k;
    LineFit slope;  // log median deviation against log k
    bool slope_valid = false;
};

/// Streams are derived from (seed, k, trial), so the report does not depend on
/// the worker count. Trials whose sample contains ties are kept as aborted
/// records and excluded from the summaries.
DeviationReport run_rate_experiment(const ExperimentConfig& config);

/// Seed of the (k, trial) sample.
std::uint64_t trial_seed(std::uint64_t master, std::size_t k, std::size_t trial);

} // namespace stdf
