#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stdf/concentration.hpp"
#include "stdf/sample.hpp"
#include "stdf/samplers.hpp"
#include "stdf/stats.hpp"

namespace stdf {

struct LabeledSample {
    Matrix features;
    std::vector<int> labels;  // each -1 or +1

    std::size_t n() const noexcept { return features.rows(); }
    void validate() const;
};

/// x -> sign if x[coordinate] > threshold, else -sign.
struct AxisClassifier {
    std::size_t coordinate = 0;
    double threshold = 0.0;
    int sign = 1;

    int operator()(std::span<const double> x) const noexcept {
        return x[coordinate] > threshold ? sign : -sign;
    }
};

struct ClassifierFamily {
    std::vector<AxisClassifier> members;
    double vc_dimension = 1.0;  // declared, not estimated

    std::size_t size() const noexcept { return members.size(); }
    void validate(std::size_t d) const;
};

/// One "coordinate,threshold,sign" line per member; '#' starts a comment.
void write_family(std::ostream& out, const ClassifierFamily& family);
ClassifierFamily read_family(std::istream& in, double vc_dimension);

/// All (coordinate, threshold, sign) combinations of the given axes and thresholds.
ClassifierFamily axis_threshold_family(std::span<const std::size_t> coordinates,
                                       std::span<const double> thresholds, double vc_dimension);

enum class Norm { l1, l2, linf };
double norm_of(std::span<const double> x, Norm norm);
Norm parse_norm(std::string_view text);

/// Either the top-alpha fraction by norm, or an explicit region Q of known mass.
struct TailRegionSpec {
    enum class Kind { quantile, explicit_region };

    Kind kind = Kind::quantile;
    Norm norm = Norm::l2;
    double alpha = 0.1;
    std::function<bool(std::span<const double>)> region;
    double mass = 1.0;
    double radius = -1.0;  // >= 0 when the region is {||x|| > radius}

    static TailRegionSpec quantile(double alpha, Norm norm = Norm::l2);
    static TailRegionSpec explicit_region(std::function<bool(std::span<const double>)> region,
                                          double mass);
    /// {||x|| > radius} with known mass.
    static TailRegionSpec exterior(double radius, double mass, Norm norm = Norm::l2);

    void validate() const;
};

/// Rows entering the empirical conditional risk and the normalizer n*alpha (or
/// n*q). For the quantile form these are the rows with ||X_i|| strictly above
/// the floor(n alpha)-th largest norm; norm ties are rejected.
struct TailSelection {
    std::vector<std::size_t> rows;
    double normalizer = 1.0;
};

TailSelection select_tail(const LabeledSample& data, const TailRegionSpec& region);

/// (1/normalizer) #{selected i : Y_i != g(X_i)}.
double risk_on_selection(const LabeledSample& data, const AxisClassifier& g, const TailSelection& sel);

double empirical_conditional_risk(const LabeledSample& data, const AxisClassifier& g,
                                  const TailRegionSpec& region);

/// Index of the member with the smallest empirical conditional risk, lowest
/// index on ties.
std::size_t erm(const LabeledSample& data, const ClassifierFamily& family, const TailRegionSpec& region);

/// Features X = R (cos phi, sin phi) with P(R > r) = r^-a (r >= 1) and phi
/// uniform, independent. Labels sign(x_1), each flipped with probability
/// `flip`. The l2 norm of X is R, so tail quantiles and conditional risks of
/// axis classifiers are available in closed form up to one-dimensional
/// quadrature.
struct RadialLabelModel {
    double tail_index = 2.0;
    double flip = 0.1;
    /// Monte Carlo draws for regions without a closed form (non-l2 norms,
    /// arbitrary predicates); 0 makes those regions an error.
    std::size_t reference_draws = 10000000;

    void validate() const;
    LabeledSample sample(std::size_t n, std::uint64_t seed) const;
    /// t with P(||X||_2 > t) = alpha.
    double norm_quantile(double alpha) const;
    /// P(||X||_2 > radius).
    double exterior_mass(double radius) const;
    /// P(Y != g(X), ||X||_2 > radius).
    double joint_error(const AxisClassifier& g, double radius) const;
};

/// Features from a copula sampler with a labeling axis rule and flip noise.
/// Its conditional risks have no closed form and are estimated by Monte Carlo
/// with `reference_draws` draws (0 disables it, and the law counts as unknown).
struct CopulaLabelModel {
    GeneratorSpec features;
    AxisClassifier rule;
    double flip = 0.0;
    std::size_t reference_draws = 10000000;

    LabeledSample sample(std::size_t n, std::uint64_t seed) const;
};

using LabelGenerator = std::variant<RadialLabelModel, CopulaLabelModel>;

struct RiskValue {
    double value = 0.0;
    double std_error = 0.0;  // 0 for analytic values
};

/// L(g) = P(Y != g(X) | X in region), normalized by alpha (or q).
RiskValue true_conditional_risk(const AxisClassifier& g, const TailRegionSpec& region,
                                const LabelGenerator& generator);

struct ClassificationPoint {
    std::size_t n = 0;
    double alpha = 0.1;
};

struct ClassificationConfig {
    RadialLabelModel generator;
    std::vector<ClassificationPoint> schedule;
    ClassifierFamily family;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    unsigned workers = 0;

    void validate() const;
};

struct ClassificationRecord {
    std::size_t n = 0;
    double alpha = 0.0;
    std::size_t trial = 0;
    double sup_deviation = 0.0;
    std::size_t erm_index = 0;
    double erm_regret = 0.0;
};

struct ClassificationSummary {
    std::size_t n = 0;
    double alpha = 0.0;
    double n_alpha = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    bool flagged = false;  // n alpha < 10
};

struct ClassificationReport {
    std::vector<ClassificationRecord> trials;
    std::vector<ClassificationSummary> per_point;
    LineFit slope;  // log median sup deviation against log(n alpha)
    bool slope_valid = false;
    std::vector<std::string> warnings;
};

/// sup over the family of |L_{alpha,n}(g) - L_alpha(g)| for every schedule
/// point and trial, using the l2 quantile region and analytic truths.
ClassificationReport rate_experiment_classification(const ClassificationConfig& config);

/// sup_g |L_{alpha,n}(g) - L_alpha(g)| for one dataset.
double sup_risk_deviation(const LabeledSample& data, const ClassifierFamily& family, double alpha,
                          const RadialLabelModel& generator);

/// Both sides of
///   sup_g |L_{a,n} - L_a| <= (1/a) [ sup_g |P(err, ||X|| > t_a) - P_n(...)|
///                                   + |P(||X|| > t_a) - P_n(||X|| > t_a)| + 1/n ].
struct AppendixBResult {
    double lhs = 0.0;
    double joint_deviation = 0.0;
    double marginal_deviation = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Uses supplied truths: true_joint[g] = P(Y != g, ||X|| > t_alpha) and
/// P(||X|| > t_alpha) = alpha.
AppendixBResult appendixB_from_truth(const LabeledSample& data, const ClassifierFamily& family,
                                     double alpha, Norm norm, double t_alpha,
                                     std::span<const double> true_joint);

AppendixBResult appendixB_decomposition_check(const LabeledSample& data,
                                              const ClassifierFamily& family, double alpha,
                                              const RadialLabelModel& generator);

} // namespace stdf
