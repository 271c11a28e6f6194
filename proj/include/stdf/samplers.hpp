#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stdf/oracles.hpp"
#include "stdf/sample.hpp"

namespace stdf {

/// Strictly increasing map from the uniform scale (0,1) to the observation
/// scale, paired with the distribution function that inverts it.
struct Margin {
    enum class Kind { uniform, exponential, pareto, custom };

    Kind kind = Kind::uniform;
    double shape = 1.0;  // pareto tail index
    std::string name = "uniform";
    std::function<double(double)> custom_transform;
    std::function<double(double)> custom_cdf;

    static Margin uniform();
    /// u -> -log(1-u)
    static Margin exponential();
    /// u -> (1-u)^(-1/a), a > 0
    static Margin pareto(double a);
    /// User-supplied pair; the transform is checked for strict monotonicity on
    /// a grid when applied.
    static Margin custom(std::string name, std::function<double(double)> transform,
                         std::function<double(double)> cdf);

    double transform(double u) const;
    double cdf(double x) const;
};

/// "uniform", "exponential", "pareto(<a>)" or "pareto:<a>".
Margin parse_margin(std::string_view text);

struct GeneratorSpec {
    StdfModel model;
    std::size_t n = 0;
    std::vector<Margin> margins;  // empty = uniform for every coordinate
    std::uint64_t seed = 0;

    std::size_t d() const noexcept { return model.d; }
    void validate() const;
};

Sample sample_independence(const GeneratorSpec& spec);
Sample sample_comonotone(const GeneratorSpec& spec);
/// Gumbel copula rows via a positive-stable frailty. theta == 1 reproduces
/// independence in distribution.
Sample sample_logistic(const GeneratorSpec& spec, double theta);

/// Dispatches on spec.model.
Sample generate(const GeneratorSpec& spec);

/// Applies transforms[j] to column j of a uniform-scale sample.
Sample apply_margins(const Sample& sample, const std::vector<Margin>& transforms);

} // namespace stdf
