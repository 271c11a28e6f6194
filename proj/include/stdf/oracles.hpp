#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace stdf {

enum class Family { independence, comonotone, logistic };

/// Tail-dependence model with a closed-form stable tail dependence function
/// l and a closed-form finite-level law for the standardized variables U.
struct StdfModel {
    Family family = Family::independence;
    double theta = 1.0;  // logistic only, >= 1
    std::size_t d = 2;

    static StdfModel independence(std::size_t d);
    static StdfModel comonotone(std::size_t d);
    static StdfModel logistic(double theta, std::size_t d);

    /// Throws ConfigError on d == 0 or theta < 1.
    void validate() const;
};

/// "independence", "comonotone", "logistic(<theta>)" or "logistic:<theta>".
StdfModel parse_model(std::string_view text, std::size_t d);
std::string to_string(const StdfModel& model);

/// l(x): sum, max, or (sum x_j^theta)^(1/theta).
double eval_stdf(const StdfModel& model, std::span<const double> x);

/// Exact F~(u) = P(U^1 <= u_1 or ... or U^d <= u_d) for u in [0,1]^d.
double tail_union_prob(const StdfModel& model, std::span<const double> u);

/// t^-1 F~(t x), the finite-level version of l. Requires t in (0,1], t x_j <= 1.
double pre_limit_tail(const StdfModel& model, double t, std::span<const double> x);

/// |pre_limit_tail - eval_stdf|.
double bias_term(const StdfModel& model, double t, std::span<const double> x);

/// Grid maximum of bias_term over [0, T]^d using `points_per_axis` points per
/// coordinate (endpoints included).
double bias_sup(const StdfModel& model, double t, double T, std::size_t points_per_axis = 201);

} // namespace stdf
