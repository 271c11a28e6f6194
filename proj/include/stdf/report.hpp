#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"

#include "stdf/classification.hpp"
#include "stdf/deviation.hpp"

namespace stdf {

/// Round-trip decimal form (%.17g); "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// k,trial,seed,deviation,slack,aborted,error
void write_deviation_trials(std::ostream& out, const ExperimentConfig& config, const DeviationReport& report);
/// k,completed,aborted,median,upper_quantile,mean,std_error,bias_T,bias_2T,bound_shape
void write_deviation_summary(std::ostream& out, const DeviationReport& report);
/// Full configuration plus the fitted slope.
nlohmann::json deviation_metadata(const ExperimentConfig& config, const DeviationReport& report);

/// One row of the long-format concentration CSV.
struct LabRow {
    std::size_t trial_id = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    double T = 0.0;
    double delta = 0.0;
    std::string statistic;
    double value = 0.0;
};

/// trial_id,n,k,d,T,delta,statistic_name,value
void write_lab_csv(std::ostream& out, std::span<const LabRow> rows);

/// n,alpha,trial,sup_deviation,erm_index,erm_regret
void write_classification_trials(std::ostream& out, const ClassificationReport& report);
/// n,alpha,n_alpha,median,mean,std_error,flagged
void write_classification_summary(std::ostream& out, const ClassificationReport& report);

} // namespace stdf
