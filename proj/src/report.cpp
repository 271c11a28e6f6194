#include "stdf/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace stdf {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

nlohmann::json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

void write_deviation_trials(std::ostream& out, const ExperimentConfig& config, const DeviationReport& report) {
    out << "k,trial,seed,deviation,slack,aborted,error\n";
    for (const auto& r : report.trials) {
        out << r.k << ',' << r.trial << ',' << trial_seed(config.seed, r.k, r.trial) << ','
            << format_number(r.deviation) << ',' << format_number(r.slack) << ',' << (r.aborted ? 1 : 0) << ','
            << quote(r.error) << '\n';
    }
}

void write_deviation_summary(std::ostream& out, const DeviationReport& report) {
    out << "k,completed,aborted,median,upper_quantile,mean,std_error,bias_T,bias_2T,bound_shape\n";
    for (const auto& s : report.per_k) {
        out << s.k << ',' << s.completed << ',' << s.aborted << ',' << format_number(s.median) << ','
            << format_number(s.upper_quantile) << ',' << format_number(s.mean) << ','
            << format_number(s.std_error) << ',' << format_number(s.bias_T) << ','
            << format_number(s.bias_2T) << ',' << format_number(s.bound_shape) << '\n';
    }
}

nlohmann::json deviation_metadata(const ExperimentConfig& config, const DeviationReport& report) {
    nlohmann::json margins = nlohmann::json::array();
    for (const auto& m : config.margins) margins.push_back(m.name);
    nlohmann::json j;
    j["config"] = {
        {"model", to_string(config.model)},
        {"d", config.d()},
        {"n", config.n},
        {"k", config.k_schedule},
        {"T", config.T},
        {"delta", config.delta},
        {"trials", config.trials},
        {"seed", config.seed},
        {"grid_step", config.grid_step ? nlohmann::json(*config.grid_step) : nlohmann::json(nullptr)},
        {"margins", margins},
    };
    if (report.slope_valid) {
        j["slope"] = {{"slope", number_or_null(report.slope.slope)},
                      {"intercept", number_or_null(report.slope.intercept)},
                      {"slope_stderr", number_or_null(report.slope.slope_stderr)},
                      {"r_squared", number_or_null(report.slope.r_squared)}};
    } else {
        j["slope"] = nullptr;
    }
    return j;
}

void write_lab_csv(std::ostream& out, std::span<const LabRow> rows) {
    out << "trial_id,n,k,d,T,delta,statistic_name,value\n";
    for (const auto& r : rows)
        out << r.trial_id << ',' << r.n << ',' << r.k << ',' << r.d << ',' << format_number(r.T) << ','
            << format_number(r.delta) << ',' << quote(r.statistic) << ',' << format_number(r.value) << '\n';
}

void write_classification_trials(std::ostream& out, const ClassificationReport& report) {
    out << "n,alpha,trial,sup_deviation,erm_index,erm_regret\n";
    for (const auto& r : report.trials)
        out << r.n << ',' << format_number(r.alpha) << ',' << r.trial << ',' << format_number(r.sup_deviation)
            << ',' << r.erm_index << ',' << format_number(r.erm_regret) << '\n';
}

void write_classification_summary(std::ostream& out, const ClassificationReport& report) {
    out << "n,alpha,n_alpha,median,mean,std_error,flagged\n";
    for (const auto& s : report.per_point)
        out << s.n << ',' << format_number(s.alpha) << ',' << format_number(s.n_alpha) << ','
            << format_number(s.median) << ',' << format_number(s.mean) << ',' << format_number(s.std_error)
            << ',' << (s.flagged ? 1 : 0) << '\n';
}

} // namespace stdf
