#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stdf {

/// Dense n x d matrix stored column by column; every estimator in this library
/// works one margin at a time.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

    std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
    std::span<const double> col(std::size_t j) const noexcept {
        return {data_.data() + j * rows_, rows_};
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// i.i.d. observations, rows = observations, columns = margins.
struct Sample {
    Matrix values;
    std::string provenance;

    std::size_t n() const noexcept { return values.rows(); }
    std::size_t d() const noexcept { return values.cols(); }
};

/// Throws DataError unless every entry is finite.
void require_finite(const Matrix& m);

// CSV: comma separated, '.' decimal point, one observation per line. A single
// header line is accepted when its first token is not numeric. Values are
// written with 17 significant digits so a write/read cycle is lossless.
Sample read_csv(std::istream& in, std::string provenance = "csv");
Sample read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& header = {});
void write_csv_file(const std::string& path, const Matrix& m,
                    const std::vector<std::string>& header = {});

} // namespace stdf
