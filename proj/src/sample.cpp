#include "stdf/sample.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stdf/error.hpp"

namespace stdf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view tok, double& out) {
    tok = trim(tok);
    if (tok.empty()) return false;
    if (tok.front() == '+') tok.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

void require_finite(const Matrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j)))
                throw DataError("non-finite value at row " + std::to_string(i + 1) + ", column " +
                                std::to_string(j + 1));
}

Sample read_csv(std::istream& in, std::string provenance) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        double v = 0.0;
        if (first_content && !parse_double(fields.front(), v)) {
            first_content = false;  // header
            continue;
        }
        first_content = false;
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], v))
                throw DataError("line " + std::to_string(lineno) + ", field " + std::to_string(j + 1) +
                                ": not a number: '" + std::string(trim(fields[j])) + "'");
            row.push_back(v);
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw DataError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                            " fields, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("CSV contains no observations");
    Sample s{Matrix(rows.size(), width), std::move(provenance)};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) s.values(i, j) = rows[i][j];
    require_finite(s.values);
    return s;
}

Sample read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_csv(in, "file:" + path);
}

void write_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& header) {
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
        out << '\n';
    }
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Matrix& m, const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    write_csv(out, m, header);
}

} // namespace stdf
