#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mvela {

/// Raised when inputs violate a documented precondition or invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when externally supplied data (files, traces, tables) is unusable.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Marker for an inactive (hierarchically disabled) entry.
struct NA {
    bool operator==(const NA&) const = default;
};

/// A single mixed-type decision value. Categorical values are held as their
/// string label; integer variables keep integer identity until encoding.
using Value = std::variant<NA, double, std::int64_t, std::string>;

/// One candidate solution, ordered like SearchSpace::variables.
using Assignment = std::vector<Value>;

inline bool is_na(const Value& v) { return std::holds_alternative<NA>(v); }

/// Numeric view of a value; integers widen to double.
inline double as_real(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw ValidationError("value is not numeric");
}

inline const std::string& as_label(const Value& v) {
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    throw ValidationError("value is not categorical");
}

/// Dense row-major matrix of doubles, sized n_rows x n_cols.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Euclidean distance between two rows of a matrix.
inline double row_distance(const Matrix& m, std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const double d = m(a, c) - m(b, c);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Shortest round-trip decimal form, stable across runs.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw DataError("cannot parse number: '" + s + "'");
    return v;
}

inline std::int64_t parse_int(const std::string& s) {
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DataError("cannot parse integer: '" + s + "'");
    return v;
}

}  // namespace mvela
