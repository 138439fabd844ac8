#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mvela/csv.hpp"
#include "mvela/sampling.hpp"
#include "mvela/space.hpp"
#include "mvela/stats.hpp"

namespace mvela {

enum class Encoding { OneHot, Target };

inline std::string to_string(Encoding e) { return e == Encoding::OneHot ? "oh" : "te"; }

inline Encoding encoding_from_string(const std::string& s) {
    if (s == "oh") return Encoding::OneHot;
    if (s == "te") return Encoding::Target;
    throw DataError("unknown encoding: " + s + " (expected 'oh' or 'te')");
}

enum class ColumnKind { Numeric, Indicator, TargetEncoded };

/// Encoded-but-unnormalized design matrix with per-column metadata.
struct EncodedColumns {
    Matrix matrix;
    std::vector<std::string> names;
    std::vector<std::string> origin;  // source variable id per column
    std::vector<ColumnKind> kinds;
};

/// Fully numeric, normalized sample ready for feature computation.
struct EncodedSample {
    Matrix matrix;  // n x p, entries in [0, 1]
    std::vector<double> y;  // normalized objective values in [0, 1]
    std::vector<std::string> column_names;
    std::vector<std::string> origin;
    Encoding encoding = Encoding::Target;
};

/// Min-max normalization by sample minimum and maximum; a constant vector
/// maps to 0.5.
inline std::vector<double> normalize_objective(const std::vector<double>& y) {
    if (y.size() < 2) throw ValidationError("normalize_objective needs at least 2 values");
    double lo = y.front(), hi = y.front();
    for (double v : y) {
        if (!std::isfinite(v)) throw ValidationError("normalize_objective: non-finite value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<double> out(y.size());
    if (lo == hi) {
        std::fill(out.begin(), out.end(), 0.5);
        return out;
    }
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = (y[i] - lo) / (hi - lo);
    return out;
}

namespace detail {

inline void require_na_free(const Design& design) {
    for (const auto& row : design.rows)
        for (const auto& v : row)
            if (is_na(v)) throw ValidationError("design contains NA entries; impute first");
}

}  // namespace detail

/// Each categorical variable of cardinality c becomes c binary indicator
/// columns in declaration order; numeric variables pass through.
inline EncodedColumns one_hot(const Design& design, const SearchSpace& space) {
    detail::require_na_free(design);
    const std::size_t n = design.size();

    EncodedColumns out;
    for (const auto& var : space.variables) {
        if (var.kind == VarKind::Categorical) {
            for (const auto& cat : var.categories) {
                out.names.push_back(var.id + "=" + cat);
                out.origin.push_back(var.id);
                out.kinds.push_back(ColumnKind::Indicator);
            }
        } else {
            out.names.push_back(var.id);
            out.origin.push_back(var.id);
            out.kinds.push_back(ColumnKind::Numeric);
        }
    }
    out.matrix = Matrix(n, out.names.size());

    for (std::size_t r = 0; r < n; ++r) {
        std::size_t col = 0;
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            const auto& var = space.variables[i];
            if (var.kind == VarKind::Categorical) {
                const std::size_t idx = var.category_index(as_label(design.rows[r][i]));
                out.matrix(r, col + idx) = 1.0;
                col += var.categories.size();
            } else {
                out.matrix(r, col) = as_real(design.rows[r][i]);
                ++col;
            }
        }
    }
    return out;
}

/// Smoothing weight n_j / (n_j + var_j / var_global); by convention 1 when
/// the global variance vanishes (all objective values equal).
inline double smoothing_lambda(std::size_t n_j, double var_j, double var_global) {
    if (n_j < 1) throw ValidationError("smoothing_lambda needs n_j >= 1");
    if (var_global == 0.0) return 1.0;
    return static_cast<double>(n_j) / (static_cast<double>(n_j) + var_j / var_global);
}

/// Replaces each category with the smoothed blend of its conditional mean and
/// the global mean of y_norm; dimensionality is preserved. Variances are
/// population variances (divide by n).
inline EncodedColumns target_encode(const Design& design, const std::vector<double>& y_norm,
                                    const SearchSpace& space) {
    detail::require_na_free(design);
    const std::size_t n = design.size();
    if (y_norm.size() != n) throw ValidationError("target_encode: y length mismatch");

    const std::vector<double> y(y_norm.begin(), y_norm.end());
    const double global_mean = mean(y);
    const double global_var = variance_pop(y);

    EncodedColumns out;
    out.matrix = Matrix(n, space.dimension());
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        const auto& var = space.variables[i];
        out.names.push_back(var.id);
        out.origin.push_back(var.id);
        out.kinds.push_back(var.kind == VarKind::Categorical ? ColumnKind::TargetEncoded
                                                             : ColumnKind::Numeric);
        if (var.kind != VarKind::Categorical) {
            for (std::size_t r = 0; r < n; ++r) out.matrix(r, i) = as_real(design.rows[r][i]);
            continue;
        }
        std::map<std::string, std::vector<double>> groups;
        for (std::size_t r = 0; r < n; ++r)
            groups[as_label(design.rows[r][i])].push_back(y[r]);
        std::map<std::string, double> encoded;
        for (const auto& [cat, values] : groups) {
            var.category_index(cat);  // reject categories outside the space
            const double lambda = smoothing_lambda(values.size(), variance_pop(values), global_var);
            encoded[cat] = lambda * mean(values) + (1.0 - lambda) * global_mean;
        }
        for (std::size_t r = 0; r < n; ++r)
            out.matrix(r, i) = encoded.at(as_label(design.rows[r][i]));
    }
    return out;
}

/// Maps every column into [0, 1]: numeric columns by their known bounds,
/// indicator columns unchanged, target-encoded columns by the column's sample
/// minimum and maximum (bounds are unknowable); a constant column maps to 0.5.
inline Matrix normalize_decision(const EncodedColumns& cols, const SearchSpace& space) {
    Matrix out = cols.matrix;
    const std::size_t n = out.rows();
    for (std::size_t c = 0; c < out.cols(); ++c) {
        switch (cols.kinds[c]) {
            case ColumnKind::Indicator:
                break;
            case ColumnKind::Numeric: {
                const auto& var = space.variables[space.index_of(cols.origin[c])];
                for (std::size_t r = 0; r < n; ++r) {
                    const double v = out(r, c);
                    if (v < var.lower || v > var.upper)
                        throw ValidationError("value of '" + var.id + "' outside known bounds");
                    out(r, c) = (v - var.lower) / (var.upper - var.lower);
                }
                break;
            }
            case ColumnKind::TargetEncoded: {
                double lo = out(0, c), hi = out(0, c);
                for (std::size_t r = 1; r < n; ++r) {
                    lo = std::min(lo, out(r, c));
                    hi = std::max(hi, out(r, c));
                }
                for (std::size_t r = 0; r < n; ++r)
                    out(r, c) = (lo == hi) ? 0.5 : (out(r, c) - lo) / (hi - lo);
                break;
            }
        }
    }
    return out;
}

/// The full preprocessing pipeline, in order: impute inactive entries,
/// normalize the objective, encode categoricals, normalize the decision
/// space. The objective is normalized before encoding because target
/// encoding depends on the objective values.
inline EncodedSample preprocess(const Design& design, const SearchSpace& space, Encoding encoding,
                                std::uint64_t seed) {
    const Design imputed = impute_inactive(design, space, seed);
    const std::vector<double> y_norm = normalize_objective(imputed.y);
    EncodedColumns cols = (encoding == Encoding::OneHot) ? one_hot(imputed, space)
                                                         : target_encode(imputed, y_norm, space);
    EncodedSample out;
    out.matrix = normalize_decision(cols, space);
    out.y = y_norm;
    out.column_names = std::move(cols.names);
    out.origin = std::move(cols.origin);
    out.encoding = encoding;
    return out;
}

inline csv::Table encoded_to_csv(const EncodedSample& sample) {
    csv::Table t;
    t.header = sample.column_names;
    t.header.push_back("y");
    for (std::size_t r = 0; r < sample.matrix.rows(); ++r) {
        std::vector<std::string> row;
        row.reserve(t.header.size());
        for (std::size_t c = 0; c < sample.matrix.cols(); ++c)
            row.push_back(format_double(sample.matrix(r, c)));
        row.push_back(format_double(sample.y[r]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace mvela
