#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mvela/encoding.hpp"

namespace mvela {

struct MetaModelFeatures {
    std::optional<double> lin_adj_r2;
    std::optional<double> lin_intercept;
    std::optional<double> lin_coef_min;
    std::optional<double> lin_coef_max;
    std::optional<double> lin_coef_max_by_min;
    std::optional<double> lin_interact_adj_r2;
    std::optional<double> quad_adj_r2;
    std::optional<double> quad_cond;
    std::optional<double> quad_interact_adj_r2;
};

namespace detail {

struct OlsFit {
    bool ok = false;
    double adj_r2 = 0.0;
    Eigen::VectorXd coef;  // includes intercept at index 0
};

/// Ordinary least squares via rank-revealing QR. A rank-deficient or
/// under-determined system (or constant response) yields ok = false.
inline OlsFit fit_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
    OlsFit fit;
    const auto n = design.rows();
    const auto p = design.cols();
    if (n <= p) return fit;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) return fit;
    fit.coef = qr.solve(y);

    const double y_mean = y.mean();
    const double ss_tot = (y.array() - y_mean).square().sum();
    if (ss_tot == 0.0) return fit;
    const double ss_res = (y - design * fit.coef).squaredNorm();
    const double r2 = 1.0 - ss_res / ss_tot;
    const double dn = static_cast<double>(n);
    const double dp = static_cast<double>(p - 1);  // predictors, intercept excluded
    fit.adj_r2 = 1.0 - (1.0 - r2) * (dn - 1.0) / (dn - dp - 1.0);
    fit.ok = true;
    return fit;
}

inline Eigen::MatrixXd build_design(const Matrix& x, bool squares, bool interactions) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    std::size_t p = 1 + d;
    if (squares) p += d;
    if (interactions) p += d * (d - 1) / 2;

    Eigen::MatrixXd m(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t c = 0;
        m(r, c++) = 1.0;
        for (std::size_t j = 0; j < d; ++j) m(r, c++) = x(r, j);
        if (squares)
            for (std::size_t j = 0; j < d; ++j) m(r, c++) = x(r, j) * x(r, j);
        if (interactions)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = j + 1; k < d; ++k) m(r, c++) = x(r, j) * x(r, k);
    }
    return m;
}

}  // namespace detail

/// Degree-of-linearity and convexity features from four least-squares fits:
/// linear, linear with pairwise interactions, quadratic, and quadratic with
/// interactions. Models that cannot be fitted report missing markers.
inline MetaModelFeatures ela_meta(const EncodedSample& sample) {
    MetaModelFeatures out;
    const std::size_t n = sample.matrix.rows();
    const std::size_t d = sample.matrix.cols();
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) y(static_cast<Eigen::Index>(i)) = sample.y[i];

    const auto lin = detail::fit_ols(detail::build_design(sample.matrix, false, false), y);
    if (lin.ok) {
        out.lin_adj_r2 = lin.adj_r2;
        out.lin_intercept = lin.coef(0);
        double cmin = std::abs(lin.coef(1)), cmax = cmin;
        for (std::size_t j = 1; j <= d; ++j) {
            const double c = std::abs(lin.coef(static_cast<Eigen::Index>(j)));
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        out.lin_coef_min = cmin;
        out.lin_coef_max = cmax;
        if (cmin > 0.0) out.lin_coef_max_by_min = cmax / cmin;
    }

    const auto lin_i = detail::fit_ols(detail::build_design(sample.matrix, false, true), y);
    if (lin_i.ok) out.lin_interact_adj_r2 = lin_i.adj_r2;

    const auto quad = detail::fit_ols(detail::build_design(sample.matrix, true, false), y);
    if (quad.ok) {
        out.quad_adj_r2 = quad.adj_r2;
        double qmin = std::abs(quad.coef(static_cast<Eigen::Index>(1 + d))), qmax = qmin;
        for (std::size_t j = 0; j < d; ++j) {
            const double c = std::abs(quad.coef(static_cast<Eigen::Index>(1 + d + j)));
            qmin = std::min(qmin, c);
            qmax = std::max(qmax, c);
        }
        if (qmin > 0.0) out.quad_cond = qmax / qmin;
    }

    const auto quad_i = detail::fit_ols(detail::build_design(sample.matrix, true, true), y);
    if (quad_i.ok) out.quad_interact_adj_r2 = quad_i.adj_r2;

    return out;
}

}  // namespace mvela
