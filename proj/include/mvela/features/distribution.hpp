#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mvela/encoding.hpp"
#include "mvela/stats.hpp"

namespace mvela {

struct DistributionFeatures {
    std::optional<double> skewness;
    std::optional<double> kurtosis;  // excess kurtosis
    double number_of_peaks = 1.0;
};

namespace detail {

/// Gaussian KDE on a 512-point uniform grid over [min, max] with the
/// Silverman rule-of-thumb bandwidth 0.9 * min(sd, IQR/1.34) * n^(-1/5).
/// Peaks are grid-local maxima whose density exceeds 10% of the global
/// maximum density.
inline double count_density_peaks(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const double lo = *std::min_element(y.begin(), y.end());
    const double hi = *std::max_element(y.begin(), y.end());
    if (lo == hi) return 1.0;

    const double sd = sd_sample(y);
    const double iqr = quantile(y, 0.75) - quantile(y, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (spread <= 0.0) spread = sd;
    const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    if (h <= 0.0) return 1.0;

    constexpr std::size_t kGrid = 512;
    std::vector<double> density(kGrid, 0.0);
    const double step = (hi - lo) / static_cast<double>(kGrid - 1);
    const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * 3.14159265358979323846));
    for (std::size_t g = 0; g < kGrid; ++g) {
        const double x = lo + step * static_cast<double>(g);
        double d = 0.0;
        for (double v : y) {
            const double z = (x - v) / h;
            d += std::exp(-0.5 * z * z);
        }
        density[g] = d * norm;
    }

    const double dmax = *std::max_element(density.begin(), density.end());
    const double threshold = 0.1 * dmax;
    double peaks = 0.0;
    for (std::size_t g = 0; g < kGrid; ++g) {
        const bool left_ok = (g == 0) || density[g] > density[g - 1];
        const bool right_ok = (g + 1 == kGrid) || density[g] > density[g + 1];
        if (left_ok && right_ok && density[g] > threshold) peaks += 1.0;
    }
    return std::max(peaks, 1.0);
}

}  // namespace detail

/// Moment-based (population) skewness and excess kurtosis of the objective
/// values plus the number of modes of their kernel density estimate.
inline DistributionFeatures ela_distr(const EncodedSample& sample) {
    const std::vector<double>& y = sample.y;
    if (y.size() < 4) throw ValidationError("ela_distr needs n >= 4");

    DistributionFeatures out;
    const double m = mean(y);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : y) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double n = static_cast<double>(y.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) {
        out.number_of_peaks = 1.0;
        return out;  // skewness/kurtosis undefined on a constant sample
    }
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2) - 3.0;
    out.number_of_peaks = detail::count_density_peaks(y);
    return out;
}

}  // namespace mvela
