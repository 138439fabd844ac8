#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mvela/encoding.hpp"
#include "mvela/stats.hpp"

namespace mvela {

inline constexpr std::array<double, 4> kDispersionQuantiles = {0.02, 0.05, 0.10, 0.25};

struct DispersionFeatures {
    // One entry per quantile level, in kDispersionQuantiles order.
    std::array<std::optional<double>, 4> ratio_mean;
    std::array<std::optional<double>, 4> ratio_median;
    std::array<std::optional<double>, 4> diff_mean;
    std::array<std::optional<double>, 4> diff_median;
};

namespace detail {

inline std::vector<double> pairwise_distances(const Matrix& m, const std::vector<std::size_t>& idx) {
    std::vector<double> dists;
    dists.reserve(idx.size() * (idx.size() - 1) / 2);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            dists.push_back(row_distance(m, idx[a], idx[b]));
    return dists;
}

}  // namespace detail

/// Compares the spread of the best objective values against the spread of the
/// whole sample: for each quantile level, the subset holds the rows whose y
/// does not exceed that quantile, and the features are mean/median pairwise
/// distance ratios and differences against the full sample. A subset with
/// fewer than two points reports missing markers for its level.
inline DispersionFeatures dispersion(const EncodedSample& sample,
                                     const std::array<double, 4>& quantiles = kDispersionQuantiles) {
    const std::size_t n = sample.matrix.rows();
    DispersionFeatures out;
    if (n < 2) return out;

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const std::vector<double> full = detail::pairwise_distances(sample.matrix, all);
    const double full_mean = mean(full);
    const double full_median = median(full);

    for (std::size_t q = 0; q < quantiles.size(); ++q) {
        const double threshold = quantile(sample.y, quantiles[q]);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (sample.y[i] <= threshold) subset.push_back(i);
        if (subset.size() < 2) continue;

        const std::vector<double> sub = detail::pairwise_distances(sample.matrix, subset);
        const double sub_mean = mean(sub);
        const double sub_median = median(sub);
        if (full_mean > 0.0) out.ratio_mean[q] = sub_mean / full_mean;
        if (full_median > 0.0) out.ratio_median[q] = sub_median / full_median;
        out.diff_mean[q] = sub_mean - full_mean;
        out.diff_median[q] = sub_median - full_median;
    }
    return out;
}

}  // namespace mvela
