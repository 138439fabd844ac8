#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "mvela/encoding.hpp"
#include "mvela/stats.hpp"

namespace mvela {

struct NearestBetterFeatures {
    std::optional<double> nn_nb_sd_ratio;
    std::optional<double> nn_nb_mean_ratio;
    std::optional<double> nn_nb_cor;
    std::optional<double> dist_ratio_coeff_var;
    std::optional<double> nb_fitness_cor;
};

/// Nearest-neighbor versus nearest-better-neighbor statistics (minimization).
/// Points without a strictly better point are excluded from the nn/nb
/// statistics but still receive indegree in the nearest-better graph.
/// Standard deviations are sample standard deviations; nearest-better ties
/// resolve to the lowest row index.
inline NearestBetterFeatures nbc(const EncodedSample& sample) {
    const std::size_t n = sample.matrix.rows();
    if (n < 3) throw ValidationError("nbc needs n >= 3");
    bool all_equal = true;
    for (std::size_t i = 1; i < n && all_equal; ++i) all_equal = sample.y[i] == sample.y[0];
    if (all_equal) throw ValidationError("nbc undefined: all objective values equal");

    std::vector<double> nn, nb, ratio;
    std::vector<double> indegree(n, 0.0);
    bool nb_zero = false;
    for (std::size_t i = 0; i < n; ++i) {
        double nn_dist = -1.0;
        double nb_dist = -1.0;
        std::size_t nb_target = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = row_distance(sample.matrix, i, j);
            if (nn_dist < 0.0 || d < nn_dist) nn_dist = d;
            if (sample.y[j] < sample.y[i] && (nb_target == n || d < nb_dist)) {
                nb_dist = d;
                nb_target = j;
            }
        }
        if (nb_target == n) continue;  // no strictly better point
        indegree[nb_target] += 1.0;
        nn.push_back(nn_dist);
        nb.push_back(nb_dist);
        if (nb_dist == 0.0) nb_zero = true;
        else ratio.push_back(nn_dist / nb_dist);
    }

    NearestBetterFeatures out;
    if (nn.size() >= 2) {
        const double sd_nn = sd_sample(nn);
        const double sd_nb = sd_sample(nb);
        if (sd_nb > 0.0) out.nn_nb_sd_ratio = sd_nn / sd_nb;
        const double mean_nb = mean(nb);
        if (mean_nb > 0.0) out.nn_nb_mean_ratio = mean(nn) / mean_nb;
        out.nn_nb_cor = pearson(nn, nb);
    }
    if (!nb_zero && ratio.size() >= 2) {
        const double m = mean(ratio);
        if (m > 0.0) out.dist_ratio_coeff_var = sd_sample(ratio) / m;
    }
    out.nb_fitness_cor = pearson(sample.y, indegree);
    return out;
}

}  // namespace mvela
