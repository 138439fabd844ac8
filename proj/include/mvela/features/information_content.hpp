#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "mvela/encoding.hpp"
#include "mvela/rng.hpp"

namespace mvela {

struct InformationContentFeatures {
    std::optional<double> h_max;
    std::optional<double> eps_s;
    std::optional<double> eps_max;
    std::optional<double> eps_ratio;
    std::optional<double> m0;
};

namespace detail {

/// Greedy nearest-neighbor tour through all rows from a seeded random start;
/// distance ties resolve to the lowest row index.
inline std::vector<std::size_t> nearest_neighbor_tour(const Matrix& m, Rng& rng) {
    const std::size_t n = m.rows();
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> tour;
    tour.reserve(n);
    std::size_t current = rng.index(n);
    visited[current] = true;
    tour.push_back(current);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_dist = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (visited[j]) continue;
            const double d = row_distance(m, current, j);
            if (best == n || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        visited[best] = true;
        tour.push_back(best);
        current = best;
    }
    return tour;
}

/// Entropy of consecutive symbol pairs with differing symbols, log base 6
/// (six ordered off-diagonal pairs over {-1, 0, 1}).
inline double pair_entropy(const std::vector<int>& symbols) {
    const std::size_t total = symbols.size() - 1;
    // counts[a+1][b+1] for symbol pair (a, b)
    double counts[3][3] = {};
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
        counts[symbols[i] + 1][symbols[i + 1] + 1] += 1.0;
    const double log6 = std::log(6.0);
    double h = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            const double p = counts[a][b] / static_cast<double>(total);
            if (p > 0.0) h -= p * std::log(p) / log6;
        }
    }
    return h;
}

/// Fraction of sign changes in the zero-free symbol subsequence, relative to
/// the sample size.
inline double partial_information(const std::vector<int>& symbols, std::size_t n) {
    int prev = 0;
    std::size_t changes = 0;
    for (int s : symbols) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return static_cast<double>(changes) / static_cast<double>(n - 1);
}

}  // namespace detail

/// Smoothness/ruggedness/neutrality features from symbol sequences built on
/// objective change rates along a nearest-neighbor tour. The sensitivity grid
/// is {0} plus 1000 log-spaced values in [1e-5, 1e15]; the settling threshold
/// is H < 0.05 and the ratio threshold is M <= 0.5 * M(0).
inline InformationContentFeatures information_content(const EncodedSample& sample, std::uint64_t seed) {
    const std::size_t n = sample.matrix.rows();
    if (n < 3) throw ValidationError("information_content needs n >= 3");

    Rng rng = Rng::stream(seed, "ic-tour");
    const std::vector<std::size_t> tour = detail::nearest_neighbor_tour(sample.matrix, rng);

    std::vector<double> rates;
    rates.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dist = row_distance(sample.matrix, tour[i], tour[i + 1]);
        if (dist == 0.0) continue;  // duplicate points: step skipped
        rates.push_back((sample.y[tour[i + 1]] - sample.y[tour[i]]) / dist);
    }

    InformationContentFeatures out;
    if (rates.size() < 2) return out;  // not enough steps for any symbol pair

    std::vector<double> eps_grid;
    eps_grid.reserve(1001);
    eps_grid.push_back(0.0);
    for (std::size_t k = 0; k < 1000; ++k)
        eps_grid.push_back(std::pow(10.0, -5.0 + 20.0 * static_cast<double>(k) / 999.0));

    std::vector<int> symbols(rates.size());
    double h_max = 0.0;
    double eps_at_max = 0.0;
    double m_zero = 0.0;
    std::optional<double> eps_settle;
    std::optional<double> eps_half;

    for (const double eps : eps_grid) {
        for (std::size_t i = 0; i < rates.size(); ++i)
            symbols[i] = (std::abs(rates[i]) > eps) ? (rates[i] > 0.0 ? 1 : -1) : 0;
        const double h = detail::pair_entropy(symbols);
        const double m = detail::partial_information(symbols, n);
        if (eps == 0.0) {
            h_max = h;
            m_zero = m;
            continue;
        }
        if (h > h_max) {
            h_max = h;
            eps_at_max = eps;
        }
        if (!eps_settle && h < 0.05) eps_settle = std::log10(eps);
        if (!eps_half && m <= 0.5 * m_zero) eps_half = std::log10(eps);
    }

    out.h_max = h_max;
    out.m0 = m_zero;
    out.eps_s = eps_settle;
    if (eps_at_max > 0.0) out.eps_max = std::log10(eps_at_max);
    if (m_zero > 0.0) out.eps_ratio = eps_half;
    return out;
}

}  // namespace mvela
