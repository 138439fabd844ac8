#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvela/csv.hpp"
#include "mvela/features/dispersion.hpp"
#include "mvela/features/distribution.hpp"
#include "mvela/features/information_content.hpp"
#include "mvela/features/meta_model.hpp"
#include "mvela/features/nearest_better.hpp"
#include "mvela/problems.hpp"

namespace mvela {

/// Canonical feature schema: 38 landscape features plus the proportion of
/// categorical variables and the dimension, 40 names in fixed order.
inline const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = {
            "ela_distr.skewness",
            "ela_distr.kurtosis",
            "ela_distr.number_of_peaks",
            "ela_meta.lin_simple.adj_r2",
            "ela_meta.lin_simple.intercept",
            "ela_meta.lin_simple.coef.min",
            "ela_meta.lin_simple.coef.max",
            "ela_meta.lin_simple.coef.max_by_min",
            "ela_meta.lin_w_interact.adj_r2",
            "ela_meta.quad_simple.adj_r2",
            "ela_meta.quad_simple.cond",
            "ela_meta.quad_w_interact.adj_r2",
        };
        const char* stats[] = {"ratio_mean", "ratio_median", "diff_mean", "diff_median"};
        const char* levels[] = {"02", "05", "10", "25"};
        for (const char* s : stats)
            for (const char* l : levels) v.push_back(std::string("disp.") + s + "_" + l);
        for (const char* f : {"h_max", "eps_s", "eps_max", "eps_ratio", "m0"})
            v.push_back(std::string("ic.") + f);
        v.push_back("nbc.nn_nb.sd_ratio");
        v.push_back("nbc.nn_nb.mean_ratio");
        v.push_back("nbc.nn_nb.cor");
        v.push_back("nbc.dist_ratio.coeff_var");
        v.push_back("nbc.nb_fitness.cor");
        v.push_back("cat_proportion");
        v.push_back("dimension");
        return v;
    }();
    return names;
}

inline std::size_t feature_index(const std::string& name) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw DataError("unknown feature name: " + name);
}

struct FeatureVector {
    std::string instance_id;
    Encoding encoding = Encoding::Target;
    int repetition = 0;
    std::size_t cost = 0;  // function evaluations used for the design
    std::vector<std::optional<double>> values;  // feature_names() order

    const std::optional<double>& at(const std::string& name) const { return values[feature_index(name)]; }
};

/// Computes all feature sets on an already preprocessed sample.
inline std::vector<std::optional<double>> compute_features(const EncodedSample& sample,
                                                           const SearchSpace& space,
                                                           std::uint64_t seed) {
    std::vector<std::optional<double>> v;
    v.reserve(feature_names().size());

    const DistributionFeatures distr = ela_distr(sample);
    v.push_back(distr.skewness);
    v.push_back(distr.kurtosis);
    v.push_back(distr.number_of_peaks);

    const MetaModelFeatures meta = ela_meta(sample);
    v.push_back(meta.lin_adj_r2);
    v.push_back(meta.lin_intercept);
    v.push_back(meta.lin_coef_min);
    v.push_back(meta.lin_coef_max);
    v.push_back(meta.lin_coef_max_by_min);
    v.push_back(meta.lin_interact_adj_r2);
    v.push_back(meta.quad_adj_r2);
    v.push_back(meta.quad_cond);
    v.push_back(meta.quad_interact_adj_r2);

    const DispersionFeatures disp = dispersion(sample);
    for (const auto& block : {disp.ratio_mean, disp.ratio_median, disp.diff_mean, disp.diff_median})
        for (const auto& f : block) v.push_back(f);

    const InformationContentFeatures ic = information_content(sample, seed);
    v.push_back(ic.h_max);
    v.push_back(ic.eps_s);
    v.push_back(ic.eps_max);
    v.push_back(ic.eps_ratio);
    v.push_back(ic.m0);

    const NearestBetterFeatures nb = nbc(sample);
    v.push_back(nb.nn_nb_sd_ratio);
    v.push_back(nb.nn_nb_mean_ratio);
    v.push_back(nb.nn_nb_cor);
    v.push_back(nb.dist_ratio_coeff_var);
    v.push_back(nb.nb_fitness_cor);

    const double d = static_cast<double>(space.dimension());
    v.push_back(static_cast<double>(space.categorical_count()) / d);
    v.push_back(d);
    return v;
}

/// Samples a design of size n, runs the preprocessing pipeline, and computes
/// the full 40-entry feature vector. Deterministic per seed; the design costs
/// n function evaluations.
inline FeatureVector featurize(const Problem& problem, Encoding encoding, std::size_t n,
                               std::uint64_t seed) {
    const Design design = sample_design(problem, n, seed);
    const EncodedSample sample = preprocess(design, problem.space, encoding, seed);
    FeatureVector out;
    out.instance_id = problem.name;
    out.encoding = encoding;
    out.cost = n;
    out.values = compute_features(sample, problem.space, seed);
    return out;
}

// --- long-format features CSV ------------------------------------------------
// instance_id, encoding, repetition, feature_name, value (empty for missing)

struct FeatureRecord {
    std::string instance_id;
    std::string encoding;
    int repetition = 0;
    std::string feature_name;
    std::optional<double> value;
};

inline csv::Table features_to_csv(const std::vector<FeatureVector>& vectors) {
    csv::Table t;
    t.header = {"instance_id", "encoding", "repetition", "feature_name", "value"};
    for (const auto& fv : vectors) {
        const auto& names = feature_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            t.rows.push_back({fv.instance_id, to_string(fv.encoding),
                              format_int(fv.repetition), names[i],
                              fv.values[i] ? format_double(*fv.values[i]) : std::string()});
        }
    }
    return t;
}

inline std::vector<FeatureRecord> features_from_csv(const csv::Table& t) {
    const std::size_t c_inst = t.column("instance_id");
    const std::size_t c_enc = t.column("encoding");
    const std::size_t c_rep = t.column("repetition");
    const std::size_t c_name = t.column("feature_name");
    const std::size_t c_val = t.column("value");
    std::vector<FeatureRecord> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        FeatureRecord r;
        r.instance_id = row[c_inst];
        r.encoding = row[c_enc];
        r.repetition = static_cast<int>(parse_int(row[c_rep]));
        r.feature_name = row[c_name];
        if (!row[c_val].empty()) r.value = parse_double(row[c_val]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace mvela
