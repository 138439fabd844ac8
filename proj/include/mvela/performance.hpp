#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mvela/csv.hpp"
#include "mvela/sampling.hpp"
#include "mvela/stats.hpp"

namespace mvela {

/// One optimizer run: every function evaluation in order.
struct RunTrace {
    std::string instance_id;
    std::string algorithm;
    int run_id = 0;
    std::vector<std::pair<std::size_t, double>> evaluations;  // (1-based fe, y)
};

struct PerfRecord {
    std::string instance_id;
    std::string algorithm;
    double ert = 0.0;
    std::size_t successes = 0;
    std::size_t runs = 0;
    std::size_t budget = 0;
    double target = 0.0;
};

using PerfTable = std::vector<PerfRecord>;

/// Random-search baseline: budget uniform feasible samples evaluated in
/// order, every evaluation recorded.
inline RunTrace run_random_search(const Problem& problem, std::size_t budget, std::uint64_t seed) {
    if (budget < 1) throw ValidationError("run_random_search needs budget >= 1");
    Rng rng = Rng::stream(seed, "random-search");
    RunTrace trace;
    trace.instance_id = problem.name;
    trace.algorithm = "rs";
    trace.evaluations.reserve(budget);
    for (std::size_t fe = 1; fe <= budget; ++fe) {
        Assignment a = sample_assignment(problem.space, rng);
        trace.evaluations.emplace_back(fe, evaluate(problem, a));
    }
    return trace;
}

/// Target for one instance: the 0.01-quantile of all objective values seen
/// across every trace of that instance, guaranteeing at least one run solved
/// it without making it trivial.
inline double determine_target(const std::vector<RunTrace>& traces) {
    std::vector<double> all;
    for (const auto& t : traces)
        for (const auto& [fe, y] : t.evaluations) all.push_back(y);
    if (all.empty()) throw ValidationError("determine_target: no evaluations");
    return quantile(std::move(all), 0.01);
}

/// Expected running time over the runs of one (instance, algorithm) pair.
/// A run succeeds at its first evaluation with y <= target and contributes
/// that evaluation count; unsuccessful runs contribute the full budget. With
/// no successes the ERT is imputed with PAR10 = 10 * runs * budget, ten times
/// the maximal possible ERT (one success on the final evaluation).
inline PerfRecord ert(const std::vector<RunTrace>& traces, double target, std::size_t budget) {
    if (traces.empty()) throw ValidationError("ert: no traces");
    PerfRecord rec;
    rec.instance_id = traces.front().instance_id;
    rec.algorithm = traces.front().algorithm;
    rec.runs = traces.size();
    rec.budget = budget;
    rec.target = target;

    double total = 0.0;
    for (const auto& t : traces) {
        if (t.evaluations.size() > budget)
            throw ValidationError("trace of " + t.instance_id + "/" + t.algorithm + " exceeds budget");
        bool solved = false;
        for (const auto& [fe, y] : t.evaluations) {
            if (y <= target) {
                total += static_cast<double>(fe);
                ++rec.successes;
                solved = true;
                break;
            }
        }
        if (!solved) total += static_cast<double>(budget);
    }
    rec.ert = (rec.successes > 0)
                  ? total / static_cast<double>(rec.successes)
                  : 10.0 * static_cast<double>(rec.runs) * static_cast<double>(budget);
    return rec;
}

struct PortfolioSummary {
    std::string sbs;
    double sbs_ert = 0.0;
    double vbs_ert = 0.0;
    std::map<std::string, std::string> best_per_instance;
};

/// Single-best-solver and virtual-best-solver aggregation. Every (instance,
/// algorithm) pair must be present; ties resolve to the lexicographically
/// smallest algorithm name.
inline PortfolioSummary portfolio_summary(const PerfTable& records) {
    std::map<std::string, std::map<std::string, double>> by_instance;  // instance -> algorithm -> ert
    std::map<std::string, bool> algorithms;
    for (const auto& r : records) {
        by_instance[r.instance_id][r.algorithm] = r.ert;
        algorithms[r.algorithm] = true;
    }
    if (by_instance.empty()) throw ValidationError("portfolio_summary: empty table");
    for (const auto& [inst, per_alg] : by_instance)
        for (const auto& [alg, present] : algorithms)
            if (per_alg.find(alg) == per_alg.end())
                throw ValidationError("portfolio_summary: missing pair (" + inst + ", " + alg + ")");

    PortfolioSummary out;
    const double n_inst = static_cast<double>(by_instance.size());

    double best_mean = 0.0;
    for (const auto& [alg, present] : algorithms) {
        double sum = 0.0;
        for (const auto& [inst, per_alg] : by_instance) sum += per_alg.at(alg);
        const double m = sum / n_inst;
        if (out.sbs.empty() || m < best_mean) {  // map order makes ties lexicographic
            out.sbs = alg;
            best_mean = m;
        }
    }
    out.sbs_ert = best_mean;

    double vbs_sum = 0.0;
    for (const auto& [inst, per_alg] : by_instance) {
        std::string best_alg;
        double best = 0.0;
        for (const auto& [alg, e] : per_alg) {
            if (best_alg.empty() || e < best) {
                best_alg = alg;
                best = e;
            }
        }
        out.best_per_instance[inst] = best_alg;
        vbs_sum += best;
    }
    out.vbs_ert = vbs_sum / n_inst;
    return out;
}

/// Fraction of the SBS-to-VBS gap recovered by a selector.
inline double gap_closure(double sbs_ert, double vbs_ert, double model_ert) {
    if (!(sbs_ert > vbs_ert))
        throw ValidationError("gap_closure: degenerate portfolio (sbs_ert <= vbs_ert)");
    return (sbs_ert - model_ert) / (sbs_ert - vbs_ert);
}

// --- CSV ---------------------------------------------------------------------

inline csv::Table traces_to_csv(const std::vector<RunTrace>& traces) {
    csv::Table t;
    t.header = {"instance_id", "algorithm", "run_id", "fe", "y"};
    for (const auto& tr : traces)
        for (const auto& [fe, y] : tr.evaluations)
            t.rows.push_back({tr.instance_id, tr.algorithm, format_int(tr.run_id),
                              format_int(static_cast<std::int64_t>(fe)), format_double(y)});
    return t;
}

inline std::vector<RunTrace> traces_from_csv(const csv::Table& t) {
    const std::size_t c_inst = t.column("instance_id");
    const std::size_t c_alg = t.column("algorithm");
    const std::size_t c_run = t.column("run_id");
    const std::size_t c_fe = t.column("fe");
    const std::size_t c_y = t.column("y");

    std::map<std::tuple<std::string, std::string, int>, RunTrace> grouped;
    std::vector<std::tuple<std::string, std::string, int>> order;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const std::string line_ctx = "trace row " + std::to_string(i + 2);
        const int run_id = static_cast<int>(parse_int(row[c_run]));
        const std::int64_t fe = parse_int(row[c_fe]);
        const double y = parse_double(row[c_y]);
        if (fe < 1) throw DataError(line_ctx + ": fe must be >= 1");
        if (!std::isfinite(y)) throw DataError(line_ctx + ": non-finite y");
        auto key = std::make_tuple(row[c_inst], row[c_alg], run_id);
        auto [it, inserted] = grouped.try_emplace(key);
        if (inserted) {
            it->second.instance_id = row[c_inst];
            it->second.algorithm = row[c_alg];
            it->second.run_id = run_id;
            order.push_back(key);
        }
        if (it->second.evaluations.empty()) {
            if (fe != 1) throw DataError(line_ctx + ": a run's first fe must be 1");
        } else if (static_cast<std::int64_t>(it->second.evaluations.back().first) >= fe) {
            throw DataError(line_ctx + ": fe values must be strictly increasing within a run");
        }
        it->second.evaluations.emplace_back(static_cast<std::size_t>(fe), y);
    }
    std::vector<RunTrace> out;
    out.reserve(order.size());
    for (const auto& key : order) out.push_back(std::move(grouped.at(key)));
    return out;
}

inline csv::Table perf_to_csv(const PerfTable& table) {
    csv::Table t;
    t.header = {"instance_id", "algorithm", "ert", "successes", "runs", "target"};
    for (const auto& r : table)
        t.rows.push_back({r.instance_id, r.algorithm, format_double(r.ert),
                          format_int(static_cast<std::int64_t>(r.successes)),
                          format_int(static_cast<std::int64_t>(r.runs)), format_double(r.target)});
    return t;
}

inline PerfTable perf_from_csv(const csv::Table& t) {
    const std::size_t c_inst = t.column("instance_id");
    const std::size_t c_alg = t.column("algorithm");
    const std::size_t c_ert = t.column("ert");
    const std::size_t c_succ = t.column("successes");
    const std::size_t c_runs = t.column("runs");
    const std::size_t c_tgt = t.column("target");
    PerfTable out;
    for (const auto& row : t.rows) {
        PerfRecord r;
        r.instance_id = row[c_inst];
        r.algorithm = row[c_alg];
        r.ert = parse_double(row[c_ert]);
        r.successes = static_cast<std::size_t>(parse_int(row[c_succ]));
        r.runs = static_cast<std::size_t>(parse_int(row[c_runs]));
        r.target = parse_double(row[c_tgt]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace mvela
