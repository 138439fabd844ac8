#pragma once

#include <string>
#include <vector>

#include "mvela/csv.hpp"
#include "mvela/rng.hpp"
#include "mvela/space.hpp"

namespace mvela {

/// Uniform random initial design: mixed-valued rows (NA on inactive entries
/// until imputation) plus the objective values computed on the constrained,
/// feasible assignments.
struct Design {
    std::string space_ref;
    std::vector<Assignment> rows;
    std::vector<double> y;
    std::uint64_t seed = 0;

    std::size_t size() const { return rows.size(); }
};

namespace detail {

inline Value draw_value(const VariableSpec& var, Rng& rng) {
    switch (var.kind) {
        case VarKind::Continuous:
            return Value{rng.uniform_real(var.lower, var.upper)};
        case VarKind::Integer:
            return Value{rng.uniform_int(static_cast<std::int64_t>(var.lower),
                                         static_cast<std::int64_t>(var.upper))};
        case VarKind::Categorical:
            return Value{var.categories[rng.index(var.categories.size())]};
    }
    throw ValidationError("unknown variable kind");
}

}  // namespace detail

/// Draws one feasible assignment: variables are visited parents-first and a
/// conditioned variable is drawn only while active, otherwise it stays NA.
inline Assignment sample_assignment(const SearchSpace& space, Rng& rng) {
    Assignment row(space.dimension(), Value{NA{}});
    std::vector<bool> active(space.dimension(), false);
    for (std::size_t i : space.topological_order()) {
        const auto& var = space.variables[i];
        bool on = true;
        if (var.condition) {
            const std::size_t p = space.index_of(var.condition->parent_id);
            on = false;
            if (active[p]) {
                for (const auto& val : var.condition->activating_values) {
                    if (detail::values_equal(row[p], val)) {
                        on = true;
                        break;
                    }
                }
            }
        }
        active[i] = on;
        if (on) row[i] = detail::draw_value(var, rng);
    }
    return row;
}

/// Uniform random design of n rows with objective values. Identical
/// (space, n, seed) inputs give identical designs; the stream is independent
/// of the imputation stream derived from the same user seed.
inline Design sample_design(const Problem& problem, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ValidationError("sample_design needs n >= 2");
    const auto violations = validate_space(problem.space);
    if (!violations.empty()) throw ValidationError("invalid space: " + violations.front());

    Rng rng = Rng::stream(seed, "sample");
    Design d;
    d.space_ref = problem.space.name;
    d.seed = seed;
    d.rows.reserve(n);
    d.y.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        Assignment row = sample_assignment(problem.space, rng);
        d.y.push_back(evaluate(problem, row));
        d.rows.push_back(std::move(row));
    }
    return d;
}

/// Replaces every NA with a fresh uniform draw from the variable's full
/// domain, exactly once per entry. Objective values are never touched; they
/// were computed on the constrained assignment.
inline Design impute_inactive(const Design& design, const SearchSpace& space, std::uint64_t seed) {
    Rng rng = Rng::stream(seed, "impute");
    Design out = design;
    for (auto& row : out.rows) {
        if (row.size() != space.dimension())
            throw ValidationError("design row length does not match space dimension");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (is_na(row[i])) row[i] = detail::draw_value(space.variables[i], rng);
        }
    }
    return out;
}

// --- CSV -------------------------------------------------------------------
// One column per variable ("NA" literal for inactive entries), final column
// "y"; the header row is mandatory.

inline csv::Table design_to_csv(const Design& design, const SearchSpace& space) {
    csv::Table t;
    for (const auto& v : space.variables) t.header.push_back(v.id);
    t.header.push_back("y");
    for (std::size_t r = 0; r < design.size(); ++r) {
        std::vector<std::string> row;
        row.reserve(space.dimension() + 1);
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            const Value& v = design.rows[r][i];
            if (is_na(v)) {
                row.push_back("NA");
            } else if (space.variables[i].kind == VarKind::Categorical) {
                row.push_back(as_label(v));
            } else if (space.variables[i].kind == VarKind::Integer) {
                row.push_back(format_int(std::get<std::int64_t>(v)));
            } else {
                row.push_back(format_double(as_real(v)));
            }
        }
        row.push_back(format_double(design.y[r]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Design design_from_csv(const csv::Table& t, const SearchSpace& space) {
    Design d;
    d.space_ref = space.name;
    if (t.header.size() != space.dimension() + 1 || t.header.back() != "y")
        throw DataError("design CSV header does not match space");
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        if (t.header[i] != space.variables[i].id)
            throw DataError("design CSV column '" + t.header[i] + "' does not match variable '" +
                            space.variables[i].id + "'");
    }
    for (const auto& row : t.rows) {
        Assignment a(space.dimension(), Value{NA{}});
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            if (row[i] == "NA") continue;
            switch (space.variables[i].kind) {
                case VarKind::Continuous: a[i] = parse_double(row[i]); break;
                case VarKind::Integer: a[i] = parse_int(row[i]); break;
                case VarKind::Categorical: a[i] = row[i]; break;
            }
        }
        d.rows.push_back(std::move(a));
        d.y.push_back(parse_double(row.back()));
    }
    return d;
}

}  // namespace mvela
