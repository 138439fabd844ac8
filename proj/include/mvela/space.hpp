#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvela/core.hpp"

namespace mvela {

enum class VarKind { Continuous, Integer, Categorical };

inline std::string to_string(VarKind k) {
    switch (k) {
        case VarKind::Continuous: return "continuous";
        case VarKind::Integer: return "integer";
        case VarKind::Categorical: return "categorical";
    }
    throw ValidationError("unknown variable kind");
}

inline VarKind var_kind_from_string(const std::string& s) {
    if (s == "continuous") return VarKind::Continuous;
    if (s == "integer") return VarKind::Integer;
    if (s == "categorical") return VarKind::Categorical;
    throw DataError("unknown variable kind: " + s);
}

/// Activation condition: the variable participates in the landscape only
/// while its parent holds one of the listed values.
struct Condition {
    std::string parent_id;
    std::vector<Value> activating_values;
};

struct VariableSpec {
    std::string id;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;                    // continuous/integer only
    double upper = 0.0;                    // continuous/integer only
    std::vector<std::string> categories;   // categorical only
    std::optional<Condition> condition;

    std::size_t category_index(const std::string& label) const {
        for (std::size_t i = 0; i < categories.size(); ++i)
            if (categories[i] == label) return i;
        throw ValidationError("variable '" + id + "': unknown category '" + label + "'");
    }
};

class SearchSpace {
public:
    std::string name;
    std::vector<VariableSpec> variables;

    std::size_t dimension() const { return variables.size(); }

    std::size_t index_of(const std::string& id) const {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i].id == id) return i;
        throw ValidationError("unknown variable id: " + id);
    }

    bool has_variable(const std::string& id) const {
        for (const auto& v : variables)
            if (v.id == id) return true;
        return false;
    }

    std::size_t categorical_count() const {
        std::size_t c = 0;
        for (const auto& v : variables)
            if (v.kind == VarKind::Categorical) ++c;
        return c;
    }

    /// Variable indices ordered so that every parent precedes its children.
    /// Requires an acyclic condition graph.
    std::vector<std::size_t> topological_order() const {
        const std::size_t n = variables.size();
        std::vector<int> state(n, 0);  // 0 unvisited, 1 in progress, 2 done
        std::vector<std::size_t> order;
        order.reserve(n);
        std::function<void(std::size_t)> visit = [&](std::size_t i) {
            if (state[i] == 2) return;
            if (state[i] == 1) throw ValidationError("condition cycle involving '" + variables[i].id + "'");
            state[i] = 1;
            if (variables[i].condition && has_variable(variables[i].condition->parent_id))
                visit(index_of(variables[i].condition->parent_id));
            state[i] = 2;
            order.push_back(i);
        };
        for (std::size_t i = 0; i < n; ++i) visit(i);
        return order;
    }
};

namespace detail {

inline bool value_in_domain(const VariableSpec& var, const Value& v) {
    switch (var.kind) {
        case VarKind::Continuous: {
            if (!std::holds_alternative<double>(v) && !std::holds_alternative<std::int64_t>(v)) return false;
            const double x = as_real(v);
            return std::isfinite(x) && x >= var.lower && x <= var.upper;
        }
        case VarKind::Integer: {
            if (!std::holds_alternative<std::int64_t>(v)) return false;
            const double x = as_real(v);
            return x >= var.lower && x <= var.upper;
        }
        case VarKind::Categorical: {
            if (!std::holds_alternative<std::string>(v)) return false;
            const std::string& s = std::get<std::string>(v);
            for (const auto& c : var.categories)
                if (c == s) return true;
            return false;
        }
    }
    return false;
}

inline bool values_equal(const Value& a, const Value& b) {
    if (std::holds_alternative<std::string>(a) && std::holds_alternative<std::string>(b))
        return std::get<std::string>(a) == std::get<std::string>(b);
    if (is_na(a) || is_na(b)) return is_na(a) && is_na(b);
    const bool a_num = std::holds_alternative<double>(a) || std::holds_alternative<std::int64_t>(a);
    const bool b_num = std::holds_alternative<double>(b) || std::holds_alternative<std::int64_t>(b);
    if (a_num && b_num) return as_real(a) == as_real(b);
    return false;
}

}  // namespace detail

/// Checks every SearchSpace invariant. An empty result means the space is
/// valid; otherwise each violation is described on its own line.
inline std::vector<std::string> validate_space(const SearchSpace& space) {
    std::vector<std::string> violations;
    if (space.variables.empty()) violations.push_back("space must contain at least one variable");

    std::set<std::string> seen;
    for (const auto& v : space.variables) {
        if (!seen.insert(v.id).second)
            violations.push_back("duplicate variable id '" + v.id + "'");
    }

    for (const auto& v : space.variables) {
        switch (v.kind) {
            case VarKind::Continuous:
                if (!(v.lower < v.upper))
                    violations.push_back("variable '" + v.id + "': continuous bounds require lower < upper");
                break;
            case VarKind::Integer:
                if (!(v.lower <= v.upper))
                    violations.push_back("variable '" + v.id + "': integer bounds require lower <= upper");
                break;
            case VarKind::Categorical: {
                if (v.categories.size() < 2)
                    violations.push_back("variable '" + v.id + "': categorical cardinality must be >= 2");
                std::set<std::string> cats(v.categories.begin(), v.categories.end());
                if (cats.size() != v.categories.size())
                    violations.push_back("variable '" + v.id + "': categories must be unique");
                break;
            }
        }
        if (v.condition) {
            const auto& cond = *v.condition;
            if (!space.has_variable(cond.parent_id)) {
                violations.push_back("variable '" + v.id + "': condition parent '" + cond.parent_id +
                                     "' does not exist");
            } else {
                const auto& parent = space.variables[space.index_of(cond.parent_id)];
                if (cond.activating_values.empty())
                    violations.push_back("variable '" + v.id + "': condition needs at least one activating value");
                for (const auto& val : cond.activating_values) {
                    if (!detail::value_in_domain(parent, val))
                        violations.push_back("variable '" + v.id + "': activating value outside domain of parent '" +
                                             cond.parent_id + "'");
                }
            }
        }
    }

    // Cycle check over condition edges (self-loops included).
    const std::size_t n = space.variables.size();
    std::vector<int> state(n, 0);
    std::function<bool(std::size_t)> has_cycle = [&](std::size_t i) -> bool {
        if (state[i] == 2) return false;
        if (state[i] == 1) return true;
        state[i] = 1;
        bool cyc = false;
        if (space.variables[i].condition && space.has_variable(space.variables[i].condition->parent_id))
            cyc = has_cycle(space.index_of(space.variables[i].condition->parent_id));
        state[i] = 2;
        return cyc;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(state.begin(), state.end(), 0);
        if (has_cycle(i)) {
            violations.push_back("condition graph contains a cycle through '" + space.variables[i].id + "'");
            break;
        }
    }
    return violations;
}

/// Set of variable ids active under the given assignment. A variable is
/// active iff it is unconditioned, or its parent is active and the parent's
/// value is one of the activating values; chains act conjunctively.
inline std::set<std::string> active_variables(const SearchSpace& space, const Assignment& assignment) {
    if (assignment.size() != space.dimension())
        throw ValidationError("assignment length " + std::to_string(assignment.size()) +
                              " does not match dimension " + std::to_string(space.dimension()));
    for (std::size_t i = 0; i < space.variables.size(); ++i) {
        if (!space.variables[i].condition && is_na(assignment[i]))
            throw ValidationError("variable '" + space.variables[i].id + "' is unconditioned but assigned NA");
    }
    std::vector<bool> active(space.dimension(), false);
    for (std::size_t i : space.topological_order()) {
        const auto& var = space.variables[i];
        if (!var.condition) {
            active[i] = true;
            continue;
        }
        const std::size_t p = space.index_of(var.condition->parent_id);
        if (!active[p]) continue;
        for (const auto& val : var.condition->activating_values) {
            if (detail::values_equal(assignment[p], val)) {
                active[i] = true;
                break;
            }
        }
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < space.dimension(); ++i)
        if (active[i]) ids.insert(space.variables[i].id);
    return ids;
}

/// A mixed-variable minimization problem. The objective must accept NA on
/// inactive entries and return a finite value on every feasible assignment.
struct Problem {
    std::string name;
    SearchSpace space;
    std::function<double(const Assignment&)> objective;
};

/// Evaluates the objective after enforcing feasibility: values must lie in
/// their domains and NA must appear exactly on inactive variables.
inline double evaluate(const Problem& problem, const Assignment& assignment) {
    const auto active = active_variables(problem.space, assignment);
    for (std::size_t i = 0; i < problem.space.dimension(); ++i) {
        const auto& var = problem.space.variables[i];
        const bool is_active = active.count(var.id) > 0;
        if (!is_active) {
            if (!is_na(assignment[i]))
                throw ValidationError("infeasible: variable '" + var.id + "' is inactive but has a value");
            continue;
        }
        if (is_na(assignment[i]))
            throw ValidationError("infeasible: variable '" + var.id + "' is active but assigned NA");
        if (!detail::value_in_domain(var, assignment[i]))
            throw ValidationError("infeasible: value of '" + var.id + "' outside its domain");
    }
    const double y = problem.objective(assignment);
    if (!std::isfinite(y)) throw ValidationError("objective returned a non-finite value");
    return y;
}

// --- JSON serialization ----------------------------------------------------
//
// {"name": ..., "variables": [{"id", "kind", "lower", "upper", "categories",
//  "condition": {"parent", "values"}}]}; absent fields encode optionality.

inline nlohmann::ordered_json to_json(const SearchSpace& space) {
    nlohmann::ordered_json j;
    j["name"] = space.name;
    j["variables"] = nlohmann::ordered_json::array();
    for (const auto& v : space.variables) {
        nlohmann::ordered_json jv;
        jv["id"] = v.id;
        jv["kind"] = to_string(v.kind);
        if (v.kind != VarKind::Categorical) {
            jv["lower"] = v.lower;
            jv["upper"] = v.upper;
        } else {
            jv["categories"] = v.categories;
        }
        if (v.condition) {
            nlohmann::ordered_json jc;
            jc["parent"] = v.condition->parent_id;
            jc["values"] = nlohmann::ordered_json::array();
            for (const auto& val : v.condition->activating_values) {
                if (std::holds_alternative<std::string>(val))
                    jc["values"].push_back(std::get<std::string>(val));
                else if (std::holds_alternative<std::int64_t>(val))
                    jc["values"].push_back(std::get<std::int64_t>(val));
                else
                    jc["values"].push_back(as_real(val));
            }
            jv["condition"] = jc;
        }
        j["variables"].push_back(jv);
    }
    return j;
}

inline SearchSpace space_from_json(const nlohmann::json& j) {
    SearchSpace space;
    space.name = j.value("name", "");
    if (!j.contains("variables") || !j["variables"].is_array())
        throw DataError("space JSON needs a 'variables' array");
    for (const auto& jv : j["variables"]) {
        VariableSpec v;
        v.id = jv.at("id").get<std::string>();
        v.kind = var_kind_from_string(jv.at("kind").get<std::string>());
        if (v.kind == VarKind::Categorical) {
            v.categories = jv.at("categories").get<std::vector<std::string>>();
        } else {
            v.lower = jv.at("lower").get<double>();
            v.upper = jv.at("upper").get<double>();
        }
        if (jv.contains("condition")) {
            Condition c;
            c.parent_id = jv["condition"].at("parent").get<std::string>();
            for (const auto& val : jv["condition"].at("values")) {
                if (val.is_string())
                    c.activating_values.push_back(val.get<std::string>());
                else if (val.is_number_integer())
                    c.activating_values.push_back(val.get<std::int64_t>());
                else
                    c.activating_values.push_back(val.get<double>());
            }
            v.condition = std::move(c);
        }
        space.variables.push_back(std::move(v));
    }
    return space;
}

}  // namespace mvela
