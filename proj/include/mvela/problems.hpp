#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "mvela/rng.hpp"
#include "mvela/space.hpp"

namespace mvela {

/// Built-in synthetic problems. All are deterministic closed forms, finite on
/// their full feasible domain, so tests have analytic ground truth.
///
///   hier1      f(a, NA) = 1, f(b, x) = (x/5)^2 on {a,b} x [-5,5]
///   sphere[@k] mixed quadratic bowl with per-category offsets (family)
///   rugged[@k] sphere plus a sinusoidal term (family)
///   sphere6    six variables, three of them categorical
///
/// Family instances (@k) shift the bowl and perturb the category offsets
/// deterministically from the instance index.

namespace detail {

inline SearchSpace mixed4_space(const std::string& name) {
    SearchSpace s;
    s.name = name;
    s.variables.push_back({"x1", VarKind::Continuous, -5.0, 5.0, {}, std::nullopt});
    s.variables.push_back({"x2", VarKind::Continuous, -5.0, 5.0, {}, std::nullopt});
    s.variables.push_back({"i1", VarKind::Integer, -5.0, 5.0, {}, std::nullopt});
    s.variables.push_back({"c1", VarKind::Categorical, 0.0, 0.0, {"a", "b", "c"}, std::nullopt});
    return s;
}

struct FamilyParams {
    double s1 = 0.0, s2 = 0.0;
    double s3 = 0.0;
    double offset[3] = {0.0, 0.25, 0.5};
    double amplitude = 0.6;
};

inline FamilyParams family_params(const std::string& family, unsigned instance) {
    FamilyParams p;
    if (instance == 0) return p;
    Rng rng = Rng::stream(0x5eedu + instance, family, instance);
    p.s1 = rng.uniform_real(-2.0, 2.0);
    p.s2 = rng.uniform_real(-2.0, 2.0);
    p.s3 = static_cast<double>(rng.uniform_int(-2, 2));
    for (double& o : p.offset) o = rng.uniform_real(0.0, 0.5);
    p.amplitude = rng.uniform_real(0.4, 0.8);
    return p;
}

inline double bowl(const Assignment& a, const FamilyParams& p) {
    const double x1 = as_real(a[0]), x2 = as_real(a[1]), i1 = as_real(a[2]);
    const std::size_t cat = (as_label(a[3]) == "a") ? 0 : (as_label(a[3]) == "b" ? 1 : 2);
    const double q = ((x1 - p.s1) / 5.0) * ((x1 - p.s1) / 5.0) +
                     ((x2 - p.s2) / 5.0) * ((x2 - p.s2) / 5.0) +
                     ((i1 - p.s3) / 5.0) * ((i1 - p.s3) / 5.0);
    return q + p.offset[cat];
}

}  // namespace detail

inline Problem make_hier1() {
    SearchSpace s;
    s.name = "hier1";
    s.variables.push_back({"c", VarKind::Categorical, 0.0, 0.0, {"a", "b"}, std::nullopt});
    VariableSpec x{"x", VarKind::Continuous, -5.0, 5.0, {}, std::nullopt};
    x.condition = Condition{"c", {Value{std::string("b")}}};
    s.variables.push_back(std::move(x));
    Problem p;
    p.name = "hier1";
    p.space = std::move(s);
    p.objective = [](const Assignment& a) {
        if (as_label(a[0]) == "a") return 1.0;
        const double x = as_real(a[1]);
        return (x / 5.0) * (x / 5.0);
    };
    return p;
}

inline Problem make_sphere(unsigned instance = 0) {
    const std::string name = instance == 0 ? "sphere" : "sphere@" + std::to_string(instance);
    Problem p;
    p.name = name;
    p.space = detail::mixed4_space(name);
    const detail::FamilyParams params = detail::family_params("sphere", instance);
    p.objective = [params](const Assignment& a) { return detail::bowl(a, params); };
    return p;
}

inline Problem make_rugged(unsigned instance = 0) {
    const std::string name = instance == 0 ? "rugged" : "rugged@" + std::to_string(instance);
    Problem p;
    p.name = name;
    p.space = detail::mixed4_space(name);
    const detail::FamilyParams params = detail::family_params("rugged", instance);
    p.objective = [params](const Assignment& a) {
        const double x1 = as_real(a[0]), x2 = as_real(a[1]), i1 = as_real(a[2]);
        const double wave = std::sin(4.5 * x1) + std::sin(4.5 * x2) + std::sin(4.5 * i1);
        return detail::bowl(a, params) + params.amplitude * (wave / 1.5 + 1.0);
    };
    return p;
}

inline Problem make_sphere6() {
    SearchSpace s;
    s.name = "sphere6";
    s.variables.push_back({"x1", VarKind::Continuous, -5.0, 5.0, {}, std::nullopt});
    s.variables.push_back({"x2", VarKind::Continuous, 0.0, 10.0, {}, std::nullopt});
    s.variables.push_back({"i1", VarKind::Integer, 0.0, 9.0, {}, std::nullopt});
    s.variables.push_back({"c1", VarKind::Categorical, 0.0, 0.0, {"a", "b"}, std::nullopt});
    s.variables.push_back({"c2", VarKind::Categorical, 0.0, 0.0, {"u", "v", "w"}, std::nullopt});
    s.variables.push_back({"c3", VarKind::Categorical, 0.0, 0.0, {"p", "q", "r", "s"}, std::nullopt});
    Problem p;
    p.name = "sphere6";
    p.space = std::move(s);
    p.objective = [](const Assignment& a) {
        const double x1 = as_real(a[0]), x2 = as_real(a[1]), i1 = as_real(a[2]);
        static const double o1[] = {0.0, 0.2};
        static const double o2[] = {0.0, 0.1, 0.3};
        static const double o3[] = {0.0, 0.05, 0.15, 0.25};
        double f = (x1 / 5.0) * (x1 / 5.0) + ((x2 - 5.0) / 5.0) * ((x2 - 5.0) / 5.0) +
                   ((i1 - 4.0) / 4.5) * ((i1 - 4.0) / 4.5);
        f += o1[as_label(a[3]) == "a" ? 0 : 1];
        f += o2[as_label(a[4]) == "u" ? 0 : (as_label(a[4]) == "v" ? 1 : 2)];
        const std::string& c3 = as_label(a[5]);
        f += o3[c3 == "p" ? 0 : (c3 == "q" ? 1 : (c3 == "r" ? 2 : 3))];
        return f;
    };
    return p;
}

/// Attaches a generic separable objective to an arbitrary valid space, so
/// spaces loaded from JSON can be sampled, featurized, and solved. Active
/// numeric variables contribute a normalized quadratic bowl, active
/// categoricals a position-based offset; inactive variables contribute
/// nothing, which creates the plateau structure typical of hierarchy.
inline Problem make_space_problem(SearchSpace space) {
    Problem p;
    p.name = space.name.empty() ? "space" : space.name;
    const SearchSpace s = space;
    p.space = std::move(space);
    p.objective = [s](const Assignment& a) {
        const auto active = active_variables(s, a);
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < s.variables.size(); ++i) {
            const auto& var = s.variables[i];
            if (active.count(var.id) == 0) continue;
            ++count;
            if (var.kind == VarKind::Categorical) {
                const std::size_t idx = var.category_index(as_label(a[i]));
                sum += 0.3 * static_cast<double>(idx) / static_cast<double>(var.categories.size() - 1);
            } else {
                const double u = (as_real(a[i]) - var.lower) / (var.upper - var.lower);
                sum += (2.0 * u - 1.0) * (2.0 * u - 1.0);
            }
        }
        return count == 0 ? 1.0 : sum / static_cast<double>(count);
    };
    return p;
}

/// Resolves a built-in problem name, including family instances such as
/// "sphere@7". Returns nullopt for unknown names.
inline std::optional<Problem> make_builtin(const std::string& name) {
    if (name == "hier1") return make_hier1();
    if (name == "sphere6") return make_sphere6();
    auto parse_family = [&](const std::string& family) -> std::optional<unsigned> {
        if (name == family) return 0u;
        const std::string prefix = family + "@";
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        try {
            return static_cast<unsigned>(std::stoul(name.substr(prefix.size())));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    if (auto k = parse_family("sphere")) return make_sphere(*k);
    if (auto k = parse_family("rugged")) return make_rugged(*k);
    return std::nullopt;
}

inline std::vector<std::string> builtin_problem_names() {
    return {"hier1", "sphere", "rugged", "sphere6"};
}

}  // namespace mvela
