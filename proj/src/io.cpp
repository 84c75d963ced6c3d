#include "innerent/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "innerent/errors.hpp"

namespace innerent {

namespace {

void require_object(const Json& j, const char* what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError(fmt::format("{} must be a JSON object", what));
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& item : j.items()) {
        if (!keys.count(item.key())) throw SchemaError(fmt::format("unknown field \"{}\" in {}", item.key(), what));
    }
}

double number(const Json& j, const char* field, const char* what) {
    if (!j.contains(field)) throw SchemaError(fmt::format("{} lacks \"{}\"", what, field));
    const Json& v = j.at(field);
    if (!v.is_number()) throw SchemaError(fmt::format("\"{}\" in {} must be a number", field, what));
    return v.get<double>();
}

double optional_number(const Json& j, const char* field, double fallback, const char* what) {
    if (!j.contains(field)) return fallback;
    return number(j, field, what);
}

unsigned count(const Json& j, const char* field, const char* what) {
    if (!j.contains(field)) throw SchemaError(fmt::format("{} lacks \"{}\"", what, field));
    const Json& v = j.at(field);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw SchemaError(fmt::format("\"{}\" in {} must be a nonnegative integer", field, what));
    }
    return v.get<unsigned>();
}

// A number, or a string holding an exact rational.
struct Scalar {
    double value = 0.0;
    std::optional<Rational> exact;
};

Scalar scalar(const Json& v, const char* field, const char* what) {
    if (v.is_number()) return {v.get<double>(), std::nullopt};
    if (v.is_string()) {
        const auto q = parse_rational(v.get<std::string>());
        if (!q) throw SchemaError(fmt::format("\"{}\" in {} is not a rational: {}", field, what, v.get<std::string>()));
        return {to_double(*q), q};
    }
    throw SchemaError(fmt::format("\"{}\" in {} must be a number or a \"p/q\" string", field, what));
}

Json arc_json(const ForestArc& a) {
    Json j;
    j["level"] = a.arc.level;
    j["index"] = a.arc.index;
    j["mass"] = to_string(a.mass);
    if (a.tie) j["tie"] = true;
    return j;
}

Json series_values(const std::vector<double>& v) {
    Json arr = Json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(fmt::format("cannot open {}", path));
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(fmt::format("{}: {}", path, e.what()));
    }
}

SingularMeasure parse_measure(const Json& j) {
    SingularMeasure mu;
    if (j.contains("atoms")) {
        const Json& atoms = j.at("atoms");
        if (!atoms.is_array()) throw SchemaError("\"atoms\" must be an array");
        for (const Json& a : atoms) {
            require_object(a, "atom", {"angle", "mass"});
            if (!a.contains("angle") || !a.contains("mass")) throw SchemaError("atom needs \"angle\" and \"mass\"");
            const Scalar angle = scalar(a.at("angle"), "angle", "atom");
            const Scalar mass = scalar(a.at("mass"), "mass", "atom");
            if (!(mass.value >= 0.0)) throw DomainError(fmt::format("atom mass {} is negative", mass.value));
            Atom atom{angle.value, mass.value, angle.exact, mass.exact};
            mu.add_atom(std::move(atom));
        }
    }
    if (j.contains("dyadic")) {
        const Json& d = j.at("dyadic");
        require_object(d, "dyadic tree", {"depth", "masses"});
        DyadicTree tree;
        tree.depth = count(d, "depth", "dyadic tree");
        if (!d.contains("masses") || !d.at("masses").is_array()) throw SchemaError("dyadic tree needs a \"masses\" array");
        bool any_exact = false;
        for (const Json& m : d.at("masses")) {
            const Scalar s = scalar(m, "masses", "dyadic tree");
            tree.masses.push_back(s.value);
            tree.exact_masses.push_back(s.exact);
            any_exact = any_exact || s.exact.has_value();
        }
        if (!any_exact) tree.exact_masses.clear();
        mu.set_tree(std::move(tree));
    }
    return mu;
}

InnerFunctionSpec parse_function_spec(const Json& j) {
    require_object(j, "function spec", {"rotation", "blaschke", "atoms", "dyadic"});
    InnerFunctionSpec f;
    f.rotation = optional_number(j, "rotation", 0.0, "function spec");
    if (j.contains("blaschke")) {
        const Json& b = j.at("blaschke");
        if (!b.is_array()) throw SchemaError("\"blaschke\" must be an array");
        for (const Json& z : b) {
            require_object(z, "Blaschke zero", {"re", "im", "mult"});
            BlaschkeFactor factor;
            factor.zero = DiskPoint{number(z, "re", "Blaschke zero"), optional_number(z, "im", 0.0, "Blaschke zero")};
            factor.multiplicity = z.contains("mult") ? count(z, "mult", "Blaschke zero") : 1u;
            f.factors.push_back(factor);
        }
    }
    f.singular = parse_measure(j);
    validate(f);
    return f;
}

BoundarySet parse_boundary_set(const Json& j) {
    require_object(j, "set spec", {"gaps", "cantor"});
    if (j.contains("gaps") == j.contains("cantor")) throw SchemaError("set spec needs exactly one of \"gaps\", \"cantor\"");
    if (j.contains("gaps")) {
        const Json& g = j.at("gaps");
        if (!g.is_array()) throw SchemaError("\"gaps\" must be an array");
        std::vector<Gap> gaps;
        for (const Json& item : g) {
            require_object(item, "gap", {"start", "length"});
            gaps.push_back({number(item, "start", "gap"), number(item, "length", "gap")});
        }
        return BoundarySet::from_gaps(std::move(gaps));
    }
    const Json& c = j.at("cantor");
    require_object(c, "cantor spec", {"rule", "levels"});
    if (!c.contains("rule") || !c.at("rule").is_string()) throw SchemaError("cantor spec needs a \"rule\" string");
    const auto rule = parse_cantor_rule(c.at("rule").get<std::string>());
    if (!rule) throw SchemaError(fmt::format("unknown cantor rule \"{}\"", c.at("rule").get<std::string>()));
    return generalized_cantor(*rule, count(c, "levels", "cantor spec"));
}

Json to_json(const HeavyLightForest& forest, const HeavyLightCheck& check) {
    Json out;
    out["M"] = to_string(forest.M);
    out["max_depth"] = forest.max_depth;
    out["depth_exhausted"] = forest.depth_exhausted;
    out["ties"] = forest.ties;
    Json gens = Json::array();
    for (const auto& g : forest.generations) {
        Json gj;
        Json heavy = Json::array();
        for (const auto& h : g.heavy) {
            Json hj = arc_json(h.arc);
            if (h.parent) hj["parent"] = {h.parent->first, h.parent->second};
            Json light = Json::array();
            for (const auto& a : h.light) light.push_back(arc_json(a));
            hj["light"] = std::move(light);
            Json unresolved = Json::array();
            for (const auto& a : h.unresolved) unresolved.push_back(arc_json(a));
            hj["unresolved"] = std::move(unresolved);
            heavy.push_back(std::move(hj));
        }
        gj["heavy"] = std::move(heavy);
        Json unresolved = Json::array();
        for (const auto& a : g.unresolved) unresolved.push_back(arc_json(a));
        gj["unresolved"] = std::move(unresolved);
        gens.push_back(std::move(gj));
    }
    out["generations"] = std::move(gens);
    Json cj;
    cj["partition"] = check.partition;
    cj["resolved_partition"] = check.resolved_partition;
    cj["packing"] = check.packing;
    cj["containment"] = check.containment;
    Json residual = Json::array();
    for (const auto& x : check.residual_support) residual.push_back(to_string(x));
    cj["residual_support"] = std::move(residual);
    cj["unaccounted_mass"] = to_string(check.unaccounted_mass);
    out["check"] = std::move(cj);
    return out;
}

Json to_json(const BcSeries& s) {
    Json j;
    j["verdict"] = std::string(to_string(s.verdict));
    if (s.exponent) j["tail_exponent"] = *s.exponent;
    if (!s.note.empty()) j["note"] = s.note;
    j["terms"] = series_values(s.terms);
    j["partial_sums"] = series_values(s.partial_sums);
    return j;
}

Json to_json(const BcClassification& c) {
    Json j;
    j["verdict"] = c.verdict ? std::string(to_string(*c.verdict)) : std::string("disagreement");
    j["unanimous"] = c.unanimous();
    j["integral"] = to_json(c.a);
    j["complementary"] = to_json(c.b);
    j["dyadic"] = to_json(c.c);
    return j;
}

Json to_json(const SublevelResult& r) {
    Json j;
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.exponent) j["tail_exponent"] = *r.exponent;
    j["shells"] = series_values(r.shells);
    j["partial_integrals"] = series_values(r.partial_integrals);
    return j;
}

Json to_json(const GoodLambdaTable& t) {
    Json j;
    j["M"] = t.M;
    j["eta"] = t.eta;
    j["n"] = t.n;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"lambda", r.lambda},
                        {"epsilon", r.epsilon},
                        {"numerator", r.numerator},
                        {"denominator", r.denominator},
                        {"ratio", r.ratio}});
    }
    j["rows"] = std::move(rows);
    Json best = Json::array();
    for (const auto& b : t.best_epsilon) best.push_back(b ? Json(*b) : Json(nullptr));
    j["best_epsilon"] = std::move(best);
    return j;
}

Json to_json(const QuadratureConfig& cfg) {
    return {{"t_max", cfg.t_max},
            {"abs_tol", cfg.abs_tol},
            {"divergence_cap", cfg.divergence_cap},
            {"max_subdivisions", cfg.max_subdivisions},
            {"radial_depth", cfg.radial_depth},
            {"radial_tol", cfg.radial_tol}};
}

}  // namespace innerent
