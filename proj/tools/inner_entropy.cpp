// inner-entropy: command-line front end for the innerent library.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "innerent/bcsets.hpp"
#include "innerent/entropy.hpp"
#include "innerent/errors.hpp"
#include "innerent/heavy_light.hpp"
#include "innerent/innerfn.hpp"
#include "innerent/invariants.hpp"
#include "innerent/io.hpp"
#include "innerent/sublevel.hpp"

using namespace innerent;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kSchema = 2, kPrecondition = 3 };

struct Params {
    std::string input;
    std::string output;
    double p = 1.0;
    double alpha = 2.0;
    std::string M = "3";
    double eta = 0.5;
    double c = std::exp(-2.0);
    std::size_t n = 2048;
    std::optional<unsigned> depth;
    double tol = 1e-8;
    double tmax = 60.0;
    std::string quantity = "A";
    std::string z;
    std::optional<double> angle;
    std::string lambdas = "0.25,0.5,1,2";
    std::string epsilons = "0.05,0.1,0.25,0.5,1";
    unsigned level = 1;
    int threads = 0;
};

std::string real(double v) { return fmt::format("{:.17g}", v); }

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw SchemaError(fmt::format("--{} expects comma-separated numbers, got \"{}\"", what, text));
        }
    }
    if (out.empty()) throw SchemaError(fmt::format("--{} is empty", what));
    return out;
}

QuadratureConfig config_of(const Params& p) {
    QuadratureConfig cfg;
    cfg.abs_tol = p.tol;
    cfg.t_max = p.tmax;
    validate(cfg);
    return cfg;
}

Json header_of(const char* command, const Params& p, const QuadratureConfig& cfg) {
    Json h;
    h["command"] = command;
    h["n"] = p.n;
    h["tolerances"] = to_json(cfg);
    return h;
}

void emit(const Params& p, const std::string& text) {
    if (p.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(p.output);
    if (!out) throw SchemaError(fmt::format("cannot write {}", p.output));
    out << text;
}

void emit(const Params& p, const Json& j) { emit(p, j.dump(2) + "\n"); }

Json measure_input(const Params& p) {
    Json j = read_json_file(p.input);
    if (!j.is_object()) throw SchemaError("measure spec must be a JSON object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "atoms" && k != "dyadic" && k != "rotation" && k != "blaschke") {
            throw SchemaError(fmt::format("unknown field \"{}\" in measure spec", k));
        }
    }
    return j;
}

int cmd_eval(const Params& p) {
    const InnerFunctionSpec f = parse_function_spec(read_json_file(p.input));
    const QuadratureConfig cfg = config_of(p);
    Json out;
    out["header"] = header_of("eval", p, cfg);
    if (!p.z.empty()) {
        const std::vector<double> xy = parse_list(p.z, "z");
        if (xy.size() != 2) throw SchemaError("--z expects re,im");
        const DiskPoint z{xy[0], xy[1]};
        const EvalResult e = evaluate(f, z);
        Json j;
        j["z"] = {z.re, z.im};
        j["value"] = {e.value.real(), e.value.imag()};
        j["log_modulus"] = e.log_modulus;
        j["one_minus_sq_modulus"] = e.one_minus_sq_modulus;
        j["underflow"] = e.underflow;
        j["hyperbolic_derivative"] = hyperbolic_derivative(f, z);
        j["mobius_distortion"] = mobius_distortion(f, z);
        j["g_quotient"] = g_quotient(f, z);
        const auto g = grad_g(f, z);
        j["grad_g"] = {g[0], g[1]};
        try {
            const Complex q = derivative_quotient(f, z);
            j["derivative_quotient"] = {q.real(), q.imag()};
        } catch (const PoleError&) {
            j["derivative_quotient"] = nullptr;
        }
        out["interior"] = std::move(j);
    }
    if (p.angle) {
        const double closed = angular_derivative_closed_form(f, *p.angle);
        const RadialLimit r = angular_derivative_radial(f, *p.angle, cfg);
        Json j;
        j["angle"] = *p.angle;
        j["closed_form"] = std::isfinite(closed) ? Json(closed) : Json("inf");
        j["radial_estimate"] = r.estimate;
        j["radial_status"] = r.status == RadialStatus::finite ? "finite" : "diverging";
        out["boundary"] = std::move(j);
    }
    if (p.z.empty() && !p.angle) throw SchemaError("eval needs --z and/or --angle");
    emit(p, out);
    return kOk;
}

int cmd_profile(const Params& p) {
    const InnerFunctionSpec f = parse_function_spec(read_json_file(p.input));
    const QuadratureConfig cfg = config_of(p);
    const auto quantity = parse_quantity(p.quantity);
    if (!quantity) throw SchemaError(fmt::format("unknown quantity \"{}\"", p.quantity));
    if (p.n < 1) throw PreconditionError("--n must be at least 1");
    ProfileOptions opts;
    opts.alpha = p.alpha;
    opts.box_level = p.level;
    opts.threads = p.threads;
    const BoundaryProfile prof = boundary_profile(f, p.n, *quantity, cfg, opts);

    std::string text = fmt::format(
        "# quantity={} n={} t_max={} abs_tol={} divergence_cap={} max_subdivisions={}{}\n", to_string(*quantity),
        p.n, real(cfg.t_max), real(cfg.abs_tol), real(cfg.divergence_cap), cfg.max_subdivisions,
        *quantity == Quantity::B_alpha ? fmt::format(" alpha={}", real(p.alpha))
        : *quantity == Quantity::A_Q   ? fmt::format(" box_level={}", p.level)
                                       : std::string());
    text += "angle,value,status\n";
    for (std::size_t k = 0; k < prof.size(); ++k) {
        text += fmt::format("{},{},{}\n", real(prof.points[k]), real(prof.values[k]), to_string(prof.status[k]));
    }
    emit(p, text);
    return kOk;
}

int cmd_entropy(const Params& p) {
    const InnerFunctionSpec f = parse_function_spec(read_json_file(p.input));
    const QuadratureConfig cfg = config_of(p);
    if (!(p.p > 0.0)) throw PreconditionError("--p must be positive");
    if (p.n < 1) throw PreconditionError("--n must be at least 1");
    ProfileOptions opts;
    opts.threads = p.threads;
    const BoundaryProfile a = boundary_profile(f, p.n, Quantity::A, cfg, opts);
    const BoundaryProfile d = boundary_profile(f, p.n, Quantity::logfp, cfg, opts);
    const LpNorm na = lp_norm(a, p.p);
    const LpNorm nd = lp_norm(d, p.p);

    Json out;
    out["header"] = header_of("entropy", p, cfg);
    out["p"] = p.p;
    out["A_norm"] = na.norm;
    out["A_diverged_fraction"] = na.diverged_fraction;
    out["logfp_norm"] = nd.norm;
    out["logfp_diverged_fraction"] = nd.diverged_fraction;
    const double ap = std::pow(na.norm, p.p);
    out["logfp_to_A_ratio"] = ap > 0.0 ? Json(std::pow(nd.norm, p.p) / ap) : Json(nullptr);
    Json points = Json::array();
    for (std::size_t k = 0; k < a.size(); ++k) {
        points.push_back({{"angle", a.points[k]},
                          {"A", a.values[k]},
                          {"A_status", std::string(to_string(a.status[k]))},
                          {"logfp", d.values[k]},
                          {"logfp_status", std::string(to_string(d.status[k]))}});
    }
    out["points"] = std::move(points);
    emit(p, out);
    return kOk;
}

int cmd_verify(const Params& p) {
    const InnerFunctionSpec f = parse_function_spec(read_json_file(p.input));
    const QuadratureConfig cfg = config_of(p);
    SuiteOptions opts;
    opts.threads = p.threads;
    const auto results = run_invariant_suite(f, cfg, opts);
    Json out;
    out["header"] = header_of("verify", p, cfg);
    Json arr = Json::array();
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed;
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"statistic", r.statistic},
                       {"bound", r.bound},
                       {"detail", r.detail}});
    }
    out["invariants"] = std::move(arr);
    out["passed"] = ok;
    emit(p, out);
    return ok ? kOk : kInvariant;
}

int cmd_goodlambda(const Params& p) {
    const InnerFunctionSpec f = parse_function_spec(read_json_file(p.input));
    const QuadratureConfig cfg = config_of(p);
    const auto M = parse_rational(p.M);
    if (!M) throw SchemaError(fmt::format("--M expects a number, got \"{}\"", p.M));
    const GoodLambdaTable t = good_lambda_scan(f, p.n, to_double(*M), p.eta, parse_list(p.lambdas, "lambda"),
                                               parse_list(p.epsilons, "eps"), cfg, p.threads);
    Json out;
    out["header"] = header_of("goodlambda", p, cfg);
    out["table"] = to_json(t);
    emit(p, out);
    return kOk;
}

int cmd_bcset(const Params& p) {
    const BoundarySet e = parse_boundary_set(read_json_file(p.input));
    if (!(p.p > 0.0)) throw PreconditionError("--p must be positive");
    const unsigned depth = p.depth.value_or(200);
    const BcClassification c = classify_bc(e, p.p, depth);
    Json out;
    out["header"] = {{"command", "bcset"}, {"p", p.p}, {"depth", depth}, {"dyadic_depth", 20}};
    out["result"] = to_json(c);
    emit(p, out);
    return c.unanimous() ? kOk : kInvariant;
}

int cmd_decompose(const Params& p) {
    const SingularMeasure mu = parse_measure(measure_input(p));
    const auto M = parse_rational(p.M);
    if (!M) throw SchemaError(fmt::format("--M expects a number, got \"{}\"", p.M));
    if (!(*M > 0)) throw PreconditionError("--M must be positive");
    const unsigned depth = p.depth.value_or(24);
    const HeavyLightForest forest = heavy_light_decompose(mu, *M, depth);
    const HeavyLightCheck check = verify_forest(forest, mu);
    Json out;
    out["header"] = {{"command", "decompose"}, {"M", p.M}, {"max_depth", depth}};
    out["forest"] = to_json(forest, check);
    emit(p, out);
    return check.passed() ? kOk : kInvariant;
}

int cmd_sublevel(const Params& p) {
    const SingularMeasure mu = parse_measure(measure_input(p));
    const unsigned depth = p.depth.value_or(18);
    SublevelOptions opts;
    opts.threads = p.threads;
    if (!(p.c > 0.0 && p.c < 1.0)) throw PreconditionError("--c must lie in (0, 1)");
    if (!(p.p > 0.0)) throw PreconditionError("--p must be positive");
    const SublevelResult r = sublevel_integral(mu, p.c, p.p, depth, opts);
    Json out;
    out["header"] = {{"command", "sublevel"}, {"c", p.c}, {"p", p.p}, {"depth", depth}};
    out["result"] = to_json(r);
    emit(p, out);
    return kOk;
}

int threads_from_env() {
    const char* v = std::getenv("INNER_ENTROPY_THREADS");
    if (!v || !*v) return 0;
    try {
        std::size_t used = 0;
        const int n = std::stoi(v, &used);
        if (used != std::string(v).size() || n < 0) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw SchemaError(fmt::format("INNER_ENTROPY_THREADS must be a nonnegative integer, got \"{}\"", v));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary quantities of inner functions, Beurling-Carleson tests and heavy-light decompositions"};
    app.require_subcommand(1, 1);
    Params p;

    auto input = [&](CLI::App* c) { c->add_option("--input", p.input, "JSON spec")->required(); };
    auto output = [&](CLI::App* c) { c->add_option("--output", p.output, "output file (default stdout)"); };
    auto quad = [&](CLI::App* c) {
        c->add_option("--tol", p.tol, "absolute quadrature tolerance");
        c->add_option("--tmax", p.tmax, "hyperbolic-length cutoff of radial integrals");
    };

    auto* eval = app.add_subcommand("eval", "evaluate f and its derived quantities at a point");
    input(eval);
    output(eval);
    quad(eval);
    eval->add_option("--z", p.z, "interior point re,im");
    eval->add_option("--angle", p.angle, "boundary angle in turns");

    auto* profile = app.add_subcommand("profile", "boundary profile as CSV");
    input(profile);
    output(profile);
    quad(profile);
    profile->add_option("--quantity", p.quantity, "A, logfp, B_alpha or A_Q");
    profile->add_option("--n", p.n, "grid size");
    profile->add_option("--alpha", p.alpha, "Stolz aperture for B_alpha");
    profile->add_option("--level", p.level, "dyadic level of the box for A_Q");

    auto* entropy = app.add_subcommand("entropy", "L^p norms of A(f) and log|f'|");
    input(entropy);
    output(entropy);
    quad(entropy);
    entropy->add_option("--p", p.p, "exponent");
    entropy->add_option("--n", p.n, "grid size");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    input(verify);
    output(verify);
    quad(verify);

    auto* goodlambda = app.add_subcommand("goodlambda", "good-lambda set fractions");
    input(goodlambda);
    output(goodlambda);
    quad(goodlambda);
    goodlambda->add_option("--n", p.n, "grid size");
    goodlambda->add_option("--M", p.M, "level multiplier, > 2");
    goodlambda->add_option("--eta", p.eta, "target ratio in (0, 1)");
    goodlambda->add_option("--lambda", p.lambdas, "comma-separated lambda grid");
    goodlambda->add_option("--eps", p.epsilons, "comma-separated epsilon grid");

    auto* bcset = app.add_subcommand("bcset", "Beurling-Carleson tests for a boundary set");
    input(bcset);
    output(bcset);
    bcset->add_option("--p", p.p, "exponent");
    bcset->add_option("--depth", p.depth, "generations for the gap tests");

    auto* decompose = app.add_subcommand("decompose", "heavy-light decomposition of the singular measure");
    input(decompose);
    output(decompose);
    decompose->add_option("--M", p.M, "heavy threshold (number or p/q)");
    decompose->add_option("--depth", p.depth, "maximal dyadic level");

    auto* sublevel = app.add_subcommand("sublevel", "sublevel-set integral of S_mu");
    input(sublevel);
    output(sublevel);
    sublevel->add_option("--c", p.c, "level in (0, 1)");
    sublevel->add_option("--p", p.p, "exponent");
    sublevel->add_option("--depth", p.depth, "number of dyadic shells");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kSchema;
    }

    try {
        p.threads = threads_from_env();
        if (*eval) return cmd_eval(p);
        if (*profile) return cmd_profile(p);
        if (*entropy) return cmd_entropy(p);
        if (*verify) return cmd_verify(p);
        if (*goodlambda) return cmd_goodlambda(p);
        if (*bcset) return cmd_bcset(p);
        if (*decompose) return cmd_decompose(p);
        if (*sublevel) return cmd_sublevel(p);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kSchema;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kSchema;
    } catch (const ConsistencyError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return kInvariant;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kInvariant;
    } catch (const Error& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return kPrecondition;
    }
    return kOk;
}
