#include "innerent/innerfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "innerent/errors.hpp"

namespace innerent {

namespace {

constexpr double kPoleDistance = 1e-14;
constexpr double kSchwarzPickSlack = 1e-9;
const double kLogMinNormal = std::log(std::numeric_limits<double>::min());

struct FactorGeometry {
    double rho;    // |a|
    double gap;    // 1 - |a|
    double angle;  // arg a in turns
    Complex a;
};

FactorGeometry geometry(const BlaschkeFactor& factor) {
    const PolarPoint p = PolarPoint::from(factor.zero);
    return {p.radius, p.gap, p.angle, factor.zero.z()};
}

// 1 - conj(a) z, computed from the polar data of a and z.
Complex one_minus_conj_a_z(const FactorGeometry& g, const PolarPoint& z) {
    const double rho = g.rho * z.radius;
    const double gap = g.gap + g.rho * z.gap;
    return one_minus_polar(rho, gap, z.angle - g.angle);
}

double one_minus_conj_a_z_norm(const FactorGeometry& g, const PolarPoint& z) {
    const double rho = g.rho * z.radius;
    const double gap = g.gap + g.rho * z.gap;
    return one_minus_polar_norm(rho, gap, z.angle - g.angle);
}

struct Accumulated {
    double log_modulus = 0.0;
    double phase = 0.0;  // radians
};

// log|f| and arg f. `skip` drops one copy of that factor (removable-value path).
Accumulated accumulate(const InnerFunctionSpec& f, const PolarPoint& z, std::ptrdiff_t skip = -1) {
    Accumulated acc;
    acc.phase = kTwoPi * f.rotation;
    const Complex zc = z.z();
    const double one_minus_sq_z = z.one_minus_sq();

    for (std::size_t k = 0; k < f.factors.size(); ++k) {
        const auto& factor = f.factors[k];
        const unsigned mult = factor.multiplicity - (static_cast<std::ptrdiff_t>(k) == skip ? 1u : 0u);
        if (mult == 0) continue;
        const FactorGeometry g = geometry(factor);
        const double denom = one_minus_conj_a_z_norm(g, z);
        const double q = g.gap * (2.0 - g.gap) * one_minus_sq_z / denom;
        const Complex diff = g.a - zc;
        double log_b = 0.0;
        if (q <= 0.5) {
            log_b = 0.5 * std::log1p(-q);
        } else {
            log_b = std::log(std::abs(diff)) - 0.5 * std::log(denom);
        }
        acc.log_modulus += mult * log_b;
        acc.phase += mult * (std::arg(diff) - std::arg(one_minus_conj_a_z(g, z)));
    }

    for (const auto& atom : f.singular.point_masses()) {
        const double psi = z.angle - atom.angle;
        const double n = one_minus_polar_norm(z.radius, z.gap, psi);
        acc.log_modulus -= atom.mass * one_minus_sq_z / n;
        const double d = turn_difference(z.angle, atom.angle);
        acc.phase -= atom.mass * 2.0 * z.radius * std::sin(kTwoPi * d) / n;
    }
    return acc;
}

void require_open_disk(const PolarPoint& z, const char* what) {
    if (!(z.gap > 0.0) || !(z.radius >= 0.0)) {
        throw DomainError(fmt::format("{}: point is not in the open unit disk", what));
    }
}

void require_open_disk(DiskPoint z, const char* what) {
    if (!(z.modulus() < 1.0)) {
        throw DomainError(fmt::format("{}: point ({}, {}) is not in the open unit disk", what, z.re, z.im));
    }
}

// Factors whose zero coincides with z (distance below kPoleDistance).
struct ZeroHit {
    unsigned multiplicity = 0;
    std::ptrdiff_t index = -1;
};

ZeroHit zero_at(const InnerFunctionSpec& f, const PolarPoint& z) {
    ZeroHit hit;
    const Complex zc = z.z();
    for (std::size_t k = 0; k < f.factors.size(); ++k) {
        if (std::abs(f.factors[k].zero.z() - zc) < kPoleDistance) {
            hit.multiplicity += f.factors[k].multiplicity;
            hit.index = static_cast<std::ptrdiff_t>(k);
        }
    }
    return hit;
}

double finish_hyperbolic_derivative(double d) {
    if (!(d <= 1.0 + kSchwarzPickSlack)) {
        throw ConsistencyError(fmt::format("hyperbolic derivative {} exceeds 1 (Schwarz-Pick)", d));
    }
    return std::clamp(d, 0.0, 1.0);
}

}  // namespace

InnerFunctionSpec InnerFunctionSpec::power(unsigned k) {
    InnerFunctionSpec f;
    if (k > 0) {
        f.factors.push_back({DiskPoint{0.0, 0.0}, k});
        // b_0(z) = -z, so z^k = (-1)^k b_0^k
        f.rotation = (k % 2 == 1) ? 0.5 : 0.0;
    }
    return f;
}

InnerFunctionSpec InnerFunctionSpec::blaschke(const std::vector<DiskPoint>& zeros) {
    InnerFunctionSpec f;
    for (const auto& a : zeros) f.factors.push_back({a, 1});
    return f;
}

InnerFunctionSpec InnerFunctionSpec::singular_atom(double angle, double mass) {
    InnerFunctionSpec f;
    f.singular = SingularMeasure::point(angle, mass);
    return f;
}

void validate(const InnerFunctionSpec& f) {
    if (!std::isfinite(f.rotation)) throw DomainError("rotation must be finite");
    for (const auto& factor : f.factors) {
        if (!(factor.zero.modulus() < 1.0)) {
            throw DomainError(
                fmt::format("Blaschke zero ({}, {}) is not in the open disk", factor.zero.re, factor.zero.im));
        }
        if (factor.multiplicity == 0) throw DomainError("Blaschke multiplicity must be positive");
    }
    if (f.factors.empty() && f.singular.is_zero()) {
        throw DomainError("the function is a unimodular constant, not a proper inner function");
    }
    for (int i = 0; i < 64; ++i) {
        const double radius = 0.05 + 0.9 * ((i * 37) % 64) / 64.0;
        const PolarPoint z = PolarPoint::radial(1.0 - radius, i / 64.0 + 0.003);
        if (!(accumulate(f, z).log_modulus < 0.0)) {
            throw DomainError("spot check failed: |f(z)| >= 1 at an interior point");
        }
    }
}

bool fixes_origin(const InnerFunctionSpec& f, double tol) {
    const EvalResult e = evaluate(f, PolarPoint::radial(1.0, 0.0));
    return std::exp(e.log_modulus) <= tol;
}

EvalResult evaluate(const InnerFunctionSpec& f, const PolarPoint& z) {
    require_open_disk(z, "evaluate");
    const Accumulated acc = accumulate(f, z);
    EvalResult out;
    out.log_modulus = acc.log_modulus;
    out.value = std::polar(std::exp(acc.log_modulus), acc.phase);
    out.one_minus_sq_modulus = -std::expm1(2.0 * acc.log_modulus);
    out.underflow = acc.log_modulus < kLogMinNormal && acc.log_modulus > -std::numeric_limits<double>::infinity();
    return out;
}

EvalResult evaluate(const InnerFunctionSpec& f, DiskPoint z) {
    require_open_disk(z, "evaluate");
    return evaluate(f, PolarPoint::from(z));
}

Complex derivative_quotient(const InnerFunctionSpec& f, const PolarPoint& z) {
    require_open_disk(z, "derivative_quotient");
    const Complex zc = z.z();
    Complex sum = 0.0;
    for (const auto& factor : f.factors) {
        const FactorGeometry g = geometry(factor);
        const Complex diff = g.a - zc;
        if (std::abs(diff) < kPoleDistance) {
            throw PoleError(fmt::format("f'/f has a pole at the zero ({}, {})", g.a.real(), g.a.imag()));
        }
        const double one_minus_sq_a = g.gap * (2.0 - g.gap);
        sum += static_cast<double>(factor.multiplicity) * (-one_minus_sq_a) / (one_minus_conj_a_z(g, z) * diff);
    }
    for (const auto& atom : f.singular.point_masses()) {
        // 2 eta / (eta - z)^2 = 2 conj(eta) / (1 - z conj(eta))^2
        const Complex w = one_minus_polar(z.radius, z.gap, z.angle - atom.angle);
        const Complex eta_bar = std::polar(1.0, -kTwoPi * atom.angle);
        sum -= atom.mass * 2.0 * eta_bar / (w * w);
    }
    return sum;
}

Complex derivative_quotient(const InnerFunctionSpec& f, DiskPoint z) {
    require_open_disk(z, "derivative_quotient");
    return derivative_quotient(f, PolarPoint::from(z));
}

double derivative_modulus(const InnerFunctionSpec& f, const PolarPoint& z) {
    require_open_disk(z, "derivative_modulus");
    const ZeroHit hit = zero_at(f, z);
    if (hit.multiplicity >= 2) return 0.0;
    if (hit.multiplicity == 1) {
        // f = b_a * rest, f'(a) = b_a'(a) rest(a), |b_a'(z)| = (1 - |a|^2)/|1 - conj(a) z|^2
        const auto& factor = f.factors[static_cast<std::size_t>(hit.index)];
        const FactorGeometry g = geometry(factor);
        const double rest = std::exp(accumulate(f, z, hit.index).log_modulus);
        return g.gap * (2.0 - g.gap) / one_minus_conj_a_z_norm(g, z) * rest;
    }
    const double log_modulus = accumulate(f, z).log_modulus;
    const double q = std::abs(derivative_quotient(f, z));
    return std::exp(log_modulus + std::log(q));
}

double hyperbolic_derivative(const InnerFunctionSpec& f, const PolarPoint& z) {
    require_open_disk(z, "hyperbolic_derivative");
    const double one_minus_sq_f = -std::expm1(2.0 * accumulate(f, z).log_modulus);
    const double d = z.one_minus_sq() * derivative_modulus(f, z) / one_minus_sq_f;
    return finish_hyperbolic_derivative(d);
}

double hyperbolic_derivative(const InnerFunctionSpec& f, DiskPoint z) {
    require_open_disk(z, "hyperbolic_derivative");
    return hyperbolic_derivative(f, PolarPoint::from(z));
}

double mobius_distortion(const InnerFunctionSpec& f, const PolarPoint& z) {
    return 1.0 - hyperbolic_derivative(f, z);
}

double mobius_distortion(const InnerFunctionSpec& f, DiskPoint z) { return 1.0 - hyperbolic_derivative(f, z); }

double g_quotient(const InnerFunctionSpec& f, const PolarPoint& z) {
    require_open_disk(z, "g_quotient");
    const double log_modulus = accumulate(f, z).log_modulus;
    return std::log(-std::expm1(2.0 * log_modulus)) - std::log(z.one_minus_sq());
}

double g_quotient(const InnerFunctionSpec& f, DiskPoint z) {
    require_open_disk(z, "g_quotient");
    return g_quotient(f, PolarPoint::from(z));
}

std::array<double, 2> grad_g(const InnerFunctionSpec& f, DiskPoint z) {
    require_open_disk(z, "grad_g");
    const PolarPoint p = PolarPoint::from(z);
    Complex grad = 2.0 * z.z() / p.one_minus_sq();
    if (zero_at(f, p).multiplicity == 0) {
        // conj(f') f = |f|^2 conj(f'/f)
        const double log_modulus = accumulate(f, p).log_modulus;
        const double sq = std::exp(2.0 * log_modulus);
        const double one_minus_sq_f = -std::expm1(2.0 * log_modulus);
        grad -= 2.0 * sq * std::conj(derivative_quotient(f, p)) / one_minus_sq_f;
    }
    return {grad.real(), grad.imag()};
}

double angular_derivative_closed_form(const InnerFunctionSpec& f, double angle) {
    double sum = 0.0;
    for (const auto& factor : f.factors) {
        const FactorGeometry g = geometry(factor);
        // |xi - a|^2 = |1 - conj(a) xi|^2 on the circle
        const double denom = one_minus_polar_norm(g.rho, g.gap, angle - g.angle);
        sum += factor.multiplicity * g.gap * (2.0 - g.gap) / denom;
    }
    for (const auto& atom : f.singular.point_masses()) {
        const double denom = one_minus_polar_norm(1.0, 0.0, angle - atom.angle);
        if (denom == 0.0) return std::numeric_limits<double>::infinity();
        sum += 2.0 * atom.mass / denom;
    }
    if (!(sum <= kAngularDerivativeCap)) return std::numeric_limits<double>::infinity();
    return sum;
}

double angular_derivative_closed_form(const InnerFunctionSpec& f, DiskPoint xi) {
    if (std::abs(xi.modulus() - 1.0) > kBoundaryTolerance) {
        throw DomainError(fmt::format("angular derivative needs a point of the circle, |xi| = {}", xi.modulus()));
    }
    return angular_derivative_closed_form(f, wrap_turns(std::atan2(xi.im, xi.re) / kTwoPi));
}

RadialLimit angular_derivative_radial(const InnerFunctionSpec& f, double angle, const QuadratureConfig& cfg) {
    validate(cfg);
    RadialLimit out;
    out.quotients.reserve(static_cast<std::size_t>(cfg.radial_depth));
    for (int n = 1; n <= cfg.radial_depth; ++n) {
        const double gap = std::ldexp(1.0, -n);
        const double log_modulus = accumulate(f, PolarPoint::radial(gap, angle)).log_modulus;
        out.quotients.push_back(-std::expm1(log_modulus) / gap);
    }
    const auto& q = out.quotients;
    const std::size_t n = q.size();
    bool stable = true;
    for (std::size_t k = n - 3; k < n; ++k) {
        const double change = std::abs(q[k] - q[k - 1]) / std::abs(q[k]);
        if (!(change < cfg.radial_tol)) stable = false;
    }
    if (stable) {
        out.status = RadialStatus::finite;
        out.estimate = 2.0 * q[n - 1] - q[n - 2];
    } else {
        out.status = RadialStatus::diverging;
        out.estimate = q[n - 1];
    }
    return out;
}

double hyperbolic_derivative(const ComposedFunction& g, const PolarPoint& z) {
    require_open_disk(z, "hyperbolic_derivative");
    const EvalResult inner = evaluate(g.inner, z);
    const double deriv = derivative_modulus(g.inner, z);
    const Complex a = g.outer.a.z();
    const double one_minus_sq_a = 1.0 - std::norm(a);
    const double denom = std::norm(1.0 - std::conj(a) * inner.value);
    // |(phi o f)'| and 1 - |phi o f|^2 share the factor (1 - |a|^2)/|1 - conj(a) f|^2
    const double outer_deriv = one_minus_sq_a / denom * deriv;
    const double one_minus_sq_g = one_minus_sq_a * inner.one_minus_sq_modulus / denom;
    return finish_hyperbolic_derivative(z.one_minus_sq() * outer_deriv / one_minus_sq_g);
}

double mobius_distortion(const ComposedFunction& g, const PolarPoint& z) {
    return 1.0 - hyperbolic_derivative(g, z);
}

}  // namespace innerent
