#include "innerent/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "innerent/entropy.hpp"
#include "innerent/errors.hpp"

namespace innerent {

namespace {

// uniform in the disk of radius r_max, away from 0 when r_min > 0
DiskPoint random_point(std::mt19937_64& rng, double r_min, double r_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(r_min * r_min + (r_max * r_max - r_min * r_min) * u(rng));
    const DiskPoint xi = DiskPoint::on_circle(u(rng));
    return {r * xi.re, r * xi.im};
}

InvariantResult schwarz_pick(const InnerFunctionSpec& f, std::mt19937_64& rng, std::size_t n) {
    InvariantResult out{"schwarz_pick", true, 0.0, 1.0, ""};
    for (std::size_t k = 0; k < n; ++k) {
        const DiskPoint z = random_point(rng, 0.0, 1.0 - 1e-9);
        try {
            out.statistic = std::max(out.statistic, hyperbolic_derivative(f, z));
        } catch (const ConsistencyError& e) {
            out.passed = false;
            out.detail = e.what();
            return out;
        }
    }
    return out;
}

InvariantResult automorphism_invariance(const InnerFunctionSpec& f, std::mt19937_64& rng, std::size_t n) {
    InvariantResult out{"automorphism_invariance", true, 0.0, 1e-10, ""};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int m = 0; m < 3; ++m) {
        const DiskPoint a = random_point(rng, 0.0, 0.95);
        const ComposedFunction g{Automorphism{a, u(rng)}, f};
        for (std::size_t k = 0; k < n; ++k) {
            const PolarPoint z = PolarPoint::from(random_point(rng, 0.0, 0.999));
            out.statistic = std::max(out.statistic, std::abs(hyperbolic_derivative(g, z) - hyperbolic_derivative(f, z)));
        }
    }
    out.passed = out.statistic < out.bound;
    return out;
}

InvariantResult laplacian(const InnerFunctionSpec& f, std::mt19937_64& rng, std::size_t n) {
    std::vector<DiskPoint> points;
    for (std::size_t k = 0; k < n; ++k) points.push_back(random_point(rng, 0.0, 0.9));
    const LaplacianReport r = check_laplacian(f, points);
    InvariantResult out{"laplacian_identity", true, r.max_relative_error, 1e-3, ""};
    out.passed = out.statistic < out.bound;
    out.detail = fmt::format("worst at ({}, {})", r.worst.re, r.worst.im);
    return out;
}

InvariantResult gradient(const InnerFunctionSpec& f, std::mt19937_64& rng, std::size_t n) {
    InvariantResult out{"grad_finite_difference", true, 0.0, 1e-6, ""};
    for (std::size_t k = 0; k < n; ++k) {
        const DiskPoint z = random_point(rng, 0.0, 0.95);
        const double h = 1e-5 * (1.0 - z.modulus());
        const auto g = grad_g(f, z);
        const double gx = (g_quotient(f, DiskPoint{z.re + h, z.im}) - g_quotient(f, DiskPoint{z.re - h, z.im})) / (2 * h);
        const double gy = (g_quotient(f, DiskPoint{z.re, z.im + h}) - g_quotient(f, DiskPoint{z.re, z.im - h})) / (2 * h);
        const double err = std::hypot(gx - g[0], gy - g[1]) / std::max(1.0, std::hypot(g[0], g[1]));
        out.statistic = std::max(out.statistic, err);
    }
    out.passed = out.statistic <= out.bound;
    return out;
}

InvariantResult log_gradient_bound(const InnerFunctionSpec& f, std::mt19937_64& rng, std::size_t n) {
    InvariantResult out{"log_gradient_bound", true, 0.0, 4.0 + 1e-9, ""};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        // 1 - |z| log-uniform in [1e-8, 1/2)
        const double gap = 0.5 * std::pow(2e-8, u(rng));
        const PolarPoint p = PolarPoint::radial(gap, u(rng));
        const Complex zc = p.z();
        const DiskPoint z{zc};
        if (!(z.modulus() < 1.0)) continue;
        const auto g = grad_g(f, z);
        const double v = -std::log1p(-gap) * std::hypot(g[0], g[1]);
        out.statistic = std::max(out.statistic, v);
    }
    out.passed = out.statistic <= out.bound;
    return out;
}

InvariantResult ahern(const InnerFunctionSpec& f, std::size_t n) {
    InvariantResult out{"ahern_estimate", true, 0.0, 4.0, ""};
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = (k + 0.5) / static_cast<double>(n);
        const double closed = angular_derivative_closed_form(f, angle);
        if (!std::isfinite(closed)) continue;
        for (int j = 1; j <= 40; ++j) {
            const double gap = std::ldexp(1.0, -j);
            const double q = -std::expm1(evaluate(f, PolarPoint::radial(gap, angle)).log_modulus) / gap;
            out.statistic = std::max(out.statistic, q / closed);
        }
    }
    out.passed = out.statistic <= out.bound + 1e-9;
    return out;
}

InvariantResult closed_vs_radial(const InnerFunctionSpec& f, const QuadratureConfig& cfg, std::size_t n) {
    InvariantResult out{"closed_vs_radial", true, 0.0, 1e-3, ""};
    std::size_t compared = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = static_cast<double>(k) / static_cast<double>(n);
        const RadialLimit r = angular_derivative_radial(f, angle, cfg);
        if (r.status != RadialStatus::finite) continue;
        const double closed = angular_derivative_closed_form(f, angle);
        ++compared;
        out.statistic = std::max(out.statistic, std::abs(r.estimate - closed) / std::abs(closed));
    }
    bool atoms_diverge = true;
    for (const auto& atom : f.singular.point_masses()) {
        if (angular_derivative_radial(f, atom.angle, cfg).status != RadialStatus::diverging) atoms_diverge = false;
    }
    out.passed = out.statistic < out.bound && atoms_diverge;
    out.detail = fmt::format("{} points compared; atoms diverge: {}", compared, atoms_diverge);
    return out;
}

InvariantResult pointwise(const InnerFunctionSpec& f, const QuadratureConfig& cfg, std::size_t n, int threads) {
    InvariantResult out{"pointwise_estimate", true, 0.0, 10.0 * cfg.abs_tol, ""};
    if (!fixes_origin(f)) {
        out.detail = "skipped: f(0) != 0";
        return out;
    }
    const PointwiseReport r = check_pointwise(f, n, cfg, threads);
    out.statistic = r.compared ? r.max_defect : 0.0;
    out.passed = r.passed;
    out.detail = fmt::format("{} points compared", r.compared);
    return out;
}

InvariantResult local_below_global(const InnerFunctionSpec& f, const QuadratureConfig& cfg, std::size_t n) {
    InvariantResult out{"local_below_global", true, -std::numeric_limits<double>::infinity(), 10.0 * cfg.abs_tol, ""};
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = (k + 0.25) / static_cast<double>(n);
        const DistortionResult a = accumulated_distortion(f, angle, cfg);
        for (unsigned level = 1; level <= 3; ++level) {
            const CarlesonBox q{DyadicArc::containing(angle, level)};
            const DistortionResult aq = local_accumulated_distortion(f, q, angle, cfg);
            out.statistic = std::max(out.statistic, aq.value - a.value);
        }
    }
    out.passed = out.statistic <= out.bound;
    return out;
}

InvariantResult conical_monotone(const InnerFunctionSpec& f, const QuadratureConfig& cfg, std::size_t n) {
    InvariantResult out{"conical_monotone", true, -std::numeric_limits<double>::infinity(), 10.0 * cfg.abs_tol, ""};
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = (k + 0.125) / static_cast<double>(n);
        const double narrow = conical_distortion(f, angle, 1.5, cfg).value;
        const double wide = conical_distortion(f, angle, 3.0, cfg).value;
        out.statistic = std::max(out.statistic, narrow - wide);
    }
    out.passed = out.statistic <= out.bound;
    return out;
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const InnerFunctionSpec& f, const QuadratureConfig& cfg,
                                                 const SuiteOptions& opts) {
    validate(cfg);
    std::mt19937_64 rng(opts.seed);
    std::vector<InvariantResult> out;
    out.push_back(schwarz_pick(f, rng, opts.interior_points));
    out.push_back(automorphism_invariance(f, rng, opts.interior_points / 6 + 1));
    out.push_back(laplacian(f, rng, opts.laplacian_points));
    out.push_back(gradient(f, rng, opts.interior_points / 10 + 1));
    out.push_back(log_gradient_bound(f, rng, opts.interior_points));
    out.push_back(ahern(f, opts.boundary_points));
    out.push_back(closed_vs_radial(f, cfg, opts.boundary_points));
    out.push_back(pointwise(f, cfg, opts.boundary_points, opts.threads));
    out.push_back(local_below_global(f, cfg, std::min<std::size_t>(opts.boundary_points, 16)));
    out.push_back(conical_monotone(f, cfg, 4));
    return out;
}

}  // namespace innerent
