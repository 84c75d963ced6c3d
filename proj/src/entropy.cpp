#include "innerent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "innerent/errors.hpp"
#include "innerent/parallel.hpp"

namespace innerent {

namespace {

constexpr int kInitialPanels = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - r for r = tanh(t / 2)
double gap_at(double t) {
    const double e = std::exp(-t);
    return 2.0 * e / (1.0 + e);
}

// t = d_h(0, r) = log((1 + r) / (1 - r)), from 1 - r
double t_at_gap(double gap) { return std::log((2.0 - gap) / gap); }

DistortionResult finish(const IntegralResult& r, double tail, const QuadratureConfig& cfg, const char* what) {
    if (r.capped) return {cfg.divergence_cap, PointStatus::diverged};
    if (!r.converged) {
        throw BudgetError(fmt::format("{}: {} intervals used, error estimate {} above {}", what, r.intervals,
                                      r.error, cfg.abs_tol));
    }
    const PointStatus s = tail < cfg.abs_tol / cfg.t_max ? PointStatus::finite : PointStatus::truncated;
    return {r.value, s};
}

DistortionResult radial_from(const InnerFunctionSpec& f, double angle, double t0, const QuadratureConfig& cfg,
                             const char* what) {
    validate(cfg);
    auto integrand = [&](double t) { return mobius_distortion(f, PolarPoint::radial(gap_at(t), angle)); };
    if (t0 >= cfg.t_max) return {0.0, integrand(cfg.t_max) < cfg.abs_tol / cfg.t_max ? PointStatus::finite
                                                                                    : PointStatus::truncated};
    const IntegralResult r = integrate_adaptive(integrand, t0, cfg.t_max, cfg.abs_tol, cfg.max_subdivisions,
                                                cfg.divergence_cap, kInitialPanels);
    return finish(r, integrand(cfg.t_max), cfg, what);
}

template <class Fn>
void for_each_point(std::size_t n, int threads, Fn&& fn) {
    parallel_for(n, threads, [&](std::size_t k) { fn(k); });
}

}  // namespace

std::string_view to_string(PointStatus s) {
    switch (s) {
        case PointStatus::finite: return "finite";
        case PointStatus::truncated: return "truncated";
        case PointStatus::diverged: return "diverged";
    }
    return "?";
}

std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::A: return "A";
        case Quantity::logfp: return "logfp";
        case Quantity::B_alpha: return "B_alpha";
        case Quantity::A_Q: return "A_Q";
    }
    return "?";
}

std::optional<Quantity> parse_quantity(std::string_view text) {
    for (Quantity q : {Quantity::A, Quantity::logfp, Quantity::B_alpha, Quantity::A_Q}) {
        if (to_string(q) == text) return q;
    }
    return std::nullopt;
}

DistortionResult accumulated_distortion(const InnerFunctionSpec& f, double angle, const QuadratureConfig& cfg) {
    return radial_from(f, wrap_turns(angle), 0.0, cfg, "accumulated_distortion");
}

DistortionResult local_accumulated_distortion(const InnerFunctionSpec& f, const CarlesonBox& q, double angle,
                                              const QuadratureConfig& cfg) {
    const double w = wrap_turns(angle);
    if (!q.base.contains(w)) {
        throw DomainError(fmt::format("angle {} is not in the base arc ({}, {}) of the box", angle, q.base.level,
                                      q.base.index));
    }
    return radial_from(f, w, t_at_gap(q.side()), cfg, "local_accumulated_distortion");
}

DistortionResult conical_distortion(const InnerFunctionSpec& f, double angle, double alpha,
                                    const QuadratureConfig& cfg) {
    validate(cfg);
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw DomainError(fmt::format("aperture {} must exceed 1", alpha));
    const double xi = wrap_turns(angle);
    const double spread = std::sqrt((alpha * alpha - 1.0) / 4.0);

    auto integrand = [&](double t) {
        const double gap = gap_at(t);
        const double rho = 1.0 - gap;
        double s_max = 0.5;
        if (rho > 0.0) s_max = std::asin(std::min(1.0, gap * spread / std::sqrt(rho))) / std::numbers::pi;
        const double factor = std::numbers::pi * rho * s_max / (gap * (2.0 - gap));
        if (factor == 0.0) return 0.0;
        const double inner_tol = cfg.abs_tol / (10.0 * cfg.t_max * std::max(factor, 1.0));
        const IntegralResult inner = integrate_adaptive(
            [&](double u) { return mobius_distortion(f, PolarPoint::radial(gap, xi + s_max * u)); }, -1.0, 1.0,
            inner_tol, cfg.max_subdivisions);
        if (!inner.converged) {
            throw BudgetError(fmt::format("conical_distortion: angular integral at t = {} did not converge", t));
        }
        return factor * inner.value;
    };
    const IntegralResult r = integrate_adaptive(integrand, 0.0, cfg.t_max, cfg.abs_tol, cfg.max_subdivisions,
                                                cfg.divergence_cap, kInitialPanels);
    return finish(r, integrand(cfg.t_max), cfg, "conical_distortion");
}

double radial_distortion_integral(const InnerFunctionSpec& f, double angle, double lo, double hi,
                                  const QuadratureConfig& cfg) {
    validate(cfg);
    if (!(lo >= 0.0 && hi < 1.0)) throw DomainError("radial_distortion_integral needs 0 <= lo, hi < 1");
    const double sign = hi >= lo ? 1.0 : -1.0;
    const double t_lo = t_at_gap(1.0 - std::min(lo, hi));
    const double t_hi = t_at_gap(1.0 - std::max(lo, hi));
    const IntegralResult r = integrate_adaptive(
        [&](double t) { return mobius_distortion(f, PolarPoint::radial(gap_at(t), angle)); }, t_lo, t_hi,
        cfg.abs_tol, cfg.max_subdivisions, 0.0, kInitialPanels);
    if (!r.converged) throw BudgetError("radial_distortion_integral: interval budget exhausted");
    return sign * r.value;
}

bool BoundaryProfile::all_finite() const {
    return std::all_of(status.begin(), status.end(), [](PointStatus s) { return s == PointStatus::finite; });
}

BoundaryProfile boundary_profile(const InnerFunctionSpec& f, std::size_t n, Quantity quantity,
                                 const QuadratureConfig& cfg, const ProfileOptions& opts) {
    if (n < 1) throw DomainError("profile grid size must be at least 1");
    validate(cfg);
    BoundaryProfile out;
    out.quantity = quantity;
    out.config = cfg;
    out.points.resize(n);
    out.values.assign(n, 0.0);
    out.status.assign(n, PointStatus::finite);
    std::vector<char> budget(n, 0);

    for_each_point(n, opts.threads, [&](std::size_t k) {
        const double angle = static_cast<double>(k) / static_cast<double>(n);
        out.points[k] = angle;
        DistortionResult r;
        try {
            switch (quantity) {
                case Quantity::A: r = accumulated_distortion(f, angle, cfg); break;
                case Quantity::B_alpha: r = conical_distortion(f, angle, opts.alpha, cfg); break;
                case Quantity::A_Q:
                    r = local_accumulated_distortion(f, CarlesonBox{DyadicArc::containing(angle, opts.box_level)},
                                                     angle, cfg);
                    break;
                case Quantity::logfp: {
                    const double d = angular_derivative_closed_form(f, angle);
                    r = std::isfinite(d) ? DistortionResult{std::log(d), PointStatus::finite}
                                         : DistortionResult{cfg.divergence_cap, PointStatus::diverged};
                    break;
                }
            }
        } catch (const BudgetError&) {
            r = {cfg.divergence_cap, PointStatus::diverged};
            budget[k] = 1;
        }
        out.values[k] = r.value;
        out.status[k] = r.status;
    });
    out.budget_exhausted.assign(budget.begin(), budget.end());
    return out;
}

LpNorm lp_norm(const BoundaryProfile& profile, double p) {
    if (!(p > 0.0)) throw DomainError(fmt::format("lp_norm needs p > 0, got {}", p));
    const std::size_t n = profile.size();
    if (n == 0) return {};
    double sum = 0.0;
    std::size_t diverged = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (profile.status[k] == PointStatus::diverged) {
            ++diverged;
            continue;
        }
        sum += std::pow(std::abs(profile.values[k]), p);
    }
    return {std::pow(sum / static_cast<double>(n), 1.0 / p), static_cast<double>(diverged) / static_cast<double>(n)};
}

PointwiseReport check_pointwise(const InnerFunctionSpec& f, std::size_t n, const QuadratureConfig& cfg,
                                int threads) {
    if (!fixes_origin(f)) throw PreconditionError("check_pointwise needs f(0) = 0");
    ProfileOptions opts;
    opts.threads = threads;
    const BoundaryProfile a = boundary_profile(f, n, Quantity::A, cfg, opts);
    const BoundaryProfile d = boundary_profile(f, n, Quantity::logfp, cfg, opts);

    PointwiseReport out;
    out.max_defect = -kInf;
    out.budget = 10.0 * cfg.abs_tol;
    for (std::size_t k = 0; k < n; ++k) {
        if (a.status[k] != PointStatus::finite || d.status[k] != PointStatus::finite) continue;
        ++out.compared;
        const double defect = a.values[k] - d.values[k];
        if (defect > out.max_defect) {
            out.max_defect = defect;
            out.worst_angle = a.points[k];
        }
    }
    out.passed = out.compared == 0 || out.max_defect <= out.budget;
    return out;
}

LaplacianReport check_laplacian(const InnerFunctionSpec& f, const std::vector<DiskPoint>& points, double h_scale) {
    if (!(h_scale > 0.0)) throw DomainError("h_scale must be positive");
    LaplacianReport out;
    for (const DiskPoint& z : points) {
        const double r = z.modulus();
        if (!(r <= 0.9)) throw DomainError(fmt::format("check_laplacian needs |z| <= 0.9, got {}", r));
        const double h = h_scale * (1.0 - r);
        const double g0 = g_quotient(f, z);
        const double sum = g_quotient(f, DiskPoint{z.re + h, z.im}) + g_quotient(f, DiskPoint{z.re - h, z.im}) +
                           g_quotient(f, DiskPoint{z.re, z.im + h}) + g_quotient(f, DiskPoint{z.re, z.im - h});
        const double lap = (sum - 4.0 * g0) / (h * h);
        const double d = hyperbolic_derivative(f, z);
        const double one_minus_sq = (1.0 - r) * (1.0 + r);
        const double scale = 4.0 / (one_minus_sq * one_minus_sq);
        const double rhs = scale * (1.0 - d * d);
        const double abs_err = std::abs(lap - rhs);
        const double rel_err = abs_err / std::max(std::abs(rhs), 1e-6 * scale);
        out.max_absolute_error = std::max(out.max_absolute_error, abs_err);
        if (rel_err > out.max_relative_error) {
            out.max_relative_error = rel_err;
            out.worst = z;
        }
    }
    return out;
}

double radial_oscillation_stat(const InnerFunctionSpec& f, const std::vector<std::pair<DiskPoint, DiskPoint>>& pairs,
                               double ell, const QuadratureConfig& cfg) {
    if (!(ell >= 0.0 && ell < 1.0)) throw DomainError("ell must lie in [0, 1)");
    double stat = 0.0;
    for (const auto& [z, w] : pairs) {
        const PolarPoint pz = PolarPoint::from(z);
        const PolarPoint pw = PolarPoint::from(w);
        if (!(pz.radius > ell) || !(pw.radius > ell)) {
            throw DomainError(fmt::format("pair members must have modulus above {}", ell));
        }
        const double dist = hyperbolic_distance(z, w);
        if (dist == 0.0) continue;
        const double iz = radial_distortion_integral(f, pz.angle, ell, pz.radius, cfg);
        const double iw = radial_distortion_integral(f, pw.angle, ell, pw.radius, cfg);
        stat = std::max(stat, std::abs(iz - iw) / dist);
    }
    return stat;
}

GoodLambdaTable good_lambda_table(const BoundaryProfile& a, const BoundaryProfile& logfp, double M, double eta,
                                  const std::vector<double>& lambdas, const std::vector<double>& epsilons) {
    if (a.size() != logfp.size() || a.points != logfp.points) {
        throw DomainError("good-lambda profiles must share one grid");
    }
    const std::size_t n = a.size();
    std::vector<double> av(n), dv(n);
    for (std::size_t k = 0; k < n; ++k) {
        av[k] = a.status[k] == PointStatus::finite ? a.values[k] : kInf;
        dv[k] = logfp.status[k] == PointStatus::diverged ? kInf : logfp.values[k];
    }

    GoodLambdaTable out;
    out.M = M;
    out.eta = eta;
    out.n = n;
    const double count = static_cast<double>(n);
    for (double lambda : lambdas) {
        std::size_t den = 0;
        for (std::size_t k = 0; k < n; ++k) den += dv[k] >= lambda;
        std::optional<double> best;
        for (double eps : epsilons) {
            std::size_t num = 0;
            for (std::size_t k = 0; k < n; ++k) num += dv[k] >= M * lambda && av[k] <= eps * lambda;
            GoodLambdaRow row;
            row.lambda = lambda;
            row.epsilon = eps;
            row.numerator = n ? num / count : 0.0;
            row.denominator = n ? den / count : 0.0;
            row.ratio = den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
            if (row.ratio <= eta && (!best || eps > *best)) best = eps;
            out.rows.push_back(row);
        }
        out.best_epsilon.push_back(best);
    }
    return out;
}

GoodLambdaTable good_lambda_scan(const InnerFunctionSpec& f, std::size_t n, double M, double eta,
                                 const std::vector<double>& lambdas, const std::vector<double>& epsilons,
                                 const QuadratureConfig& cfg, int threads) {
    if (!fixes_origin(f)) throw PreconditionError("good_lambda_scan needs f(0) = 0");
    if (!(M > 2.0)) throw PreconditionError(fmt::format("good_lambda_scan needs M > 2, got {}", M));
    if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError(fmt::format("eta must lie in (0, 1), got {}", eta));
    ProfileOptions opts;
    opts.threads = threads;
    const BoundaryProfile a = boundary_profile(f, n, Quantity::A, cfg, opts);
    const BoundaryProfile d = boundary_profile(f, n, Quantity::logfp, cfg, opts);
    return good_lambda_table(a, d, M, eta, lambdas, epsilons);
}

}  // namespace innerent
