#pragma once

// Accumulated Moebius distortion along radii, inside boxes and in Stolz
// angles; boundary profiles and the checkers built on them.

#include <optional>
#include <string_view>
#include <vector>

#include "innerent/innerfn.hpp"
#include "innerent/measure.hpp"
#include "innerent/quadrature.hpp"

namespace innerent {

enum class PointStatus { finite, truncated, diverged };

std::string_view to_string(PointStatus s);

struct DistortionResult {
    double value = 0.0;
    PointStatus status = PointStatus::finite;
};

/// A(f)(xi) = int_0^inf mu(f)(r(t) xi) dt with r(t) = tanh(t / 2).
///
/// Integrated on [0, t_max]. finite: mu at t_max is below abs_tol / t_max;
/// truncated: it is not; diverged: the running integral passed
/// divergence_cap (the value is then the cap). Throws BudgetError when
/// max_subdivisions runs out first.
DistortionResult accumulated_distortion(const InnerFunctionSpec& f, double angle,
                                        const QuadratureConfig& cfg = {});

/// A_Q(f)(xi): the same integral over 1 - l(Q) <= r < 1. Throws DomainError
/// if xi is not in the base arc of Q.
DistortionResult local_accumulated_distortion(const InnerFunctionSpec& f, const CarlesonBox& q,
                                              double angle, const QuadratureConfig& cfg = {});

/// B_alpha(f)(xi) = int over { |z - xi| < alpha (1 - |z|) } of
/// mu(f)(z) dA(z) / (1 - |z|^2)^2, dA the (unnormalized) area element.
/// Outer variable t as above, inner variable the angular offset.
DistortionResult conical_distortion(const InnerFunctionSpec& f, double angle, double alpha,
                                    const QuadratureConfig& cfg = {});

/// Integral of mu(f)(s xi) 2 ds / (1 - s^2) over [lo, hi].
double radial_distortion_integral(const InnerFunctionSpec& f, double angle, double lo, double hi,
                                  const QuadratureConfig& cfg = {});

enum class Quantity { A, logfp, B_alpha, A_Q };

std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view text);

struct ProfileOptions {
    double alpha = 2.0;     ///< aperture for B_alpha
    unsigned box_level = 1; ///< A_Q uses the dyadic arc of this level containing xi
    int threads = 0;        ///< 0: hardware concurrency
};

struct BoundaryProfile {
    Quantity quantity = Quantity::A;
    std::vector<double> points;  ///< angles k / n
    std::vector<double> values;
    std::vector<PointStatus> status;
    std::vector<bool> budget_exhausted;  ///< diverged because the interval budget ran out
    QuadratureConfig config;

    std::size_t size() const { return points.size(); }
    bool all_finite() const;
};

/// Evaluates the quantity at k / n, k = 0..n-1. log|f'| is taken from the
/// closed form and is diverged where that is infinite. Diverged entries carry
/// cfg.divergence_cap.
BoundaryProfile boundary_profile(const InnerFunctionSpec& f, std::size_t n, Quantity quantity,
                                 const QuadratureConfig& cfg = {}, const ProfileOptions& opts = {});

struct LpNorm {
    double norm = 0.0;
    double diverged_fraction = 0.0;
};

/// (sum |v_k|^p / n)^{1/p} over the entries that are not diverged.
LpNorm lp_norm(const BoundaryProfile& profile, double p);

struct PointwiseReport {
    double max_defect = 0.0;  ///< max of A - log|f'|; -inf if nothing was compared
    double worst_angle = 0.0;
    std::size_t compared = 0;
    double budget = 0.0;
    bool passed = true;
};

/// max over the grid of A(f)(xi) - log|f'(xi)| where both are finite; passes
/// iff that is <= 10 abs_tol. Throws PreconditionError unless |f(0)| <= 1e-12.
PointwiseReport check_pointwise(const InnerFunctionSpec& f, std::size_t n, const QuadratureConfig& cfg = {},
                                int threads = 0);

struct LaplacianReport {
    double max_relative_error = 0.0;
    double max_absolute_error = 0.0;
    DiskPoint worst;
};

/// Five-point Laplacian of G(f) with step h_scale (1 - |z|) against
/// 4 (1 - D_h^2) / (1 - |z|^2)^2. The relative error is taken against
/// max(|rhs|, 1e-6 * 4 / (1 - |z|^2)^2). Throws DomainError if |z| > 0.9.
LaplacianReport check_laplacian(const InnerFunctionSpec& f, const std::vector<DiskPoint>& points,
                                double h_scale = 1e-4);

/// sup over pairs of |int_l^|z| mu(s xi_z) - int_l^|w| mu(s xi_w)| / d_h(z, w).
/// Pairs with z == w are skipped. Throws DomainError if a modulus is <= ell.
double radial_oscillation_stat(const InnerFunctionSpec& f, const std::vector<std::pair<DiskPoint, DiskPoint>>& pairs,
                               double ell, const QuadratureConfig& cfg = {});

struct GoodLambdaRow {
    double lambda = 0.0;
    double epsilon = 0.0;
    double numerator = 0.0;    ///< fraction with log|f'| >= M lambda and A <= eps lambda
    double denominator = 0.0;  ///< fraction with log|f'| >= lambda
    double ratio = 0.0;        ///< numerator / denominator, 0 when the denominator is 0
};

struct GoodLambdaTable {
    double M = 3.0;
    double eta = 0.5;
    std::size_t n = 0;
    std::vector<GoodLambdaRow> rows;  ///< lambda-major
    std::vector<std::optional<double>> best_epsilon;  ///< per lambda: largest eps with ratio <= eta
};

/// Table from precomputed A and log|f'| profiles on the same grid. Diverged
/// log|f'| and non-finite A count as +inf.
GoodLambdaTable good_lambda_table(const BoundaryProfile& a, const BoundaryProfile& logfp, double M, double eta,
                                  const std::vector<double>& lambdas, const std::vector<double>& epsilons);

/// Computes both profiles and the table. Throws PreconditionError unless
/// f(0) = 0, M > 2 and 0 < eta < 1.
GoodLambdaTable good_lambda_scan(const InnerFunctionSpec& f, std::size_t n, double M, double eta,
                                 const std::vector<double>& lambdas, const std::vector<double>& epsilons,
                                 const QuadratureConfig& cfg = {}, int threads = 0);

}  // namespace innerent
