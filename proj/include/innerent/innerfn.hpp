#pragma once

// Inner functions f = e^{2 pi i rotation} * prod b_{a_k}^{m_k} * S_mu with a
// finite Blaschke part and an atomic singular part, evaluated in log space.
//
// Every quantity below is assembled from per-factor closed forms:
//   1 - |b_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2
//   log |S_mu(z)| = -(1 - |z|^2) * sum mass / |eta - z|^2
// and 1 - |f|^2 = -expm1(2 log|f|), so nothing cancels near the circle.

#include <array>
#include <vector>

#include "innerent/hypgeo.hpp"
#include "innerent/measure.hpp"
#include "innerent/quadrature.hpp"

namespace innerent {

struct BlaschkeFactor {
    DiskPoint zero;
    unsigned multiplicity = 1;
};

struct InnerFunctionSpec {
    double rotation = 0.0;  ///< turns
    std::vector<BlaschkeFactor> factors;
    SingularMeasure singular;

    /// z^k
    static InnerFunctionSpec power(unsigned k);
    /// prod_k (a_k - z) / (1 - conj(a_k) z)
    static InnerFunctionSpec blaschke(const std::vector<DiskPoint>& zeros);
    /// S_mu for mu = mass * delta_{angle}
    static InnerFunctionSpec singular_atom(double angle, double mass);
};

/// Structural checks plus a spot check that |f| < 1 inside the disk.
/// Throws DomainError.
void validate(const InnerFunctionSpec& f);

/// True when |f(0)| <= tol.
bool fixes_origin(const InnerFunctionSpec& f, double tol = 1e-12);

struct EvalResult {
    Complex value;
    double log_modulus = 0.0;           ///< log|f(z)|, -inf at zeros
    double one_minus_sq_modulus = 1.0;  ///< 1 - |f(z)|^2
    bool underflow = false;             ///< |f(z)| below the smallest normal double
};

EvalResult evaluate(const InnerFunctionSpec& f, DiskPoint z);
EvalResult evaluate(const InnerFunctionSpec& f, const PolarPoint& z);

/// f'(z) / f(z). Throws PoleError within 1e-14 of a zero.
Complex derivative_quotient(const InnerFunctionSpec& f, DiskPoint z);
Complex derivative_quotient(const InnerFunctionSpec& f, const PolarPoint& z);

/// |f'(z)|, including at zeros of f.
double derivative_modulus(const InnerFunctionSpec& f, const PolarPoint& z);

/// D_h f(z) = (1 - |z|^2)|f'(z)| / (1 - |f(z)|^2), in [0, 1].
/// Throws ConsistencyError if the computed value exceeds 1 + 1e-9.
double hyperbolic_derivative(const InnerFunctionSpec& f, DiskPoint z);
double hyperbolic_derivative(const InnerFunctionSpec& f, const PolarPoint& z);

/// mu(f)(z) = 1 - D_h f(z)
double mobius_distortion(const InnerFunctionSpec& f, DiskPoint z);
double mobius_distortion(const InnerFunctionSpec& f, const PolarPoint& z);

/// G(f)(z) = log((1 - |f(z)|^2) / (1 - |z|^2))
double g_quotient(const InnerFunctionSpec& f, DiskPoint z);
double g_quotient(const InnerFunctionSpec& f, const PolarPoint& z);

/// (dG/dx, dG/dy) = 2 z / (1 - |z|^2) - 2 conj(f') f / (1 - |f|^2)
std::array<double, 2> grad_g(const InnerFunctionSpec& f, DiskPoint z);

/// Divergence cap of the boundary sums; larger values are reported as +inf.
inline constexpr double kAngularDerivativeCap = 1e15;

/// |f'(xi)| = sum m_k (1 - |a_k|^2)/|xi - a_k|^2 + 2 sum mass/|eta - xi|^2.
/// +inf at atoms of mu.
double angular_derivative_closed_form(const InnerFunctionSpec& f, double angle);
double angular_derivative_closed_form(const InnerFunctionSpec& f, DiskPoint xi);

enum class RadialStatus { finite, diverging };

struct RadialLimit {
    double estimate = 0.0;
    RadialStatus status = RadialStatus::diverging;
    std::vector<double> quotients;  ///< (1 - |f(r_n xi)|)/(1 - r_n), n = 1..depth
};

/// Radial limit of (1 - |f(r xi)|)/(1 - r) along r_n = 1 - 2^{-n}.
/// Finite when the last three relative changes are below cfg.radial_tol; the
/// estimate then extrapolates linearly in 1 - r (2 q_N - q_{N-1}).
RadialLimit angular_derivative_radial(const InnerFunctionSpec& f, double angle,
                                      const QuadratureConfig& cfg = {});

/// phi o f for a disk automorphism phi. Evaluated with
///   1 - |phi(w)|^2 = (1 - |a|^2)(1 - |w|^2)/|1 - conj(a) w|^2.
struct ComposedFunction {
    Automorphism outer;
    InnerFunctionSpec inner;
};

double hyperbolic_derivative(const ComposedFunction& g, const PolarPoint& z);
double mobius_distortion(const ComposedFunction& g, const PolarPoint& z);

}  // namespace innerent
