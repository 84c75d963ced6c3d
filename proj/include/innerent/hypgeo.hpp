#pragma once

// Hyperbolic geometry of the unit disk.
//
// Angles on the circle are measured in turns (fraction of a full revolution),
// so the normalized Lebesgue measure of an arc equals its angular length.

#include <complex>
#include <numbers>

namespace innerent {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for "lies on the unit circle".
inline constexpr double kBoundaryTolerance = 1e-12;

struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    constexpr DiskPoint() = default;
    constexpr DiskPoint(double re_, double im_ = 0.0) : re(re_), im(im_) {}
    explicit DiskPoint(Complex z) : re(z.real()), im(z.imag()) {}

    Complex z() const { return {re, im}; }
    double modulus() const;

    /// e^{2 pi i turns}
    static DiskPoint on_circle(double turns);
};

/// Polar description of a point of the closed disk that keeps 1 - |z|
/// exactly, so that quantities near the circle do not lose digits.
struct PolarPoint {
    double radius = 0.0;
    double gap = 1.0;    ///< 1 - radius, carried independently
    double angle = 0.0;  ///< turns in [0, 1)

    static PolarPoint from(DiskPoint p);
    /// Point (1 - gap) e^{2 pi i angle}.
    static PolarPoint radial(double gap, double angle);

    Complex z() const;
    /// 1 - |z|^2 = gap (2 - gap)
    double one_minus_sq() const { return gap * (2.0 - gap); }
};

/// Reduce an angle in turns to [0, 1).
double wrap_turns(double turns);

/// Signed angular difference a - b reduced to [-1/2, 1/2).
double turn_difference(double a, double b);

/// 1 - rho e^{2 pi i psi}, given rho and gap = 1 - rho. Stable when rho -> 1
/// and psi -> 0 simultaneously.
Complex one_minus_polar(double rho, double gap, double psi);

/// |1 - rho e^{2 pi i psi}|^2 = gap^2 + 4 rho sin^2(pi psi).
double one_minus_polar_norm(double rho, double gap, double psi);

/// rho(z, w) = |z - w| / |1 - conj(w) z|
double pseudo_hyperbolic(DiskPoint z, DiskPoint w);

/// d_h(z, w) = log((1 + rho) / (1 - rho))
double hyperbolic_distance(DiskPoint z, DiskPoint w);

/// e^{2 pi i theta} (a - z) / (1 - conj(a) z). Accepts |z| <= 1.
DiskPoint mobius_apply(DiskPoint a, double theta, DiskPoint z);

/// The disk automorphism z -> e^{2 pi i theta} (a - z) / (1 - conj(a) z).
struct Automorphism {
    DiskPoint a;
    double theta = 0.0;

    Complex apply(Complex w) const;
    Complex derivative(Complex w) const;
};

}  // namespace innerent
