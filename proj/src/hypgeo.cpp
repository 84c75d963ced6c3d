#include "innerent/hypgeo.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "innerent/errors.hpp"

namespace innerent {

namespace {

void require_interior(DiskPoint p, const char* what) {
    if (!(p.modulus() < 1.0)) {
        throw DomainError(fmt::format("{}: point ({}, {}) is not in the open unit disk", what, p.re,
                                      p.im));
    }
}

}  // namespace

double DiskPoint::modulus() const { return std::hypot(re, im); }

DiskPoint DiskPoint::on_circle(double turns) {
    const double angle = kTwoPi * turns;
    return {std::cos(angle), std::sin(angle)};
}

PolarPoint PolarPoint::from(DiskPoint p) {
    PolarPoint out;
    out.radius = p.modulus();
    out.gap = 1.0 - out.radius;
    out.angle = out.radius == 0.0 ? 0.0 : wrap_turns(std::atan2(p.im, p.re) / kTwoPi);
    return out;
}

PolarPoint PolarPoint::radial(double gap, double angle) {
    PolarPoint out;
    out.gap = gap;
    out.radius = 1.0 - gap;
    out.angle = wrap_turns(angle);
    return out;
}

Complex PolarPoint::z() const { return std::polar(radius, kTwoPi * angle); }

double wrap_turns(double turns) {
    double w = turns - std::floor(turns);
    if (w >= 1.0) w = 0.0;
    return w;
}

double turn_difference(double a, double b) {
    double d = a - b;
    d -= std::floor(d + 0.5);
    return d;
}

Complex one_minus_polar(double rho, double gap, double psi) {
    const double d = psi - std::floor(psi + 0.5);
    const double s = std::sin(std::numbers::pi * d);
    return {gap + 2.0 * rho * s * s, -rho * std::sin(kTwoPi * d)};
}

double one_minus_polar_norm(double rho, double gap, double psi) {
    const double d = psi - std::floor(psi + 0.5);
    const double s = std::sin(std::numbers::pi * d);
    return gap * gap + 4.0 * rho * s * s;
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
    require_interior(z, "pseudo_hyperbolic");
    require_interior(w, "pseudo_hyperbolic");
    const Complex zz = z.z();
    const Complex ww = w.z();
    return std::abs(zz - ww) / std::abs(1.0 - std::conj(ww) * zz);
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
    require_interior(z, "hyperbolic_distance");
    require_interior(w, "hyperbolic_distance");
    const Complex zz = z.z();
    const Complex ww = w.z();
    const double denom = std::norm(1.0 - std::conj(ww) * zz);
    const double rho = std::sqrt(std::norm(zz - ww) / denom);
    if (rho == 0.0) return 0.0;
    // 1 - rho^2 = (1 - |z|^2)(1 - |w|^2) / |1 - conj(w) z|^2 avoids cancellation.
    const PolarPoint pz = PolarPoint::from(z);
    const PolarPoint pw = PolarPoint::from(w);
    const double one_minus_rho_sq = pz.one_minus_sq() * pw.one_minus_sq() / denom;
    return std::max(0.0, 2.0 * std::log1p(rho) - std::log(one_minus_rho_sq));
}

DiskPoint mobius_apply(DiskPoint a, double theta, DiskPoint z) {
    require_interior(a, "mobius_apply");
    return DiskPoint(Automorphism{a, theta}.apply(z.z()));
}

Complex Automorphism::apply(Complex w) const {
    const Complex aa = a.z();
    return std::polar(1.0, kTwoPi * theta) * (aa - w) / (1.0 - std::conj(aa) * w);
}

Complex Automorphism::derivative(Complex w) const {
    const Complex aa = a.z();
    const Complex d = 1.0 - std::conj(aa) * w;
    return -std::polar(1.0, kTwoPi * theta) * (1.0 - std::norm(aa)) / (d * d);
}

}  // namespace innerent
