#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "innerent/innerfn.hpp"

namespace fixtures {

using innerent::Complex;
using innerent::DiskPoint;
using innerent::InnerFunctionSpec;

inline DiskPoint random_disk(std::mt19937_64& rng, double r_max) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = r_max * std::sqrt(u(rng));
    const double t = u(rng);
    return {r * std::cos(innerent::kTwoPi * t), r * std::sin(innerent::kTwoPi * t)};
}

/// Finite Blaschke product with a zero at 0 and `extra` zeros of modulus <= r_max.
inline InnerFunctionSpec random_blaschke(std::mt19937_64& rng, int extra, double r_max) {
    std::vector<DiskPoint> zeros{DiskPoint{0.0}};
    for (int k = 0; k < extra; ++k) zeros.push_back(random_disk(rng, r_max));
    auto f = InnerFunctionSpec::blaschke(zeros);
    f.rotation = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return f;
}

/// Blaschke part plus a few atoms.
inline InnerFunctionSpec random_mixed(std::mt19937_64& rng, int zeros, int atoms) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    InnerFunctionSpec f;
    f.rotation = u(rng);
    for (int k = 0; k < zeros; ++k) f.factors.push_back({random_disk(rng, 0.9), 1u + (k % 2)});
    for (int k = 0; k < atoms; ++k) f.singular.add_atom({u(rng), 0.2 + u(rng), std::nullopt, std::nullopt});
    return f;
}

/// Direct complex evaluation, used as an independent oracle away from the circle.
inline Complex naive_value(const InnerFunctionSpec& f, Complex z) {
    Complex v = std::polar(1.0, innerent::kTwoPi * f.rotation);
    for (const auto& b : f.factors) {
        const Complex a = b.zero.z();
        v *= std::pow((a - z) / (1.0 - std::conj(a) * z), static_cast<int>(b.multiplicity));
    }
    Complex herglotz = 0.0;
    for (const auto& atom : f.singular.point_masses()) {
        const Complex eta = std::polar(1.0, innerent::kTwoPi * atom.angle);
        herglotz += atom.mass * (eta + z) / (eta - z);
    }
    return v * std::exp(-herglotz);
}

inline Complex naive_derivative(const InnerFunctionSpec& f, Complex z, double h = 1e-6) {
    return (naive_value(f, z + h) - naive_value(f, z - h)) / (2.0 * h);
}

}  // namespace fixtures
