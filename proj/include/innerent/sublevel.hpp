#pragma once

// The area integral of |log(1 - |z|)|^{p-1} / (1 - |z|) over {|S_mu(z)| < c},
// split into dyadic shells 2^{-n-1} <= 1 - |z| < 2^{-n}.

#include <vector>

#include "innerent/bcsets.hpp"
#include "innerent/measure.hpp"

namespace innerent {

struct SublevelResult {
    std::vector<double> shells;           ///< contribution of shell n = 1..depth
    std::vector<double> partial_integrals;
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> exponent;
};

struct SublevelOptions {
    unsigned resolution_shift = 4;  ///< shell n is sampled at 2^{n + shift} angles
    int threads = 0;
};

/// In shell n the variable x = -log(1 - r) runs over [n log 2, (n+1) log 2];
/// the shell integral is int x^{p-1} r 2 pi F(r) dx with F the fraction of
/// the angular grid where P[mu] > log(1/c), by 3-point Gauss-Legendre in x.
/// Throws DomainError unless 0 < c < 1, p > 0 and n + shift <= 30.
SublevelResult sublevel_integral(const SingularMeasure& mu, double c, double p, unsigned depth,
                                 const SublevelOptions& opts = {});

}  // namespace innerent
