#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"

#include "innerent/errors.hpp"
#include "innerent/sublevel.hpp"

using namespace innerent;

namespace {

// For mu = delta_1 the set {P[mu] > L} meets the circle of radius r in the arc
// cos(phi) > (1 + r^2 - (1 - r^2) / L) / (2 r).
double atom_fraction(double r, double L) {
    const double c = (1.0 + r * r - (1.0 - r * r) / L) / (2.0 * r);
    return std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi;
}

double atom_shell(unsigned n, double c, double p) {
    const double L = -std::log(c);
    auto integrand = [&](double x) {
        const double r = -std::expm1(-x);
        return std::pow(x, p - 1.0) * r * 2.0 * std::numbers::pi * atom_fraction(r, L);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, n * std::numbers::ln2,
                                                                          (n + 1) * std::numbers::ln2, 15, 1e-12);
}

}  // namespace

TEST_CASE("zero measure has an empty sublevel set") {
    const SublevelResult r = sublevel_integral(SingularMeasure{}, 0.5, 1.0, 8);
    CHECK(r.shells.size() == 8);
    for (double s : r.shells) CHECK(s == 0.0);
    CHECK(r.verdict == Verdict::converges);
}

TEST_CASE("single atom shells against the exact arc") {
    for (double c : {std::exp(-2.0), 0.99}) {
        for (double p : {0.5, 1.0, 2.0}) {
            const SublevelResult r = sublevel_integral(SingularMeasure::point(0.0, 1.0), c, p, 14);
            double exact_total = 0.0;
            for (unsigned n = 1; n <= 14; ++n) exact_total += atom_shell(n, c, p);
            CHECK(r.partial_integrals.back() == doctest::Approx(exact_total).epsilon(2e-2));
            for (unsigned n = 8; n <= 14; ++n) {
                CHECK(r.shells[n - 1] == doctest::Approx(atom_shell(n, c, p)).epsilon(2e-2));
            }
        }
    }
}

TEST_CASE("single atom integral converges") {
    for (double c : {std::exp(-2.0), 0.99}) {
        const SublevelResult r = sublevel_integral(SingularMeasure::point(0.0, 1.0), c, 1.0, 18);
        CHECK(r.verdict == Verdict::converges);
    }
}

TEST_CASE("finer angular resolution changes little") {
    SublevelOptions fine;
    fine.resolution_shift = 6;
    const SingularMeasure mu = SingularMeasure::point(0.3, 0.5);
    const SublevelResult coarse = sublevel_integral(mu, 0.5, 1.0, 12);
    const SublevelResult finer = sublevel_integral(mu, 0.5, 1.0, 12, fine);
    CHECK(coarse.partial_integrals.back() == doctest::Approx(finer.partial_integrals.back()).epsilon(2e-2));
}

TEST_CASE("thread count does not change the result") {
    SublevelOptions one, many;
    one.threads = 1;
    many.threads = 3;
    const SingularMeasure mu = SingularMeasure::point(0.0, 1.0);
    CHECK(sublevel_integral(mu, 0.5, 1.0, 12, one).shells == sublevel_integral(mu, 0.5, 1.0, 12, many).shells);
}

TEST_CASE("sublevel argument checks") {
    const SingularMeasure mu = SingularMeasure::point(0.0, 1.0);
    CHECK_THROWS_AS(sublevel_integral(mu, 1.0, 1.0, 4), DomainError);
    CHECK_THROWS_AS(sublevel_integral(mu, 0.5, 0.0, 4), DomainError);
    CHECK_THROWS_AS(sublevel_integral(mu, 0.5, 1.0, 27), DomainError);
}
