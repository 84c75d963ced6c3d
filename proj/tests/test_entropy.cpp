#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "fixtures.hpp"

#include "innerent/entropy.hpp"
#include "innerent/errors.hpp"

using namespace innerent;

namespace {

constexpr double kPi = std::numbers::pi;

InnerFunctionSpec worked_example(double a) { return InnerFunctionSpec::blaschke({DiskPoint{0.0}, DiskPoint{a}}); }

// mu(z^k) at modulus r: 1 - D = (1/2) sum_j (r^j - r^{k-1-j})^2 / sum_j r^{2j}
double power_distortion(unsigned k, double r) {
    if (r == 0.0) return k == 1 ? 0.0 : 1.0;
    if (r == 1.0) return 0.0;
    const double lr = std::log(r);
    double num = 0.0, den = 0.0;
    for (unsigned j = 0; j < k; ++j) {
        const unsigned lo = std::min(j, k - 1 - j), hi = std::max(j, k - 1 - j);
        const double d = std::pow(r, lo) * std::expm1(static_cast<double>(hi - lo) * lr);
        num += 0.5 * d * d;
        den += std::pow(r, 2 * j);
    }
    return num / den;
}

// A(z^k) as a radial integral in r with hyperbolic length element 2 dr / (1 - r^2)
double power_accumulated(unsigned k, double from = 0.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([k](double r) { return power_distortion(k, r) * 2.0 / (1.0 - r * r); }, from, 1.0);
}

// B_alpha(z^k)(1) in polar coordinates: the cone at radius r spans
// 4 asin(min(1, (1 - r) sqrt((alpha^2 - 1) / (4 r)))) radians.
double power_conical(unsigned k, double alpha) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double c = (alpha * alpha - 1.0) / 4.0;
    auto integrand = [&](double r) {
        const double s = std::min(1.0, (1.0 - r) * std::sqrt(c / r));
        const double w = 4.0 * std::asin(s);
        const double d = 1.0 - r * r;
        return power_distortion(k, r) * r * w / (d * d);
    };
    // the width saturates where (1 - r)^2 c = r
    const double b = 2.0 * c + 1.0;
    const double r0 = (b - std::sqrt(b * b - 4.0 * c * c)) / (2.0 * c);
    return ts.integrate(integrand, 0.0, r0) + ts.integrate(integrand, r0, 1.0);
}

BoundaryProfile manual_profile(std::vector<double> values, std::vector<PointStatus> status) {
    BoundaryProfile p;
    for (std::size_t k = 0; k < values.size(); ++k) p.points.push_back(static_cast<double>(k) / values.size());
    p.values = std::move(values);
    p.status = std::move(status);
    p.budget_exhausted.assign(p.values.size(), false);
    return p;
}

}  // namespace

TEST_CASE("accumulated distortion of z^k") {
    CHECK(power_accumulated(2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (unsigned k : {2u, 3u, 5u}) {
        const DistortionResult a = accumulated_distortion(InnerFunctionSpec::power(k), 0.37);
        CHECK(a.status == PointStatus::finite);
        CHECK(a.value == doctest::Approx(power_accumulated(k)).epsilon(1e-7));
    }
    const DistortionResult id = accumulated_distortion(InnerFunctionSpec::power(1), 0.1);
    CHECK(id.status == PointStatus::finite);
    CHECK(std::abs(id.value) < 1e-12);
}

TEST_CASE("accumulated distortion of the worked example") {
    for (double a : {0.1, 0.5, 0.9}) {
        const DistortionResult r = accumulated_distortion(worked_example(a), 0.0);
        CHECK(r.status == PointStatus::finite);
        CHECK(std::abs(r.value - (std::log(1.0 + a) + std::log(2.0))) < 1e-4);
    }
}

TEST_CASE("accumulated distortion at an atom does not settle") {
    const InnerFunctionSpec s = InnerFunctionSpec::singular_atom(0.0, 1.0);
    const DistortionResult at = accumulated_distortion(s, 0.0);
    CHECK(at.status != PointStatus::finite);
    const DistortionResult off = accumulated_distortion(s, 0.5);
    CHECK(off.status == PointStatus::finite);
    CHECK(off.value > 0.0);
    QuadratureConfig tight;
    tight.divergence_cap = 5.0;
    const DistortionResult capped = accumulated_distortion(s, 0.0, tight);
    CHECK(capped.status == PointStatus::diverged);
    CHECK(capped.value == 5.0);
}

TEST_CASE("local accumulated distortion") {
    const CarlesonBox q{DyadicArc(1, 0)};
    const DistortionResult a = local_accumulated_distortion(InnerFunctionSpec::power(2), q, 0.25);
    CHECK(a.status == PointStatus::finite);
    // 2 log(1 + r) - log(1 + r^2) from 1/2 to 1
    CHECK(a.value == doctest::Approx(2.0 * std::log(4.0 / 3.0) - std::log(8.0 / 5.0)).epsilon(1e-8));
    CHECK(a.value == doctest::Approx(power_accumulated(2, 0.5)).epsilon(1e-8));
    CHECK_THROWS_AS(local_accumulated_distortion(InnerFunctionSpec::power(2), q, 0.75), DomainError);
}

TEST_CASE("conical distortion of z^2 against a polar-coordinate oracle") {
    for (double alpha : {1.5, 2.0, 4.0}) {
        const DistortionResult b = conical_distortion(InnerFunctionSpec::power(2), 0.0, alpha);
        CHECK(b.status == PointStatus::finite);
        CHECK(b.value == doctest::Approx(power_conical(2, alpha)).epsilon(1e-6));
        const DistortionResult rotated = conical_distortion(InnerFunctionSpec::power(2), 0.3, alpha);
        CHECK(rotated.value == doctest::Approx(b.value).epsilon(1e-9));
    }
    CHECK_THROWS_AS(conical_distortion(InnerFunctionSpec::power(2), 0.0, 1.0), DomainError);
}

TEST_CASE("conical distortion grows with the aperture") {
    std::mt19937_64 rng(31);
    for (int s = 0; s < 3; ++s) {
        const InnerFunctionSpec f = fixtures::random_blaschke(rng, 3, 0.8);
        for (double t : {0.1, 0.6}) {
            const double narrow = conical_distortion(f, t, 1.5).value;
            const double wide = conical_distortion(f, t, 3.0).value;
            CHECK(narrow <= wide + 1e-7);
            const double a = accumulated_distortion(f, t).value;
            CHECK(a > 0.0);
            CHECK(wide / a < 1e3);
        }
    }
}

TEST_CASE("radial distortion integral") {
    const double v = radial_distortion_integral(InnerFunctionSpec::power(2), 0.2, 0.1, 0.8);
    CHECK(v == doctest::Approx(power_accumulated(2, 0.1) - power_accumulated(2, 0.8)).epsilon(1e-8));
    CHECK(radial_distortion_integral(InnerFunctionSpec::power(2), 0.2, 0.8, 0.1) == doctest::Approx(-v));
}

TEST_CASE("radial oscillation statistic") {
    CHECK(radial_oscillation_stat(InnerFunctionSpec::power(1), {{DiskPoint{0.5}, DiskPoint{0.0, 0.7}}}, 0.2) ==
          doctest::Approx(0.0));
    const DiskPoint z{0.6}, w{0.0, -0.9};
    const double oracle = std::abs(power_accumulated(2, 0.6) - power_accumulated(2, 0.9)) / hyperbolic_distance(z, w);
    CHECK(radial_oscillation_stat(InnerFunctionSpec::power(2), {{z, w}, {z, z}}, 0.3) ==
          doctest::Approx(oracle).epsilon(1e-7));
    CHECK_THROWS_AS(radial_oscillation_stat(InnerFunctionSpec::power(2), {{DiskPoint{0.1}, w}}, 0.3), DomainError);
}

TEST_CASE("boundary profiles") {
    const BoundaryProfile logfp = boundary_profile(InnerFunctionSpec::singular_atom(0.0, 1.0), 8, Quantity::logfp);
    REQUIRE(logfp.size() == 8);
    CHECK(logfp.status[0] == PointStatus::diverged);
    for (std::size_t k = 1; k < 8; ++k) {
        // |S'(e^{2 pi i t})| = 2 / |1 - e^{2 pi i t}|^2 = 1 / (2 sin^2(pi t))
        const double t = k / 8.0;
        CHECK(logfp.status[k] == PointStatus::finite);
        CHECK(logfp.values[k] == doctest::Approx(-std::log(2.0 * std::pow(std::sin(kPi * t), 2))).epsilon(1e-13));
    }
    const BoundaryProfile a = boundary_profile(InnerFunctionSpec::power(2), 4, Quantity::A);
    CHECK(a.all_finite());
    for (double v : a.values) CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-7));
    CHECK(parse_quantity("B_alpha") == Quantity::B_alpha);
    CHECK_FALSE(parse_quantity("C").has_value());
}

TEST_CASE("profiles do not depend on the thread count") {
    std::mt19937_64 rng(32);
    const InnerFunctionSpec f = fixtures::random_mixed(rng, 2, 1);
    ProfileOptions one;
    one.threads = 1;
    ProfileOptions four;
    four.threads = 4;
    const BoundaryProfile p1 = boundary_profile(f, 16, Quantity::A, {}, one);
    const BoundaryProfile p4 = boundary_profile(f, 16, Quantity::A, {}, four);
    CHECK(p1.values == p4.values);
}

TEST_CASE("lp norm") {
    const BoundaryProfile p = manual_profile({1.0, 2.0}, {PointStatus::finite, PointStatus::finite});
    CHECK(lp_norm(p, 2.0).norm == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
    CHECK(lp_norm(p, 1.0).norm == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(lp_norm(p, 0.5).norm == doctest::Approx(std::pow((1.0 + std::sqrt(2.0)) / 2.0, 2.0)).epsilon(1e-15));
    const BoundaryProfile q = manual_profile({-3.0, 1e4}, {PointStatus::finite, PointStatus::diverged});
    const LpNorm n = lp_norm(q, 1.0);
    CHECK(n.norm == doctest::Approx(1.5));
    CHECK(n.diverged_fraction == doctest::Approx(0.5));
}

TEST_CASE("pointwise estimate") {
    const PointwiseReport r = check_pointwise(worked_example(0.5), 64);
    CHECK(r.passed);
    CHECK(r.compared == 64);
    const double at_one = accumulated_distortion(worked_example(0.5), 0.0).value - std::log(4.0);
    CHECK(at_one == doctest::Approx(std::log(0.75)).epsilon(1e-4));
    CHECK(r.max_defect >= at_one - 1e-9);
    CHECK(r.max_defect <= 10.0 * QuadratureConfig{}.abs_tol);
    CHECK_THROWS_AS(check_pointwise(InnerFunctionSpec::singular_atom(0.0, 1.0), 8), PreconditionError);
}

TEST_CASE("pointwise estimate on random Blaschke products") {
    std::mt19937_64 rng(33);
    for (int s = 0; s < 4; ++s) {
        const PointwiseReport r = check_pointwise(fixtures::random_blaschke(rng, 4, 0.95), 64);
        CHECK(r.passed);
    }
}

TEST_CASE("Laplacian identity") {
    std::mt19937_64 rng(34);
    std::vector<DiskPoint> points;
    for (int k = 0; k < 40; ++k) points.push_back(fixtures::random_disk(rng, 0.9));
    for (int s = 0; s < 3; ++s) {
        const LaplacianReport r = check_laplacian(fixtures::random_mixed(rng, 3, 1), points);
        CHECK(r.max_relative_error < 1e-3);
    }
    CHECK_THROWS_AS(check_laplacian(InnerFunctionSpec::power(2), {DiskPoint{0.95}}), DomainError);
}

TEST_CASE("good-lambda table for z^k") {
    const std::vector<double> lambdas{0.1, 0.3, 0.5, 1.0, 2.0};
    const std::vector<double> epsilons{0.01, 0.5, 2.0, 10.0};
    for (unsigned k : {2u, 3u, 4u}) {
        const double logk = std::log(static_cast<double>(k));
        const double ak = power_accumulated(k);
        const GoodLambdaTable t = good_lambda_scan(InnerFunctionSpec::power(k), 16, 3.0, 0.5, lambdas, epsilons);
        REQUIRE(t.rows.size() == lambdas.size() * epsilons.size());
        for (const auto& row : t.rows) {
            const double num = (logk >= 3.0 * row.lambda && ak <= row.epsilon * row.lambda) ? 1.0 : 0.0;
            const double den = logk >= row.lambda ? 1.0 : 0.0;
            CHECK(row.numerator == num);
            CHECK(row.denominator == den);
            CHECK(row.numerator <= row.denominator);
        }
    }
}

TEST_CASE("good-lambda numerator never exceeds the denominator") {
    std::mt19937_64 rng(35);
    const std::vector<double> lambdas{0.05, 0.2, 0.5, 1.0};
    const std::vector<double> epsilons{0.1, 1.0, 5.0};
    for (int s = 0; s < 3; ++s) {
        const GoodLambdaTable t = good_lambda_scan(fixtures::random_blaschke(rng, 3, 0.9), 32, 3.0, 0.5, lambdas, epsilons);
        for (const auto& row : t.rows) CHECK(row.numerator <= row.denominator);
    }
}

TEST_CASE("good-lambda preconditions") {
    const std::vector<double> l{1.0}, e{1.0};
    CHECK_THROWS_AS(good_lambda_scan(InnerFunctionSpec::power(2), 4, 2.0, 0.5, l, e), PreconditionError);
    CHECK_THROWS_AS(good_lambda_scan(InnerFunctionSpec::power(2), 4, 3.0, 1.0, l, e), PreconditionError);
    CHECK_THROWS_AS(good_lambda_scan(InnerFunctionSpec::singular_atom(0.0, 1.0), 4, 3.0, 0.5, l, e),
                    PreconditionError);
}

TEST_CASE("A is unchanged by post-composition with an automorphism") {
    std::mt19937_64 rng(36);
    const InnerFunctionSpec f = fixtures::random_blaschke(rng, 2, 0.8);
    const ComposedFunction g{Automorphism{DiskPoint{0.4, -0.3}, 0.2}, f};
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double t : {0.15, 0.55}) {
        const double composed = ts.integrate(
            [&](double r) { return mobius_distortion(g, PolarPoint::radial(1.0 - r, t)) * 2.0 / (1.0 - r * r); }, 0.0,
            1.0);
        CHECK(composed == doctest::Approx(accumulated_distortion(f, t).value).epsilon(1e-6));
    }
}
