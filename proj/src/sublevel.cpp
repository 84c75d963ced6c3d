#include "innerent/sublevel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "innerent/errors.hpp"
#include "innerent/parallel.hpp"

namespace innerent {

namespace {

constexpr std::array<double, 3> kNodes = {-0.774596669241483377035853079956, 0.0, 0.774596669241483377035853079956};
constexpr std::array<double, 3> kWeights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

double sublevel_fraction(const SingularMeasure& mu, double gap, double threshold, std::uint64_t samples,
                         int threads) {
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(samples, lo + kChunk);
        std::uint64_t count = 0;
        for (std::uint64_t j = lo; j < hi; ++j) {
            const double angle = static_cast<double>(j) / static_cast<double>(samples);
            if (poisson_integral(mu, PolarPoint::radial(gap, angle)) > threshold) ++count;
        }
        hits[c] = count;
    });
    const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    return static_cast<double>(total) / static_cast<double>(samples);
}

}  // namespace

SublevelResult sublevel_integral(const SingularMeasure& mu, double c, double p, unsigned depth,
                                 const SublevelOptions& opts) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError(fmt::format("sublevel level c must lie in (0, 1), got {}", c));
    if (!(p > 0.0)) throw DomainError("p must be positive");
    if (depth + opts.resolution_shift > 30) throw DomainError("shell resolution above 2^30 samples");

    const double threshold = -std::log(c);
    const double ln2 = std::numbers::ln2;
    SublevelResult out;
    for (unsigned n = 1; n <= depth; ++n) {
        double shell = 0.0;
        if (!mu.is_zero()) {
            const double x0 = n * ln2;
            const double half = 0.5 * ln2;
            const std::uint64_t samples = std::uint64_t{1} << (n + opts.resolution_shift);
            for (std::size_t q = 0; q < kNodes.size(); ++q) {
                const double x = x0 + half * (1.0 + kNodes[q]);
                const double gap = std::exp(-x);
                const double f = sublevel_fraction(mu, gap, threshold, samples, opts.threads);
                shell += kWeights[q] * std::pow(x, p - 1.0) * (1.0 - gap) * 2.0 * std::numbers::pi * f;
            }
            shell *= half;
        }
        out.shells.push_back(shell);
    }
    out.partial_integrals.resize(out.shells.size());
    std::partial_sum(out.shells.begin(), out.shells.end(), out.partial_integrals.begin());
    out.verdict = tail_verdict(out.shells);
    out.exponent = tail_exponent(out.shells);
    return out;
}

}  // namespace innerent
