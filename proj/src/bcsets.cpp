#include "innerent/bcsets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/zeta.hpp>
#include <fmt/format.h>

#include "innerent/errors.hpp"
#include "innerent/quadrature.hpp"

namespace innerent {

namespace {

constexpr std::size_t kWindow = 5;
constexpr double kDivergentExponent = 1.475;
constexpr double kConvergentExponent = 1.5;
constexpr double kRatio = 0.95;
constexpr unsigned kMaxDyadicLevel = 24;
constexpr unsigned kMaxListedGeneration = 24;
constexpr double kNullSlack = 1e-12;

const double kLog2 = std::numbers::ln2;

// sum_{k > n} k^{-s}: a few terms directly, then Euler-Maclaurin.
double zeta_tail(double s, unsigned n) {
    constexpr unsigned kDirect = 32;
    double sum = 0.0;
    for (unsigned k = n + 1; k <= n + kDirect; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double N = static_cast<double>(n + kDirect + 1);
    const double fN = std::pow(N, -s);
    sum += N * fN / (s - 1.0) + 0.5 * fN + s * fN / (12.0 * N) - s * (s + 1.0) * (s + 2.0) * fN / (720.0 * N * N * N);
    return sum;
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nan("");
    return v;
}

std::vector<double> finish_partial_sums(const std::vector<double>& terms) {
    std::vector<double> out(terms.size());
    std::partial_sum(terms.begin(), terms.end(), out.begin());
    return out;
}

BcSeries non_null_series(std::vector<double> terms) {
    BcSeries s;
    s.terms = std::move(terms);
    s.partial_sums = finish_partial_sums(s.terms);
    s.verdict = Verdict::diverges;
    s.note = "set has positive measure";
    return s;
}

// Number of indices mod count covered by the integer ranges [lo, hi].
std::uint64_t count_mod(std::vector<std::pair<std::int64_t, std::int64_t>> ranges, std::int64_t count) {
    std::vector<std::pair<std::int64_t, std::int64_t>> wrapped;
    wrapped.reserve(ranges.size() + 2);
    for (auto [lo, hi] : ranges) {
        if (hi < lo) continue;
        if (hi - lo + 1 >= count) return static_cast<std::uint64_t>(count);
        std::int64_t a = ((lo % count) + count) % count;
        std::int64_t b = a + (hi - lo);
        if (b < count) {
            wrapped.emplace_back(a, b);
        } else {
            wrapped.emplace_back(a, count - 1);
            wrapped.emplace_back(0, b - count);
        }
    }
    std::sort(wrapped.begin(), wrapped.end());
    std::uint64_t total = 0;
    std::int64_t cur_lo = -1;
    std::int64_t cur_hi = -2;
    for (auto [lo, hi] : wrapped) {
        if (lo > cur_hi + 1) {
            if (cur_hi >= cur_lo) total += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
            cur_lo = lo;
            cur_hi = hi;
        } else {
            cur_hi = std::max(cur_hi, hi);
        }
    }
    if (cur_hi >= cur_lo) total += static_cast<std::uint64_t>(cur_hi - cur_lo + 1);
    return total;
}

// Closed dyadic arcs of width 2^-k meeting [a, b]: [ceil(a/h) - 1, floor(b/h)].
std::pair<std::int64_t, std::int64_t> arcs_meeting(double a, double b, unsigned k) {
    const double qa = std::ldexp(a, static_cast<int>(k));
    const double qb = std::ldexp(b, static_cast<int>(k));
    return {static_cast<std::int64_t>(std::ceil(qa)) - 1, static_cast<std::int64_t>(std::floor(qb))};
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::converges: return "converges";
        case Verdict::diverges: return "diverges";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<double> tail_exponent(const std::vector<double>& terms, std::size_t first_index) {
    if (terms.size() < kWindow) return std::nullopt;
    const std::size_t start = terms.size() - kWindow;
    double mx = 0.0, my = 0.0;
    std::array<double, kWindow> xs{}, ys{};
    for (std::size_t i = 0; i < kWindow; ++i) {
        const double t = terms[start + i];
        if (!(t > 0.0) || !std::isfinite(t)) return std::nullopt;
        xs[i] = std::log(static_cast<double>(first_index + start + i));
        ys[i] = std::log(t);
        mx += xs[i];
        my += ys[i];
    }
    mx /= kWindow;
    my /= kWindow;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < kWindow; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return -sxy / sxx;
}

Verdict tail_verdict(const std::vector<double>& terms, std::size_t first_index) {
    const std::size_t n = terms.size();
    const std::size_t start = n > kWindow ? n - kWindow : 0;
    const bool all_zero = std::all_of(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end(),
                                      [](double t) { return t == 0.0; });
    if (all_zero) return Verdict::converges;
    if (n < kWindow) return Verdict::inconclusive;
    if (terms.back() == 0.0) return Verdict::converges;
    const auto s = tail_exponent(terms, first_index);
    if (!s) return Verdict::inconclusive;
    if (*s <= kDivergentExponent) return Verdict::diverges;
    bool ratios = true;
    for (std::size_t i = start + 1; i < n; ++i) {
        if (!(terms[i] <= kRatio * terms[i - 1])) ratios = false;
    }
    if (ratios) return Verdict::converges;
    if (*s >= kConvergentExponent) return Verdict::converges;
    return Verdict::inconclusive;
}

CantorRule CantorRule::ratio(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5)) throw DomainError(fmt::format("ratio rule needs 0 < lambda < 1/2, got {}", lambda));
    CantorRule r;
    r.kind = Kind::ratio;
    r.param = lambda;
    return r;
}

CantorRule CantorRule::poly(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError(fmt::format("poly rule needs s > 1, got {}", s));
    CantorRule r;
    r.kind = Kind::poly;
    r.param = s;
    return r;
}

CantorRule CantorRule::custom(std::function<double(unsigned)> log_gap, std::string name) {
    CantorRule r;
    r.kind = Kind::custom;
    r.custom_log_gap = std::move(log_gap);
    r.custom_name = std::move(name);
    return r;
}

double CantorRule::log_gap(unsigned n) const {
    const double dn = static_cast<double>(n);
    switch (kind) {
        case Kind::ratio: return std::log1p(-2.0 * param) + (dn - 1.0) * std::log(param);
        case Kind::poly: return std::log(2.0 / boost::math::zeta(param)) - dn * kLog2 - param * std::log(dn);
        case Kind::custom: return custom_log_gap(n);
    }
    return 0.0;
}

std::string CantorRule::name() const {
    switch (kind) {
        case Kind::ratio: return param == 1.0 / 3.0 ? "thirds" : fmt::format("ratio:{}", param);
        case Kind::poly: return param == 2.0 ? "poly2" : fmt::format("poly:{}", param);
        case Kind::custom: return custom_name;
    }
    return "?";
}

std::optional<CantorRule> parse_cantor_rule(std::string_view text) {
    try {
        if (text == "thirds") return CantorRule::thirds();
        if (text == "poly2") return CantorRule::poly(2.0);
        if (text.starts_with("ratio:")) {
            const double v = parse_double(text.substr(6));
            if (std::isnan(v)) return std::nullopt;
            return CantorRule::ratio(v);
        }
        if (text.starts_with("poly:")) {
            const double v = parse_double(text.substr(5));
            if (std::isnan(v)) return std::nullopt;
            return CantorRule::poly(v);
        }
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return std::nullopt;
}

BoundarySet BoundarySet::from_gaps(std::vector<Gap> gaps) {
    double total = 0.0;
    for (auto& g : gaps) {
        if (!(g.length > 0.0) || !std::isfinite(g.start)) {
            throw DomainError(fmt::format("gap at {} has nonpositive length {}", g.start, g.length));
        }
        g.start -= std::floor(g.start);
        total += g.length;
    }
    if (total > 1.0 + kNullSlack) throw DomainError(fmt::format("gap lengths sum to {} > 1", total));
    std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.start < y.start; });
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const Gap& g = gaps[i];
        const Gap& h = gaps[(i + 1) % gaps.size()];
        const double next = i + 1 < gaps.size() ? h.start : h.start + 1.0;
        if (gaps.size() > 1 && g.start + g.length > next + kNullSlack) {
            throw DomainError(fmt::format("gaps starting at {} and {} overlap", g.start, h.start));
        }
    }
    BoundarySet e;
    e.gaps_ = std::move(gaps);
    e.null_ = total >= 1.0 - kNullSlack;
    return e;
}

BoundarySet BoundarySet::cantor(CantorRule rule, unsigned levels) {
    BoundarySet e;
    e.levels_ = levels;
    e.interval_lengths_.push_back(1.0);
    // intervals are followed past `levels` far enough for the dyadic test
    const unsigned tracked = std::max(levels, kMaxDyadicLevel + 16);
    for (unsigned n = 1; n <= tracked; ++n) {
        double len = 0.0;
        if (rule.kind == CantorRule::Kind::ratio) {
            len = std::pow(rule.param, n);
        } else if (rule.kind == CantorRule::Kind::poly) {
            len = std::ldexp(zeta_tail(rule.param, n) / boost::math::zeta(rule.param), -static_cast<int>(n));
        } else {
            len = 0.5 * (e.interval_lengths_.back() - std::exp(rule.log_gap(n)));
            if (len < 0.0 && n <= levels) {
                throw DomainError(fmt::format("rule error: gap mass exceeds 1 at generation {}", n));
            }
            len = std::max(len, 0.0);
        }
        e.interval_lengths_.push_back(len);
    }
    e.null_ = levels > 0;
    e.cantor_ = std::move(rule);
    return e;
}

double BoundarySet::generation_count(unsigned n) const { return std::ldexp(1.0, static_cast<int>(n) - 1); }

double BoundarySet::generation_log_length(unsigned n) const {
    if (!cantor_) throw DomainError("generation lengths exist for Cantor sets only");
    return cantor_->log_gap(n);
}

double BoundarySet::interval_length(unsigned n) const {
    if (!cantor_) throw DomainError("interval lengths exist for Cantor sets only");
    if (n >= interval_lengths_.size()) return interval_lengths_.back();
    return interval_lengths_[n];
}

std::vector<Gap> BoundarySet::list_gaps(unsigned up_to) const {
    if (!cantor_) return gaps_;
    up_to = std::min(up_to, levels_);
    if (up_to > kMaxListedGeneration) {
        throw DomainError(fmt::format("listing {} generations of gaps is too many", up_to));
    }
    std::vector<Gap> out;
    std::vector<double> starts{0.0};
    for (unsigned n = 1; n <= up_to; ++n) {
        const double child = interval_length(n);
        const double gap = std::exp(cantor_->log_gap(n));
        std::vector<double> next;
        next.reserve(2 * starts.size());
        for (double a : starts) {
            out.push_back({a + child, gap});
            next.push_back(a);
            next.push_back(a + interval_length(n - 1) - child);
        }
        starts = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Gap& x, const Gap& y) { return x.start < y.start; });
    return out;
}

double BoundarySet::gap_total() const {
    if (!cantor_) {
        double t = 0.0;
        for (const auto& g : gaps_) t += g.length;
        return t;
    }
    double t = 0.0;
    for (unsigned n = 1; n <= levels_; ++n) t += std::exp(std::log(generation_count(n)) + cantor_->log_gap(n));
    return t;
}

BoundarySet generalized_cantor(const CantorRule& rule, unsigned levels) { return BoundarySet::cantor(rule, levels); }

double log_gap_integral(double half_length, double p) {
    if (!(half_length > 0.0 && half_length <= 0.5)) {
        throw DomainError(fmt::format("half gap length {} outside (0, 1/2]", half_length));
    }
    if (!(p > 0.0)) throw DomainError("p must be positive");
    // 2 Gamma(p+1, y) = 2 y^p e^{-y} int_0^inf (1 + v/y)^p e^{-v} dv, y = log(1/x)
    const double y = -std::log(half_length);
    double scaled = 0.0;
    if (p == std::floor(p) && p <= 170.0) {
        // p!/k! y^{k-p}, summed from k = p down
        double term = 1.0;
        scaled = 1.0;
        for (int k = static_cast<int>(p); k > 0; --k) {
            term *= static_cast<double>(k) / y;
            scaled += term;
        }
    } else {
        const IntegralResult r = integrate_adaptive(
            [&](double v) { return std::exp(p * std::log1p(v / y) - v); }, 0.0, 45.0 + 3.0 * p, 1e-14, 2000, 0.0, 8);
        scaled = r.value;
    }
    return kLog2 - y + p * std::log(y) + std::log(scaled);
}

BcSeries bc_complementary_sum(const BoundarySet& e, double p, unsigned depth) {
    if (!(p > 0.0)) throw DomainError("p must be positive");
    std::vector<double> terms;
    if (e.is_exhaustive()) {
        for (const auto& g : e.gaps()) {
            terms.push_back(g.length * std::pow(std::abs(std::log(g.length)), p));
        }
        if (!e.is_null()) return non_null_series(std::move(terms));
        BcSeries s;
        s.terms = std::move(terms);
        s.partial_sums = finish_partial_sums(s.terms);
        s.verdict = Verdict::converges;
        s.note = "finite gap list";
        return s;
    }
    const unsigned gens = std::min(depth, e.levels());
    for (unsigned n = 1; n <= gens; ++n) {
        const double lg = e.generation_log_length(n);
        terms.push_back(std::exp(std::log(e.generation_count(n)) + lg + p * std::log(-lg)));
    }
    if (!e.is_null()) return non_null_series(std::move(terms));
    BcSeries s;
    s.terms = std::move(terms);
    s.partial_sums = finish_partial_sums(s.terms);
    s.verdict = tail_verdict(s.terms);
    s.exponent = tail_exponent(s.terms);
    return s;
}

BcSeries bc_integral(const BoundarySet& e, double p, unsigned depth) {
    if (!(p > 0.0)) throw DomainError("p must be positive");
    std::vector<double> terms;
    if (e.is_exhaustive()) {
        for (const auto& g : e.gaps()) terms.push_back(std::exp(log_gap_integral(0.5 * g.length, p)));
        if (!e.is_null()) return non_null_series(std::move(terms));
        BcSeries s;
        s.terms = std::move(terms);
        s.partial_sums = finish_partial_sums(s.terms);
        s.verdict = Verdict::converges;
        s.note = "finite gap list";
        return s;
    }
    const unsigned gens = std::min(depth, e.levels());
    for (unsigned n = 1; n <= gens; ++n) {
        const double half = std::exp(e.generation_log_length(n)) / 2.0;
        terms.push_back(std::exp(std::log(e.generation_count(n)) + log_gap_integral(half, p)));
    }
    if (!e.is_null()) return non_null_series(std::move(terms));
    BcSeries s;
    s.terms = std::move(terms);
    s.partial_sums = finish_partial_sums(s.terms);
    s.verdict = tail_verdict(s.terms);
    s.exponent = tail_exponent(s.terms);
    return s;
}

std::uint64_t dyadic_arcs_meeting(const BoundarySet& e, unsigned k) {
    if (k > kMaxDyadicLevel) throw DomainError(fmt::format("dyadic level {} above {}", k, kMaxDyadicLevel));
    const std::int64_t count = std::int64_t{1} << k;
    const double h = std::ldexp(1.0, -static_cast<int>(k));
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

    if (e.is_exhaustive()) {
        const auto& gaps = e.gaps();
        if (gaps.empty()) return static_cast<std::uint64_t>(count);
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const double a = gaps[i].start + gaps[i].length;
            const double b = i + 1 < gaps.size() ? gaps[i + 1].start : gaps[0].start + 1.0;
            if (b < a) continue;
            ranges.push_back(arcs_meeting(a, b, k));
        }
        return count_mod(std::move(ranges), count);
    }

    // Depth-first over the construction intervals, left to right.
    struct Node {
        double a;
        unsigned n;
    };
    std::vector<Node> stack{{0.0, 0}};
    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        const double len = e.interval_length(node.n);
        const double b = node.a + len;
        const bool solid = node.n >= e.levels();
        if (solid || len < h || std::floor(node.a / h) == std::floor(b / h)) {
            ranges.push_back(arcs_meeting(node.a, b, k));
            continue;
        }
        const double child = e.interval_length(node.n + 1);
        stack.push_back({b - child, node.n + 1});
        stack.push_back({node.a, node.n + 1});
    }
    return count_mod(std::move(ranges), count);
}

BcSeries bc_dyadic_sum(const BoundarySet& e, double p, unsigned depth) {
    if (!(p > 0.0)) throw DomainError("p must be positive");
    const unsigned levels = std::min(depth, kMaxDyadicLevel);
    std::vector<double> terms;
    for (unsigned k = 1; k <= levels; ++k) {
        const double n = static_cast<double>(dyadic_arcs_meeting(e, k));
        terms.push_back(n * std::ldexp(1.0, -static_cast<int>(k)) * std::pow(k * kLog2, p - 1.0));
    }
    if (!e.is_null()) return non_null_series(std::move(terms));
    BcSeries s;
    s.terms = std::move(terms);
    s.partial_sums = finish_partial_sums(s.terms);
    s.verdict = tail_verdict(s.terms);
    s.exponent = tail_exponent(s.terms);
    return s;
}

BcClassification classify_bc(const BoundarySet& e, double p, unsigned depth, unsigned dyadic_depth) {
    BcClassification out;
    out.a = bc_integral(e, p, depth);
    out.b = bc_complementary_sum(e, p, depth);
    out.c = bc_dyadic_sum(e, p, dyadic_depth);
    if (out.a.verdict == out.b.verdict && out.b.verdict == out.c.verdict) out.verdict = out.a.verdict;
    return out;
}

}  // namespace innerent
