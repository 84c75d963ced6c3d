#pragma once

// Closed null sets of the circle described by their complementary arcs, and
// the three equivalent Beurling-Carleson tests:
//   (a) int |log dist(xi, E)|^p dm(xi)
//   (b) sum over complementary arcs of |I| |log |I||^p
//   (c) sum over dyadic arcs meeting E of |I| |log |I||^{p-1}

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace innerent {

enum class Verdict { converges, diverges, inconclusive };

std::string_view to_string(Verdict v);

/// Decides an infinite series from its trailing terms (window of 5).
///   all terms zero                        -> converges
///   fitted decay exponent s <= 1.475      -> diverges
///   every successive ratio <= 0.95        -> converges
///   s >= 1.5                              -> converges
///   otherwise                             -> inconclusive
/// s is the least-squares slope of -log(term) against log(index).
Verdict tail_verdict(const std::vector<double>& terms, std::size_t first_index = 1);

/// Decay exponent fitted by tail_verdict; nullopt if the window holds zeros.
std::optional<double> tail_exponent(const std::vector<double>& terms, std::size_t first_index = 1);

struct Gap {
    double start = 0.0;  ///< turns
    double length = 0.0;
};

/// Symmetric generalized Cantor construction on [0, 1]: generation n removes
/// 2^{n-1} open gaps of one common length g_n from the middle of the
/// remaining intervals.
struct CantorRule {
    enum class Kind { ratio, poly, custom };
    Kind kind = Kind::ratio;
    double param = 1.0 / 3.0;
    std::function<double(unsigned)> custom_log_gap;  ///< log g_n for Kind::custom

    /// g_n = (1 - 2 lambda) lambda^{n-1}; thirds is lambda = 1/3
    static CantorRule ratio(double lambda);
    static CantorRule thirds() { return ratio(1.0 / 3.0); }
    /// g_n = (2 / zeta(s)) 2^{-n} / n^s; poly2 is s = 2
    static CantorRule poly(double s);
    static CantorRule custom(std::function<double(unsigned)> log_gap, std::string name);

    double log_gap(unsigned n) const;
    std::string name() const;

    std::string custom_name;
};

/// "thirds", "poly2", "ratio:<lambda>", "poly:<s>"
std::optional<CantorRule> parse_cantor_rule(std::string_view text);

class BoundarySet {
public:
    /// Explicit complementary arcs; E is the complement of their union.
    /// Throws DomainError on overlapping or nonpositive gaps or total > 1.
    static BoundarySet from_gaps(std::vector<Gap> gaps);

    /// Cantor set of the rule, gaps listed through generation `levels`.
    /// Throws DomainError ("rule error") if the gap mass exceeds 1.
    static BoundarySet cantor(CantorRule rule, unsigned levels);

    bool is_exhaustive() const { return !cantor_; }
    /// Measure zero: exhaustive sets need gap total >= 1 - 1e-12; Cantor
    /// sets need levels > 0 and a rule with total gap mass 1.
    bool is_null() const { return null_; }
    unsigned levels() const { return levels_; }
    const std::optional<CantorRule>& rule() const { return cantor_; }

    /// Explicit gaps sorted by start (exhaustive sets only).
    const std::vector<Gap>& gaps() const { return gaps_; }

    /// Number of gaps of generation n (Cantor sets): 2^{n-1}.
    double generation_count(unsigned n) const;
    double generation_log_length(unsigned n) const;
    /// Length of each remaining interval after generation n.
    double interval_length(unsigned n) const;

    /// All gaps through generation `up_to` (Cantor) or the explicit list.
    std::vector<Gap> list_gaps(unsigned up_to) const;

    double gap_total() const;

private:
    std::vector<Gap> gaps_;
    std::optional<CantorRule> cantor_;
    unsigned levels_ = 0;
    bool null_ = false;
    std::vector<double> interval_lengths_;  // index n: after generation n
};

/// Fixture constructor: the set of the rule through `levels` generations.
BoundarySet generalized_cantor(const CantorRule& rule, unsigned levels);

struct BcSeries {
    std::vector<double> terms;         ///< per generation (a, b) or per dyadic level (c)
    std::vector<double> partial_sums;
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> exponent;    ///< fitted tail decay exponent
    std::string note;
};

/// 2 int_0^{x} |log s|^p ds = 2 Gamma(p + 1, log(1/x)) for 0 < x <= 1/2,
/// returned as a logarithm so tiny gaps do not underflow.
double log_gap_integral(double half_length, double p);

/// (b): generation sums of |I| |log |I||^p.
BcSeries bc_complementary_sum(const BoundarySet& e, double p, unsigned depth);

/// (c): per level k, (number of closed dyadic arcs of length 2^-k meeting E)
/// times 2^-k (k log 2)^{p-1}. Levels are capped at 24.
BcSeries bc_dyadic_sum(const BoundarySet& e, double p, unsigned depth);

/// Number of closed dyadic arcs of level k meeting E.
std::uint64_t dyadic_arcs_meeting(const BoundarySet& e, unsigned k);

/// (a): sum over gaps of 2 int_0^{|I|/2} |log s|^p ds, grouped by generation.
BcSeries bc_integral(const BoundarySet& e, double p, unsigned depth);

struct BcClassification {
    BcSeries a;
    BcSeries b;
    BcSeries c;
    std::optional<Verdict> verdict;  ///< nullopt: the three tests disagree

    bool unanimous() const { return verdict.has_value(); }
};

BcClassification classify_bc(const BoundarySet& e, double p, unsigned depth, unsigned dyadic_depth = 20);

}  // namespace innerent
