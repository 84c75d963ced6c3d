#pragma once

// Finite positive singular measures on the circle and dyadic arcs.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "innerent/hypgeo.hpp"
#include "innerent/rational.hpp"

namespace innerent {

/// Point mass at angle (turns). exact_angle / exact_mass are present when the
/// input described them exactly; the heavy-light decomposition needs both.
struct Atom {
    double angle = 0.0;
    double mass = 0.0;
    std::optional<Rational> exact_angle;
    std::optional<Rational> exact_mass;
};

/// Atom whose angle and mass are both exact.
Atom exact_atom(const Rational& angle, const Rational& mass);

/// Masses of the 2^depth dyadic arcs of the finest level. Coarser arc masses
/// are sums of their children. Each finest-level mass is carried by a point
/// mass at the midpoint (2k+1) / 2^{depth+1} of its arc, so the measure stays
/// singular and every arc mass is an exact rational.
struct DyadicTree {
    unsigned depth = 0;
    std::vector<double> masses;
    std::vector<std::optional<Rational>> exact_masses;  // empty or one per arc
};

/// Mass of arc `index` at `level` (level <= depth), summed exactly.
Rational tree_arc_mass(const DyadicTree& tree, unsigned level, std::uint64_t index);

class SingularMeasure {
public:
    SingularMeasure() = default;

    static SingularMeasure point(double angle, double mass);
    static SingularMeasure exact_point(const Rational& angle, const Rational& mass);

    void add_atom(Atom atom);
    void set_tree(DyadicTree tree);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<DyadicTree>& tree() const { return tree_; }

    /// Explicit atoms followed by the tree's point masses.
    const std::vector<Atom>& point_masses() const { return combined_; }

    double total_mass() const;
    bool is_zero() const { return combined_.empty(); }

    /// True when every point mass has exact angle and mass.
    bool is_exact() const;

private:
    void rebuild();

    std::vector<Atom> atoms_;
    std::optional<DyadicTree> tree_;
    std::vector<Atom> combined_;
};

/// Half-open dyadic arc [index 2^{-level}, (index+1) 2^{-level}) in turns.
struct DyadicArc {
    unsigned level = 0;
    std::uint64_t index = 0;

    static constexpr unsigned kMaxLevel = 62;

    DyadicArc() = default;
    DyadicArc(unsigned level_, std::uint64_t index_);

    static DyadicArc containing(double angle, unsigned level);

    Rational start() const;
    Rational end() const;
    Rational measure() const { return dyadic_unit(level); }
    double length() const;
    double center() const;

    bool contains(const Rational& angle) const;
    bool contains(double angle) const;
    bool contains(const DyadicArc& other) const;

    DyadicArc child(unsigned which) const;
    DyadicArc parent() const;

    auto operator<=>(const DyadicArc&) const = default;
};

/// Q(I) = { r xi : xi in I, 0 < 1 - r <= m(I) }.
struct CarlesonBox {
    DyadicArc base;

    double side() const { return base.length(); }
    /// z(Q) = (1 - l(Q)) xi(I)
    DiskPoint center() const;
    bool contains(DiskPoint z) const;
    /// T(Q): the points of Q with 1 - |z| = l(Q).
    bool on_top(DiskPoint z, double tol = 1e-12) const;
};

/// Poisson integral of mu: sum over point masses of (1 - |z|^2) / |eta - z|^2.
double poisson_integral(const SingularMeasure& mu, DiskPoint z);
double poisson_integral(const SingularMeasure& mu, const PolarPoint& z);

}  // namespace innerent
