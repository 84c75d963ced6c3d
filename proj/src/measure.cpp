#include "innerent/measure.hpp"

#include <cmath>

#include <fmt/format.h>

#include "innerent/errors.hpp"

namespace innerent {

Atom exact_atom(const Rational& angle, const Rational& mass) {
    Atom a;
    a.exact_angle = angle;
    a.exact_mass = mass;
    a.angle = wrap_turns(to_double(angle));
    a.mass = to_double(mass);
    return a;
}

Rational tree_arc_mass(const DyadicTree& tree, unsigned level, std::uint64_t index) {
    if (level > tree.depth) throw DomainError("tree_arc_mass: level deeper than tree");
    const std::uint64_t span = std::uint64_t{1} << (tree.depth - level);
    Rational sum = 0;
    for (std::uint64_t k = index * span; k < (index + 1) * span; ++k) {
        if (!tree.exact_masses.empty() && tree.exact_masses[k]) {
            sum += *tree.exact_masses[k];
        } else {
            sum += exact_rational(tree.masses[k]);
        }
    }
    return sum;
}

SingularMeasure SingularMeasure::point(double angle, double mass) {
    SingularMeasure mu;
    mu.add_atom(Atom{wrap_turns(angle), mass, std::nullopt, std::nullopt});
    return mu;
}

SingularMeasure SingularMeasure::exact_point(const Rational& angle, const Rational& mass) {
    SingularMeasure mu;
    mu.add_atom(exact_atom(angle, mass));
    return mu;
}

void SingularMeasure::add_atom(Atom atom) {
    if (!(atom.mass >= 0.0) || !std::isfinite(atom.mass)) {
        throw DomainError(fmt::format("atom mass must be finite and nonnegative, got {}", atom.mass));
    }
    if (atom.exact_angle) {
        Rational q = *atom.exact_angle;
        const BigInt fl = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
        q -= fl;
        if (q < 0) q += 1;
        atom.exact_angle = q;
    }
    atom.angle = wrap_turns(atom.angle);
    if (atom.mass == 0.0) return;
    atoms_.push_back(std::move(atom));
    rebuild();
}

void SingularMeasure::set_tree(DyadicTree tree) {
    if (tree.depth > 24) throw DomainError("dyadic tree depth above 24 is not supported");
    const std::size_t n = std::size_t{1} << tree.depth;
    if (tree.masses.size() != n) {
        throw DomainError(
            fmt::format("dyadic tree of depth {} needs {} masses, got {}", tree.depth, n, tree.masses.size()));
    }
    if (!tree.exact_masses.empty() && tree.exact_masses.size() != n) {
        throw DomainError("dyadic tree exact mass list has the wrong length");
    }
    for (double m : tree.masses) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("dyadic tree masses must be nonnegative");
    }
    tree_ = std::move(tree);
    rebuild();
}

void SingularMeasure::rebuild() {
    combined_ = atoms_;
    if (!tree_) return;
    const std::uint64_t n = std::uint64_t{1} << tree_->depth;
    for (std::uint64_t k = 0; k < n; ++k) {
        if (tree_->masses[k] == 0.0) continue;
        BigInt den = 1;
        den <<= (tree_->depth + 1);
        Atom a;
        a.exact_angle = Rational(BigInt(2 * k + 1), den);
        a.angle = to_double(*a.exact_angle);
        a.mass = tree_->masses[k];
        if (!tree_->exact_masses.empty() && tree_->exact_masses[k]) {
            a.exact_mass = *tree_->exact_masses[k];
        } else {
            a.exact_mass = exact_rational(a.mass);
        }
        combined_.push_back(std::move(a));
    }
}

double SingularMeasure::total_mass() const {
    double total = 0.0;
    for (const auto& a : combined_) total += a.mass;
    return total;
}

bool SingularMeasure::is_exact() const {
    for (const auto& a : combined_) {
        if (!a.exact_angle) return false;
    }
    return true;
}

DyadicArc::DyadicArc(unsigned level_, std::uint64_t index_) : level(level_), index(index_) {
    if (level > kMaxLevel) throw DomainError(fmt::format("dyadic level {} exceeds {}", level, kMaxLevel));
    if (index >= (std::uint64_t{1} << level)) {
        throw DomainError(fmt::format("dyadic index {} out of range at level {}", index, level));
    }
}

DyadicArc DyadicArc::containing(double angle, unsigned level) {
    const double w = wrap_turns(angle);
    auto idx = static_cast<std::uint64_t>(std::floor(std::ldexp(w, static_cast<int>(level))));
    const std::uint64_t count = std::uint64_t{1} << level;
    if (idx >= count) idx = count - 1;
    return DyadicArc(level, idx);
}

Rational DyadicArc::start() const {
    BigInt den = 1;
    den <<= level;
    return Rational(BigInt(index), den);
}

Rational DyadicArc::end() const {
    BigInt den = 1;
    den <<= level;
    return Rational(BigInt(index + 1), den);
}

double DyadicArc::length() const { return std::ldexp(1.0, -static_cast<int>(level)); }

double DyadicArc::center() const {
    return std::ldexp(static_cast<double>(index) + 0.5, -static_cast<int>(level));
}

bool DyadicArc::contains(const Rational& angle) const { return start() <= angle && angle < end(); }

bool DyadicArc::contains(double angle) const {
    const double w = wrap_turns(angle);
    const double lo = std::ldexp(static_cast<double>(index), -static_cast<int>(level));
    const double hi = std::ldexp(static_cast<double>(index + 1), -static_cast<int>(level));
    return lo <= w && w < hi;
}

bool DyadicArc::contains(const DyadicArc& other) const {
    if (other.level < level) return false;
    return (other.index >> (other.level - level)) == index;
}

DyadicArc DyadicArc::child(unsigned which) const { return DyadicArc(level + 1, 2 * index + (which ? 1 : 0)); }

DyadicArc DyadicArc::parent() const {
    if (level == 0) throw DomainError("the full circle has no parent arc");
    return DyadicArc(level - 1, index / 2);
}

DiskPoint CarlesonBox::center() const {
    const DiskPoint xi = DiskPoint::on_circle(base.center());
    const double r = 1.0 - side();
    return {r * xi.re, r * xi.im};
}

bool CarlesonBox::contains(DiskPoint z) const {
    const PolarPoint p = PolarPoint::from(z);
    if (!(p.gap > 0.0) || p.gap > side()) return false;
    return base.contains(p.angle);
}

bool CarlesonBox::on_top(DiskPoint z, double tol) const {
    const PolarPoint p = PolarPoint::from(z);
    return std::abs(p.gap - side()) <= tol && base.contains(p.angle);
}

double poisson_integral(const SingularMeasure& mu, const PolarPoint& z) {
    if (!(z.gap > 0.0)) throw DomainError("poisson_integral: point not in the open disk");
    const double numer = z.one_minus_sq();
    double sum = 0.0;
    for (const auto& atom : mu.point_masses()) {
        sum += atom.mass * numer / one_minus_polar_norm(z.radius, z.gap, z.angle - atom.angle);
    }
    return sum;
}

double poisson_integral(const SingularMeasure& mu, DiskPoint z) {
    if (!(z.modulus() < 1.0)) throw DomainError("poisson_integral: point not in the open disk");
    return poisson_integral(mu, PolarPoint::from(z));
}

}  // namespace innerent
