#include "innerent/heavy_light.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "innerent/errors.hpp"

namespace innerent {

namespace {

// Sorted exact atoms with prefix sums; arc masses by two binary searches.
class MassIndex {
public:
    explicit MassIndex(const std::vector<Atom>& atoms) {
        std::vector<std::pair<Rational, Rational>> sorted;
        sorted.reserve(atoms.size());
        for (const auto& a : atoms) sorted.emplace_back(*a.exact_angle, *a.exact_mass);
        std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        prefix_.push_back(0);
        for (auto& [angle, mass] : sorted) {
            if (!angles_.empty() && angles_.back() == angle) {
                prefix_.back() += mass;
                continue;
            }
            angles_.push_back(angle);
            prefix_.push_back(prefix_.back() + mass);
        }
    }

    Rational mass(const DyadicArc& arc) const {
        const auto lo = std::lower_bound(angles_.begin(), angles_.end(), arc.start()) - angles_.begin();
        const auto hi = std::lower_bound(angles_.begin(), angles_.end(), arc.end()) - angles_.begin();
        return prefix_[static_cast<std::size_t>(hi)] - prefix_[static_cast<std::size_t>(lo)];
    }

private:
    std::vector<Rational> angles_;
    std::vector<Rational> prefix_;
};

Rational density(const Rational& mass, unsigned level) {
    BigInt scale = 1;
    scale <<= level;
    return mass * scale;
}

class Decomposer {
public:
    Decomposer(const MassIndex& index, const Rational& M, unsigned max_depth, HeavyLightForest& forest)
        : index_(index), M_(M), light_(M / 100), max_depth_(max_depth), forest_(forest) {}

    void search_heavy(const DyadicArc& arc, Generation& gen, std::vector<ForestArc>& found) {
        const Rational m = index_.mass(arc);
        if (m == 0) return;
        const Rational d = density(m, arc.level);
        if (d >= M_) {
            found.push_back({arc, m, d == M_});
            forest_.ties = forest_.ties || d == M_;
            return;
        }
        if (arc.level >= max_depth_) {
            gen.unresolved.push_back({arc, m, false});
            forest_.depth_exhausted = true;
            return;
        }
        search_heavy(arc.child(0), gen, found);
        search_heavy(arc.child(1), gen, found);
    }

    void search_light(const DyadicArc& arc, HeavyArc& heavy) {
        const Rational m = index_.mass(arc);
        const Rational d = density(m, arc.level);
        if (d <= light_) {
            heavy.light.push_back({arc, m, d == light_});
            forest_.ties = forest_.ties || d == light_;
            return;
        }
        if (arc.level >= max_depth_) {
            heavy.unresolved.push_back({arc, m, false});
            forest_.depth_exhausted = true;
            return;
        }
        search_light(arc.child(0), heavy);
        search_light(arc.child(1), heavy);
    }

private:
    const MassIndex& index_;
    Rational M_;
    Rational light_;
    unsigned max_depth_;
    HeavyLightForest& forest_;
};

// closure of a half-open arc on the circle
bool in_closure(const DyadicArc& arc, const Rational& x) {
    if (arc.level == 0) return true;
    const Rational s = arc.start();
    const Rational e = arc.end();
    if (s <= x && x <= e) return true;
    return e == 1 && x == 0;
}

bool in_interior(const DyadicArc& arc, const Rational& x) {
    if (arc.level == 0) return true;
    return arc.start() < x && x < arc.end();
}

}  // namespace

std::vector<Atom> exact_point_masses(const SingularMeasure& mu) {
    std::vector<Atom> out;
    out.reserve(mu.point_masses().size());
    for (const auto& a : mu.point_masses()) {
        Atom e = a;
        if (!e.exact_angle) {
            const double scaled = std::ldexp(a.angle, 32);
            if (scaled != std::floor(scaled)) {
                throw RepresentationError(fmt::format(
                    "atom angle {} is not exactly representable; give it as a fraction \"p/q\"", a.angle));
            }
            e.exact_angle = exact_rational(a.angle);
        }
        if (!e.exact_mass) e.exact_mass = exact_rational(a.mass);
        out.push_back(std::move(e));
    }
    return out;
}

HeavyLightForest heavy_light_decompose(const SingularMeasure& mu, const Rational& M, unsigned max_depth) {
    if (!(M > 0)) throw DomainError("heavy-light threshold M must be positive");
    if (max_depth > DyadicArc::kMaxLevel) {
        throw DomainError(fmt::format("max_depth {} exceeds {}", max_depth, DyadicArc::kMaxLevel));
    }
    const MassIndex index(exact_point_masses(mu));

    HeavyLightForest forest;
    forest.M = M;
    forest.max_depth = max_depth;
    Decomposer d(index, M, max_depth, forest);

    Generation first;
    std::vector<ForestArc> found;
    d.search_heavy(DyadicArc(0, 0), first, found);
    for (auto& arc : found) first.heavy.push_back({std::move(arc), {}, {}, std::nullopt});

    Generation current = std::move(first);
    while (!current.heavy.empty() || !current.unresolved.empty()) {
        for (auto& h : current.heavy) d.search_light(h.arc.arc, h);

        Generation next;
        for (std::size_t i = 0; i < current.heavy.size(); ++i) {
            const auto& lights = current.heavy[i].light;
            for (std::size_t j = 0; j < lights.size(); ++j) {
                if (lights[j].mass == 0) continue;
                std::vector<ForestArc> inside;
                d.search_heavy(lights[j].arc, next, inside);
                for (auto& arc : inside) next.heavy.push_back({std::move(arc), {}, {}, std::pair{i, j}});
            }
        }
        forest.generations.push_back(std::move(current));
        current = std::move(next);
    }
    return forest;
}

HeavyLightCheck verify_forest(const HeavyLightForest& forest, const SingularMeasure& mu) {
    const std::vector<Atom> atoms = exact_point_masses(mu);
    const MassIndex index(atoms);
    HeavyLightCheck out;
    const Rational light_threshold = forest.M / 100;

    for (std::size_t g = 0; g < forest.generations.size(); ++g) {
        const Generation& gen = forest.generations[g];
        for (std::size_t i = 0; i < gen.heavy.size(); ++i) {
            const HeavyArc& h = gen.heavy[i];
            ++out.heavy_arcs;
            Rational covered = 0;
            for (const auto& j : h.light) {
                covered += j.arc.measure();
                if (!h.arc.arc.contains(j.arc)) out.containment = false;
            }
            for (const auto& u : h.unresolved) {
                covered += u.arc.measure();
                if (!h.arc.arc.contains(u.arc)) out.containment = false;
            }
            if (covered != h.arc.arc.measure()) out.partition = false;
            if (h.unresolved.empty() && covered != h.arc.arc.measure()) out.resolved_partition = false;
            if (h.parent) {
                const Generation& up = forest.generations.at(g - 1);
                const ForestArc& parent = up.heavy.at(h.parent->first).light.at(h.parent->second);
                if (!parent.arc.contains(h.arc.arc)) out.containment = false;
            } else if (g != 0) {
                out.containment = false;
            }
        }

        const Generation* next = g + 1 < forest.generations.size() ? &forest.generations[g + 1] : nullptr;
        for (std::size_t i = 0; i < gen.heavy.size(); ++i) {
            const auto& lights = gen.heavy[i].light;
            for (std::size_t j = 0; j < lights.size(); ++j) {
                ++out.light_arcs;
                const Rational mu_j = index.mass(lights[j].arc);
                if (mu_j != lights[j].mass) out.packing = false;
                Rational inner = 0;
                if (next) {
                    for (const auto& h : next->heavy) {
                        if (h.parent && h.parent->first == i && h.parent->second == j) inner += h.arc.arc.measure();
                    }
                }
                if (!(inner <= mu_j / forest.M)) out.packing = false;
                if (!(mu_j / forest.M <= lights[j].arc.measure() / 100)) out.packing = false;
                if (!(density(mu_j, lights[j].arc.level) <= light_threshold)) out.packing = false;
            }
        }
    }

    out.unaccounted_mass = 0;
    for (const auto& a : atoms) {
        const Rational& x = *a.exact_angle;
        bool residual = false;
        for (const auto& gen : forest.generations) {
            for (const auto& h : gen.heavy) {
                if (!in_closure(h.arc.arc, x)) continue;
                const bool inside_light = std::any_of(h.light.begin(), h.light.end(),
                                                      [&](const ForestArc& j) { return in_interior(j.arc, x); });
                if (!inside_light) residual = true;
            }
            if (residual) break;
        }
        if (residual) {
            out.residual_support.push_back(x);
        } else {
            out.unaccounted_mass += *a.exact_mass;
        }
    }
    std::sort(out.residual_support.begin(), out.residual_support.end());
    out.residual_support.erase(std::unique(out.residual_support.begin(), out.residual_support.end()),
                               out.residual_support.end());
    return out;
}

}  // namespace innerent
