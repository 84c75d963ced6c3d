#pragma once

// Stopping-time decomposition of a singular measure into alternating
// generations of heavy and light dyadic arcs:
//   heavy: maximal arcs with mu(I) / m(I) >= M
//   light: maximal arcs inside a heavy arc with mu(J) / m(J) <= M / 100
// The next generation of heavy arcs is searched inside each light arc of
// positive mass. All masses and thresholds are exact rationals.

#include <cstddef>
#include <optional>
#include <vector>

#include "innerent/measure.hpp"
#include "innerent/rational.hpp"

namespace innerent {

struct ForestArc {
    DyadicArc arc;
    Rational mass;
    bool tie = false;  ///< density exactly at the threshold that selected it
};

struct HeavyArc {
    ForestArc arc;
    std::vector<ForestArc> light;
    std::vector<ForestArc> unresolved;  ///< arcs at max_depth neither light nor split further
    /// (heavy index, light index) of the enclosing light arc one generation up
    std::optional<std::pair<std::size_t, std::size_t>> parent;
};

struct Generation {
    std::vector<HeavyArc> heavy;
    /// arcs at max_depth reached while searching for heavy arcs, with positive mass
    std::vector<ForestArc> unresolved;
};

struct HeavyLightForest {
    Rational M;
    unsigned max_depth = 0;
    std::vector<Generation> generations;
    bool depth_exhausted = false;
    bool ties = false;

    bool empty() const { return generations.empty(); }
};

/// Point masses of mu with exact angle and mass. Real-valued angles count as
/// exact only when they are multiples of 2^-32; anything else raises
/// RepresentationError.
std::vector<Atom> exact_point_masses(const SingularMeasure& mu);

/// Throws DomainError unless M > 0 and max_depth <= DyadicArc::kMaxLevel,
/// RepresentationError as in exact_point_masses.
HeavyLightForest heavy_light_decompose(const SingularMeasure& mu, const Rational& M, unsigned max_depth);

struct HeavyLightCheck {
    /// sum m(J) + sum m(unresolved) == m(I) for every heavy arc
    bool partition = true;
    /// sum m(J) == m(I) for every heavy arc without unresolved pieces
    bool resolved_partition = true;
    /// sum m(next heavy in J) <= mu(J) / M <= m(J) / 100 for every light arc J
    bool packing = true;
    /// heavy arcs sit in light arcs of the previous generation, light in heavy
    bool containment = true;
    std::size_t heavy_arcs = 0;
    std::size_t light_arcs = 0;
    /// atoms of mu lying in some closure(I) minus the interiors of its light arcs
    std::vector<Rational> residual_support;
    /// mass of atoms in no such set (left in unresolved heavy-search arcs)
    Rational unaccounted_mass;

    bool passed() const { return partition && packing && containment; }
};

/// Re-derives the decomposition properties from the forest and mu exactly.
HeavyLightCheck verify_forest(const HeavyLightForest& forest, const SingularMeasure& mu);

}  // namespace innerent
