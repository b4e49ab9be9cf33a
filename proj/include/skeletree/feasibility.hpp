#pragma once

#include "skeletree/geometry.hpp"
#include "skeletree/inverse.hpp"
#include "skeletree/skeleton.hpp"
#include "skeletree/tree.hpp"

#include <string>
#include <vector>

namespace skeletree {

struct RealizeOptions {
    /// Truncation radius at depth 1; depth d uses base * 8^-(d-1).
    double base_radius = 0.1;
    /// A truncation may use at most this fraction of an adjacent edge.
    double edge_fraction = 0.25;
    int max_rounds = 10;
};

struct Realization {
    Polygon polygon;
    /// Radius scale that passed verification (1, 1/2, 1/4, ...).
    double radius_scale = 1.0;
    int rounds = 1;
};

/// Convex polygon whose skeleton has the topology of `tree` (lengths are
/// ignored). Starts from a regular polygon for the most central internal node
/// and truncates each vertex with chords tangent to a small circle, which
/// makes the new vertices' bisectors meet at the circle's center. Throws
/// GeometryError when no round verifies.
Realization realize_topology(const RibbonTree& tree, const ToleranceConfig& cfg = {}, RealizeOptions opts = {});

/// Cuts an orthogonal polygon perpendicular to an interior skeleton edge at
/// the edge's midpoint and reflects the side of the edge's second endpoint
/// across the edge's line. The skeleton's metric tree is unchanged. Throws
/// GeometryError when a precondition fails.
Polygon mirror_transform(const Polygon& p, const SkeletonGraph& s, int edge, const ToleranceConfig& cfg = {});

struct FeasibilityReport {
    bool feasible = false;
    std::vector<ReconstructionResult> results;
    /// One entry per center candidate, in candidate order.
    std::vector<CenterAttempt> attempts;
    std::string scope;
};

/// Tries every center candidate. An infeasible verdict only excludes convex
/// suitable polygons.
FeasibilityReport infeasibility_report(const RibbonTree& tree, const ToleranceConfig& cfg = {});

} // namespace skeletree
