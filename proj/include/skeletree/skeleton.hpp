#pragma once

#include "skeletree/geometry.hpp"
#include "skeletree/tree.hpp"

#include <array>
#include <vector>

namespace skeletree {

/// The wavefront simulation could not order or resolve a batch of events.
class SkeletonError : public Error {
public:
    using Error::Error;
};

struct SkeletonNode {
    Point2 pos;
    double time = 0.0;
};

struct SkeletonEdge {
    int a = -1;
    int b = -1;
    /// The two polygon edges whose offset lines trace this skeleton edge.
    std::array<int, 2> defs{-1, -1};
};

/// Embedded straight skeleton. Nodes 0..n-1 are the polygon vertices.
struct SkeletonGraph {
    std::vector<SkeletonNode> nodes;
    std::vector<SkeletonEdge> edges;
    /// leaf_map[i] is the node sitting on polygon vertex i.
    std::vector<int> leaf_map;

    std::vector<std::vector<int>> incident_edges() const;
    double edge_length(int e) const
    {
        const auto& ed = edges[static_cast<std::size_t>(e)];
        return distance(nodes[static_cast<std::size_t>(ed.a)].pos, nodes[static_cast<std::size_t>(ed.b)].pos);
    }
};

enum class EventKind { Shrink, Split };

struct EventRecord {
    EventKind kind = EventKind::Shrink;
    double time = 0.0;
    Point2 location;
    /// Skeleton node created or reused by the event.
    int node = -1;
    /// Kinetic (wavefront) vertex ids consumed by the event.
    std::vector<int> vertices;
    /// For Split events: the polygon edge supporting the wavefront edge that was hit.
    int hit_edge = -1;
    /// Half-angles of the consumed vertices and of the vertex that replaces
    /// them, for Shrink events that produce a single moving vertex.
    std::vector<double> half_angles;
    double merged_half_angle = -1.0;
    /// Largest |sum of interior angles - (V-2)pi| over live wavefront loops
    /// right after the batch containing this event.
    double angle_sum_residual = 0.0;
};

/// Where one wavefront component disappeared: a single node or a segment.
struct Collapse {
    std::vector<int> nodes;
    int edge = -1;
    double time = 0.0;
};

struct SkeletonResult {
    SkeletonGraph graph;
    std::vector<EventRecord> events;
    /// One entry per wavefront component that vanished, in order.
    std::vector<Collapse> collapses;
};

/// Straight skeleton by kinetic wavefront simulation. Events closer than
/// geom_tol in time are resolved as one batch. Throws SkeletonError when a
/// batch cannot be resolved.
SkeletonResult straight_skeleton(const Polygon& polygon, const ToleranceConfig& cfg = {});

/// Ribbon tree of the skeleton: lengths are Euclidean edge lengths, cyclic
/// orders are counter-clockwise, leaf i is labelled "v<i>". Tree node ids are
/// skeleton node ids. Throws SkeletonError on degree-2 nodes.
RibbonTree extract_ribbon_tree(const SkeletonGraph& skeleton);

struct ChronologicalCenter {
    CenterCandidate::Kind kind = CenterCandidate::Kind::Vertex;
    /// Sink nodes of the component (one node, or the nodes of a final segment/path).
    std::vector<int> nodes;
    /// Equal-time skeleton edges joining the sink nodes.
    std::vector<int> edges;
    double time = 0.0;
    Point2 location;
};

/// Sinks of the skeleton directed by increasing time. Nodes joined by
/// equal-time edges form one component, which is a sink when none of its
/// nodes has a later neighbour. Convex polygons give exactly one.
std::vector<ChronologicalCenter> chronological_centers(const SkeletonGraph& skeleton,
                                                       const std::vector<EventRecord>& events,
                                                       const ToleranceConfig& cfg = {});

struct SkeletonValidation {
    /// max over nodes and incident defining edges of |time - line distance|
    double equidistance_residual = 0.0;
    bool is_tree = false;
    bool leaves_match = false;
    /// Convex polygons only: max |time - distance to the nearest edge|.
    double medial_axis_residual = 0.0;
    bool medial_axis_checked = false;
    /// Leaves sit at time 0 and every internal node strictly later.
    bool times_monotone = false;
    std::vector<std::string> problems;

    bool ok(double tol) const
    {
        return is_tree && leaves_match && times_monotone && equidistance_residual <= tol &&
               (!medial_axis_checked || medial_axis_residual <= tol);
    }
};

/// Independent check of a skeleton against its polygon.
SkeletonValidation validate_skeleton(const Polygon& polygon, const SkeletonGraph& skeleton,
                                     const ToleranceConfig& cfg = {});

} // namespace skeletree
