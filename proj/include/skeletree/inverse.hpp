#pragma once

#include "skeletree/geometry.hpp"
#include "skeletree/tree.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skeletree {

/// Out-of-range input to one of the angle/velocity formulas.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Half-angle of the vertex produced when m wavefront vertices with half-angles
/// a_1..a_m meet: sum(a_i) - (m-1)pi/2. Requires m >= 2 and every a_i in (0, pi/2).
double node_half_angle_psi(std::span<const double> child_half_angles);

/// Why a center candidate produced no polygon.
enum class Infeasibility {
    None,
    NoBracket,          ///< the outer equation has no root below the nearest leaf
    AngleOutOfRange,    ///< some half-angle left (0, pi/2)
    EdgeCenterMismatch, ///< psi vanishes at one end of the center edge but not the other
    AngleSumMismatch,
    EmbeddingNotClosed,
    NotConvex,
    ForwardFailure,     ///< the forward engine threw on the candidate polygon
    TreeMismatch,       ///< forward skeleton differs from the input tree
    CenterMismatch,     ///< forward chronological center is elsewhere
};

std::string to_string(Infeasibility r);

template <class T>
struct Outcome {
    std::optional<T> value;
    Infeasibility reason = Infeasibility::None;
    std::string detail;

    explicit operator bool() const { return value.has_value(); }
    static Outcome fail(Infeasibility r, std::string d) { return {std::nullopt, r, std::move(d)}; }
};

/// Tree rooted at a center candidate, with the nested event-time equations.
///
/// arrival_half_angle(v, T) is the half-angle of the wavefront vertex that
/// leaves v along its parent edge and reaches the parent at time T. For a leaf
/// it is asin(T/l); for an internal node it is psi(v, s) where the event time s
/// solves s + l*sin(psi(v, s)) = T. Both are increasing in T.
class VelocityModel {
public:
    VelocityModel(const RibbonTree& tree, CenterCandidate center, const ToleranceConfig& cfg = {});

    const RibbonTree& tree() const { return tree_; }
    CenterCandidate center() const { return center_; }
    /// The one or two nodes whose event time is the center time.
    std::span<const int> roots() const { return roots_; }
    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
    double parent_length(int v) const { return plen_[static_cast<std::size_t>(v)]; }
    std::span<const int> children(int v) const { return children_[static_cast<std::size_t>(v)]; }

    double arrival_half_angle(int v, double T);
    /// Half-angle produced at internal node v when its event happens at time s.
    double node_psi(int v, double s);
    /// Event time of internal node v given its parent's event time T.
    double event_time(int v, double T);

    /// Increasing function whose root is the center time: for a vertex center
    /// the closing angle sum minus (k-2)pi/2, for an edge center psi at the
    /// first endpoint.
    double objective(double T);
    /// Objective and its derivative in T.
    std::pair<double, double> objective_eval(double T);
    /// Exclusive upper bound for the center time (shortest root-to-leaf path).
    double time_bound() const { return time_bound_; }

private:
    struct Eval {
        double value;
        double deriv;
    };
    struct Warm {
        double target = -1.0;
        double s = 0.0;
        double dsdT = 0.0;
    };

    struct EventSolve {
        double s;
        Eval psi;
        double dsdT;
    };

    Eval arrive(int v, double T);
    Eval psi(int v, double s);
    EventSolve solve_event(int v, double T);

    const RibbonTree& tree_;
    CenterCandidate center_;
    ToleranceConfig cfg_;
    std::vector<int> roots_;
    std::vector<int> parent_;
    std::vector<double> plen_;
    std::vector<std::vector<int>> children_;
    std::vector<Warm> warm_;
    double time_bound_ = 0.0;
};

struct AngleAssignment {
    CenterCandidate center;
    double center_time = 0.0;
    /// Half-angle per leaf, indexed by position in tree.leaf_order().
    std::vector<double> alpha;
    /// Per node: leaves alpha, internal nodes psi, center nodes 0.
    std::vector<double> half_angle;
    /// Per node: 1/sin(half_angle); infinite at the center.
    std::vector<double> nu;
    /// Per node event time; leaves 0.
    std::vector<double> times;
    /// max |t(u) + l*sin(a(u)) - t(parent)| over non-root nodes.
    double timing_residual = 0.0;
    /// |sum(alpha) - (n-2)pi/2|
    double angle_sum_residual = 0.0;
};

Outcome<AngleAssignment> leaf_angles_for_center(const RibbonTree& tree, CenterCandidate center,
                                                const ToleranceConfig& cfg = {});

struct Embedding {
    Polygon polygon;
    /// Position of every tree node; polygon vertex k is leaf tree.leaf_order()[k].
    std::vector<Point2> node_pos;
};

/// Lays the tree out from the center at the origin. Polygon edge k (leaf k to
/// leaf k+1) has direction angle theta_k = theta_{k-1} + pi - 2*alpha_k with
/// theta_0 = 0; every skeleton edge follows the bisector of its two gap edges.
Outcome<Embedding> embed_configuration(const RibbonTree& tree, const AngleAssignment& a,
                                       const ToleranceConfig& cfg = {});

struct ReconstructionResult {
    CenterCandidate center;
    Polygon polygon;
    std::vector<Point2> node_pos;
    AngleAssignment assignment;
    /// Metric distance between the input tree and the forward skeleton's tree.
    double residual = 0.0;
};

/// Solve, embed and verify with the forward engine.
Outcome<ReconstructionResult> reconstruct_convex(const RibbonTree& tree, CenterCandidate center,
                                                 const ToleranceConfig& cfg = {});

struct CenterAttempt {
    CenterCandidate center;
    Outcome<ReconstructionResult> outcome;
};

/// reconstruct_convex for every center candidate, in candidate order.
std::vector<CenterAttempt> attempt_all_centers(const RibbonTree& tree, const ToleranceConfig& cfg = {});

/// Accepted results of the attempts, dropping polygons congruent (within
/// verify_tol) to an earlier one.
std::vector<ReconstructionResult> distinct_results(std::span<const CenterAttempt> attempts,
                                                   const ToleranceConfig& cfg = {});

/// Accepted reconstructions over all centers, deduplicated up to congruence.
std::vector<ReconstructionResult> invert_all_centers(const RibbonTree& tree, const ToleranceConfig& cfg = {});

} // namespace skeletree
