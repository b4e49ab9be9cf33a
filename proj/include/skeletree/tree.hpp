#pragma once

#include "skeletree/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skeletree {

/// Malformed tree text or a tree violating the ribbon-tree invariants.
class TreeError : public Error {
public:
    using Error::Error;
};

struct TreeEdge {
    int a = -1;
    int b = -1;
    double length = 0.0;

    int other(int v) const { return v == a ? b : a; }
};

/// Unrooted metric tree with a counter-clockwise cyclic order of incident
/// edges at every node. Leaves carry labels; internal nodes have degree >= 3.
class RibbonTree {
public:
    /// rotation[v] lists the edge ids incident to v in counter-clockwise order.
    /// Throws TreeError when the result is not a valid ribbon tree.
    RibbonTree(std::vector<std::string> labels, std::vector<TreeEdge> edges,
               std::vector<std::vector<int>> rotation);

    std::size_t node_count() const { return rotation_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t leaf_count() const { return leaf_order_.size(); }

    const TreeEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    std::span<const TreeEdge> edges() const { return edges_; }
    std::span<const int> rotation(int v) const { return rotation_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(rotation_[static_cast<std::size_t>(v)].size()); }
    bool is_leaf(int v) const { return degree(v) == 1; }
    const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
    /// Edge following e counter-clockwise around v.
    int next_edge(int v, int e) const;

    /// Leaves in the cyclic order met by walking around the tree, starting
    /// from the lowest-numbered leaf.
    std::span<const int> leaf_order() const { return leaf_order_; }
    /// Position of a leaf inside leaf_order(), or -1 for internal nodes.
    int leaf_position(int v) const { return leaf_pos_[static_cast<std::size_t>(v)]; }

    std::vector<int> internal_nodes() const;
    /// Same tree with every cyclic order reversed.
    RibbonTree mirrored() const;

private:
    std::vector<std::string> labels_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<int>> rotation_;
    std::vector<int> leaf_order_;
    std::vector<int> leaf_pos_;
};

/// Parses `(A:1,(B:1,C:1):2,D:1);`. Written child order fixes the cyclic
/// order; the outermost group must be an internal node of degree >= 3.
RibbonTree parse_tree(std::string_view text);

/// Inverse of parse_tree, rooted at the lowest-numbered internal node.
std::string serialize_tree(const RibbonTree& tree);

/// Star S_n with hub 0 and leaf i at distance lengths[i], labelled A, B, ...
RibbonTree make_star(std::span<const double> lengths);

struct CenterCandidate {
    enum class Kind { Vertex, Edge };
    Kind kind = Kind::Vertex;
    /// Node id for Vertex, edge id for Edge.
    int id = -1;

    static CenterCandidate vertex(int node) { return {Kind::Vertex, node}; }
    static CenterCandidate edge(int e) { return {Kind::Edge, e}; }
    bool is_vertex() const { return kind == Kind::Vertex; }
    bool operator==(const CenterCandidate&) const = default;
};

std::string to_string(const CenterCandidate& c);

/// Internal vertices, then edges joining two internal vertices.
std::vector<CenterCandidate> center_candidates(const RibbonTree& tree);

/// Result of walking two trees in lock step from a pair of matched leaves.
struct TreeAlignment {
    /// node_map[a-node] = b-node
    std::vector<int> node_map;
    /// Largest edge-length difference over matched edges.
    double max_length_diff = 0.0;
};

/// Aligns a onto b with leaf_a matched to leaf_b, respecting cyclic orders.
/// Empty when the walks disagree structurally.
std::optional<TreeAlignment> align_from(const RibbonTree& a, int leaf_a, const RibbonTree& b, int leaf_b);

/// Smallest max edge-length difference over all rotation-respecting
/// isomorphisms (and reflections when allowed). Infinity if none exists.
double tree_distance(const RibbonTree& a, const RibbonTree& b, bool allow_reflection = true);

bool ribbon_isomorphic(const RibbonTree& a, const RibbonTree& b, bool allow_reflection = true,
                       bool metric = true, double tol = 1e-6);

} // namespace skeletree
