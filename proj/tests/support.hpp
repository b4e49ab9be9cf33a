#pragma once

#include "skeletree/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace skeletree::testing {

/// SKELETREE_SEED overrides the default seed of every randomized test.
inline std::uint64_t seed(std::uint64_t fallback)
{
    if (const char* s = std::getenv("SKELETREE_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<Point2> convex_hull(std::vector<Point2> p)
{
    std::sort(p.begin(), p.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point2> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 1] - h[k - 2], p[i - 1] - h[k - 2]) <= 0) --k;
        h[k++] = p[i - 1];
    }
    h.resize(k - 1);
    return h;
}

/// Convex polygon with exactly n vertices in general position: hull of
/// points at random angles and radii, redrawn until all n survive and no
/// interior angle is nearly flat.
inline std::vector<Point2> random_convex(Rng& rng, int n)
{
    for (;;) {
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i) {
            const double a = uniform(rng, 0.0, 2.0 * std::numbers::pi), r = uniform(rng, 0.7, 1.0);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        auto h = convex_hull(pts);
        if (static_cast<int>(h.size()) != n) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const Point2 a = h[static_cast<std::size_t>((i + n - 1) % n)], b = h[static_cast<std::size_t>(i)];
            const Point2 c = h[static_cast<std::size_t>((i + 1) % n)];
            const double turn = std::atan2(cross(b - a, c - b), dot(b - a, c - b));
            ok = turn > 0.02 && distance(a, b) > 0.02;
        }
        if (ok) return h;
    }
}

/// Simple polygon, star-shaped around the origin, usually nonconvex.
inline std::vector<Point2> random_star_shaped(Rng& rng, int n)
{
    std::vector<double> ang;
    for (int i = 0; i < n; ++i) ang.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
    std::sort(ang.begin(), ang.end());
    std::vector<Point2> pts;
    for (double a : ang) {
        const double r = uniform(rng, 0.05, 1.05);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return pts;
}

namespace detail {

struct TreeNode {
    double length = 1.0;
    std::vector<TreeNode> kids;
};

inline std::size_t count_leaves(const TreeNode& t)
{
    if (t.kids.empty()) return 1;
    std::size_t n = 0;
    for (const auto& k : t.kids) n += count_leaves(k);
    return n;
}

inline TreeNode* pick_leaf(TreeNode& t, std::size_t& index)
{
    if (t.kids.empty()) return index-- == 0 ? &t : nullptr;
    for (auto& k : t.kids)
        if (auto* hit = pick_leaf(k, index)) return hit;
    return nullptr;
}

inline void write(const TreeNode& t, int& label, std::string& out)
{
    if (t.kids.empty()) {
        out += "L" + std::to_string(label++);
    } else {
        out += "(";
        for (std::size_t i = 0; i < t.kids.size(); ++i) {
            if (i) out += ",";
            write(t.kids[i], label, out);
            out += ":" + std::to_string(t.kids[i].length);
        }
        out += ")";
    }
}

} // namespace detail

/// Random ribbon tree in text form with 3..max_leaves leaves and internal
/// degrees 3 or 4, grown by splitting random leaves.
inline std::string random_tree_text(Rng& rng, int max_leaves)
{
    detail::TreeNode root;
    root.kids.resize(static_cast<std::size_t>(uniform_int(rng, 3, std::min(4, max_leaves))));
    const int target = uniform_int(rng, static_cast<int>(root.kids.size()), max_leaves);
    for (;;) {
        const auto n = static_cast<int>(detail::count_leaves(root));
        const int extra = uniform_int(rng, 2, 3);
        if (n + extra - 1 > target) break;
        auto index = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
        detail::pick_leaf(root, index)->kids.resize(static_cast<std::size_t>(extra));
    }
    std::vector<detail::TreeNode*> stack{&root};
    while (!stack.empty()) {
        auto* t = stack.back();
        stack.pop_back();
        for (auto& k : t->kids) {
            k.length = uniform(rng, 0.2, 2.0);
            stack.push_back(&k);
        }
    }
    std::string out;
    int label = 0;
    detail::write(root, label, out);
    return out + ";";
}

inline std::vector<Point2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }
inline std::vector<Point2> rectangle_2x1() { return {{0, 0}, {2, 0}, {2, 1}, {0, 1}}; }
inline std::vector<Point2> l_shape() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }
/// Equilateral triangle with side sqrt(3), incenter at the origin.
inline std::vector<Point2> equilateral_sqrt3()
{
    std::vector<Point2> p;
    for (int i = 0; i < 3; ++i) {
        const double a = -std::numbers::pi / 2 + 2.0 * std::numbers::pi * i / 3.0;
        p.push_back({std::cos(a), std::sin(a)});
    }
    return p;
}
/// Rectangle with a narrow notch that splits the wavefront into two chambers.
inline std::vector<Point2> two_chambers() { return {{0, 0}, {6, 0}, {6, 2}, {3.2, 2}, {3, 0.6}, {2.8, 2}, {0, 2}}; }
/// Axis-aligned zigzag strip of width 1: east, north, east, north, east.
inline std::vector<Point2> staircase()
{
    return {{0, 0}, {3, 0}, {3, 3}, {8, 3}, {8, 6}, {11, 6}, {11, 7}, {7, 7}, {7, 4}, {2, 4}, {2, 1}, {0, 1}};
}

} // namespace skeletree::testing
