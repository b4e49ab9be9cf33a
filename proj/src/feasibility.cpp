#include "skeletree/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace skeletree {

namespace {

constexpr double kPi = std::numbers::pi;

// Internal node with the smallest eccentricity (hop count), lowest id on ties.
int central_node(const RibbonTree& t)
{
    int best = -1;
    std::size_t best_ecc = std::numeric_limits<std::size_t>::max();
    for (int v : t.internal_nodes()) {
        std::vector<std::size_t> dist(t.node_count(), std::numeric_limits<std::size_t>::max());
        std::vector<int> queue{v};
        dist[static_cast<std::size_t>(v)] = 0;
        std::size_t ecc = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const int u = queue[i];
            ecc = std::max(ecc, dist[static_cast<std::size_t>(u)]);
            for (int e : t.rotation(u)) {
                const int w = t.edge(e).other(u);
                if (dist[static_cast<std::size_t>(w)] != std::numeric_limits<std::size_t>::max()) continue;
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
        if (ecc < best_ecc) {
            best_ecc = ecc;
            best = v;
        }
    }
    return best;
}

// Polygon vertex that will become the skeleton leaf or internal node `node`,
// entered from the tree along `parent_edge`.
struct Slot {
    Point2 p;
    int node;
    int parent_edge;
    int depth;
};

std::vector<Point2> build(const RibbonTree& t, int root, double scale, const RealizeOptions& opts)
{
    const auto rot = t.rotation(root);
    const std::size_t k = rot.size();
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < k; ++i) {
        const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(k);
        slots.push_back({{std::cos(a), std::sin(a)}, t.edge(rot[i]).other(root), rot[i], 1});
    }

    for (int depth = 1;; ++depth) {
        bool any = false;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const Slot s = slots[i];
            if (s.depth != depth || t.is_leaf(s.node)) continue;
            any = true;
            const std::size_t n = slots.size();
            const Point2 prev = slots[(i + n - 1) % n].p, next = slots[(i + 1) % n].p;
            const Point2 din = normalized(s.p - prev), dout = normalized(next - s.p);
            const double turn = std::atan2(cross(din, dout), dot(din, dout));
            const double beta = 0.5 * (kPi - turn);
            const double cap = opts.edge_fraction * std::min(distance(s.p, prev), distance(s.p, next)) * std::tan(beta);
            const double rho = std::min(opts.base_radius * scale * std::pow(8.0, -(depth - 1)), cap);
            const Point2 c = s.p + normalized(perp(din) + perp(dout)) * (rho / std::sin(beta));

            std::vector<int> kids;
            for (int e = t.next_edge(s.node, s.parent_edge); e != s.parent_edge; e = t.next_edge(s.node, e))
                kids.push_back(e);
            const std::size_t m = kids.size();
            // Outward normals of the incoming edge, the m-1 chords and the
            // outgoing edge, evenly spread over the exterior turn.
            const Point2 u0 = -perp(din);
            const double phi0 = std::atan2(u0.y, u0.x);
            std::vector<Slot> repl;
            for (std::size_t j = 0; j < m; ++j) {
                const double a1 = phi0 + turn * static_cast<double>(j) / static_cast<double>(m);
                const double a2 = phi0 + turn * static_cast<double>(j + 1) / static_cast<double>(m);
                const Point2 ua{std::cos(a1), std::sin(a1)}, ub{std::cos(a2), std::sin(a2)};
                const Point2 w = c + (ua + ub) * (rho / (1.0 + dot(ua, ub)));
                repl.push_back({w, t.edge(kids[j]).other(s.node), kids[j], depth + 1});
            }
            slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(i));
            slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
            i += m - 1;
        }
        if (!any) break;
    }
    std::vector<Point2> pts;
    for (const auto& s : slots) pts.push_back(s.p);
    return pts;
}

} // namespace

Realization realize_topology(const RibbonTree& tree, const ToleranceConfig& cfg, RealizeOptions opts)
{
    const int root = central_node(tree);
    std::string last_error = "no attempt";
    double scale = 1.0;
    for (int round = 1; round <= opts.max_rounds; ++round, scale *= 0.5) {
        auto report = validate_polygon(build(tree, root, scale, opts), cfg);
        if (!report.ok()) {
            last_error = report.error;
            continue;
        }
        try {
            const auto sk = straight_skeleton(*report.polygon, cfg);
            const auto got = extract_ribbon_tree(sk.graph);
            if (ribbon_isomorphic(tree, got, false, false)) return {std::move(*report.polygon), scale, round};
            last_error = "skeleton topology differs from the tree";
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    throw GeometryError("could not realize the tree topology: " + last_error);
}

Polygon mirror_transform(const Polygon& p, const SkeletonGraph& s, int edge, const ToleranceConfig& cfg)
{
    const std::size_t n = p.size();
    const Point2 d0 = p.edge_direction(0);
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 dk = p.edge_direction(k);
        if (std::min(std::abs(cross(dk, d0)), std::abs(dot(dk, d0))) > cfg.geom_tol)
            throw GeometryError("polygon is not orthogonal (edge " + std::to_string(k) + ")");
    }
    if (edge < 0 || static_cast<std::size_t>(edge) >= s.edges.size()) throw GeometryError("skeleton edge out of range");
    const auto inc = s.incident_edges();
    const auto& se = s.edges[static_cast<std::size_t>(edge)];
    if (inc[static_cast<std::size_t>(se.a)].size() < 3 || inc[static_cast<std::size_t>(se.b)].size() < 3)
        throw GeometryError("skeleton edge must join two internal nodes");
    const Point2 pa = s.nodes[static_cast<std::size_t>(se.a)].pos, pb = s.nodes[static_cast<std::size_t>(se.b)].pos;
    double extent = 1.0;
    for (const auto& v : p.vertices()) extent = std::max({extent, std::abs(v.x), std::abs(v.y)});
    const double tol = cfg.geom_tol * extent;
    if (distance(pa, pb) <= tol) throw GeometryError("skeleton edge has zero length");
    const Point2 de = normalized(pb - pa);
    if (std::min(std::abs(cross(de, d0)), std::abs(dot(de, d0))) > cfg.geom_tol)
        throw GeometryError("skeleton edge is not perpendicular to the cut through polygon edges");

    const Point2 mid = (pa + pb) * 0.5;
    const Point2 u = perp(de);
    struct Hit {
        double s;
        std::size_t edge;
    };
    Hit lo{-std::numeric_limits<double>::infinity(), 0}, hi{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 a = p.edge_start(k), b = p.edge_end(k);
        const Point2 d = b - a;
        const double den = cross(u, d);
        if (std::abs(den) <= tol) continue;
        // mid + s*u = a + r*d
        const double r = cross(u, mid - a) / den;
        const double sv = cross(d, mid - a) / den;
        if (r < -cfg.geom_tol || r > 1.0 + cfg.geom_tol) continue;
        if (sv < 0.0 && sv > lo.s) lo = {sv, k};
        if (sv > 0.0 && sv < hi.s) hi = {sv, k};
    }
    if (!std::isfinite(lo.s) || !std::isfinite(hi.s)) throw GeometryError("cut does not cross the polygon boundary");
    for (const Hit& h : {lo, hi}) {
        const Point2 x = mid + u * h.s;
        if (distance(x, p.edge_start(h.edge)) <= tol || distance(x, p.edge_end(h.edge)) <= tol)
            throw GeometryError("cut passes through a polygon vertex");
        if (std::abs(cross(p.edge_direction(h.edge), de)) > cfg.geom_tol)
            throw GeometryError("cut crosses a polygon edge that is not parallel to the skeleton edge");
    }
    if (std::abs(lo.s + hi.s) > cfg.verify_tol * extent)
        throw GeometryError("cut is not symmetric about the skeleton edge");

    const Point2 x_lo = mid + u * lo.s, x_hi = mid + u * hi.s;
    // Chain A runs from x_lo to x_hi along the boundary, chain B back again.
    std::vector<Point2> chain_a{x_lo}, chain_b{x_hi};
    for (std::size_t k = (lo.edge + 1) % n;; k = (k + 1) % n) {
        chain_a.push_back(p[k]);
        if (k == hi.edge) break;
    }
    chain_a.push_back(x_hi);
    for (std::size_t k = (hi.edge + 1) % n;; k = (k + 1) % n) {
        chain_b.push_back(p[k]);
        if (k == lo.edge) break;
    }
    chain_b.push_back(x_lo);

    const double side_b = dot(pb - mid, de);
    const double side_a_chain = dot(chain_a[1] - mid, de);
    const bool reflect_a = (side_b > 0.0) == (side_a_chain > 0.0);
    const auto& keep = reflect_a ? chain_b : chain_a;
    const auto& other = reflect_a ? chain_a : chain_b;

    auto reflect = [&](Point2 q) { return q - u * (2.0 * dot(q - mid, u)); };
    std::vector<Point2> out(keep.begin(), keep.end());
    // The reflection reverses orientation, so walk the other chain backwards;
    // its end points map onto keep's end points and are skipped.
    for (std::size_t k = other.size() - 2; k >= 1; --k) out.push_back(reflect(other[k]));

    // Drop the glue points where the boundary now runs straight through.
    std::vector<Point2> clean;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Point2 prev = out[(i + out.size() - 1) % out.size()], cur = out[i], next = out[(i + 1) % out.size()];
        if (distance(cur, prev) <= tol) continue;
        if (std::abs(cross(normalized(cur - prev), normalized(next - cur))) <= cfg.geom_tol &&
            dot(cur - prev, next - cur) > 0.0)
            continue;
        clean.push_back(cur);
    }
    return Polygon::from_points(std::move(clean), cfg);
}

FeasibilityReport infeasibility_report(const RibbonTree& tree, const ToleranceConfig& cfg)
{
    FeasibilityReport r;
    r.attempts = attempt_all_centers(tree, cfg);
    r.results = distinct_results(r.attempts, cfg);
    r.feasible = !r.results.empty();
    r.scope = "searched convex suitable polygons over all " + std::to_string(r.attempts.size()) +
              " center candidates; nonconvex polygons are not covered";
    return r;
}

} // namespace skeletree
