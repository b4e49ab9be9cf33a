#include "skeletree/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace skeletree {

std::vector<std::vector<int>> SkeletonGraph::incident_edges() const
{
    std::vector<std::vector<int>> inc(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        inc[static_cast<std::size_t>(edges[e].a)].push_back(static_cast<int>(e));
        inc[static_cast<std::size_t>(edges[e].b)].push_back(static_cast<int>(e));
    }
    return inc;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Coincidence radius in units of the scaled geometric tolerance.
constexpr double kMerge = 8.0;

double extent_of(std::span<const Point2> pts)
{
    double e = 1.0;
    for (const auto& p : pts) e = std::max({e, std::abs(p.x), std::abs(p.y)});
    return e;
}

// Moving wavefront vertex: the intersection of the offset lines of polygon
// edges `left` (incoming) and `right` (outgoing).
struct KVertex {
    Point2 origin;
    double t0 = 0.0;
    Point2 vel;
    double speed = 0.0;
    bool degenerate = false;
    int left = -1;
    int right = -1;
    int node = -1;
};

using Loop = std::vector<int>;

class Wavefront {
public:
    Wavefront(const Polygon& p, const ToleranceConfig& cfg) : poly_(p), cfg_(cfg)
    {
        tol_ = cfg.geom_tol * extent_of(p.vertices());
    }

    SkeletonResult run();

private:
    Point2 pos(int k, double t) const
    {
        const auto& v = kv_[static_cast<std::size_t>(k)];
        return v.origin + v.vel * (t - v.t0);
    }
    const KVertex& kv(int k) const { return kv_[static_cast<std::size_t>(k)]; }
    double pair_tol(int a, int b) const { return kMerge * tol_ * (1.0 + kv(a).speed + kv(b).speed); }

    double turn(int k) const
    {
        const Point2 dl = poly_.edge_direction(static_cast<std::size_t>(kv(k).left));
        const Point2 dr = poly_.edge_direction(static_cast<std::size_t>(kv(k).right));
        return cross(dl, dr);
    }
    bool is_reflex(int k) const { return turn(k) < 0.0; }

    double half_angle(int left, int right) const
    {
        const Point2 d1 = poly_.edge_direction(static_cast<std::size_t>(left));
        const Point2 d2 = poly_.edge_direction(static_cast<std::size_t>(right));
        return 0.5 * (kPi - std::atan2(cross(d1, d2), dot(d1, d2)));
    }

    int spawn(int left, int right, int node, double t);
    int node_at(Point2 p, double t, double radius);
    void add_edge(int a, int b, int d0, int d1);
    void end_vertex(int k, int node);

    double next_event(const Loop& loop, double now) const;
    bool resolve(const Loop& loop, double t, std::vector<Loop>& out);
    int merge_run(const std::vector<int>& run, double t);
    void collapse_point(const Loop& loop, double t);
    void collapse_segment(const Loop& loop, double t);
    void split(const Loop& loop, std::size_t i, std::size_t j, double t, std::deque<Loop>& work);
    double angle_residual(const Loop& loop, double t) const;

    const Polygon& poly_;
    ToleranceConfig cfg_;
    double tol_ = 0.0;
    std::vector<KVertex> kv_;
    SkeletonResult res_;
    std::map<std::pair<int, int>, int> edge_index_;
};

int Wavefront::spawn(int left, int right, int node, double t)
{
    KVertex v;
    v.left = left;
    v.right = right;
    v.node = node;
    v.t0 = t;
    const Point2 q = res_.graph.nodes[static_cast<std::size_t>(node)].pos;
    const Point2 n1 = poly_.inward_normal(static_cast<std::size_t>(left));
    const Point2 n2 = poly_.inward_normal(static_cast<std::size_t>(right));
    // Start on the offset lines themselves rather than at the (averaged)
    // node, so rounding does not accumulate from event to event.
    const double c1 = dot(poly_[static_cast<std::size_t>(left)], n1) + t;
    const double c2 = dot(poly_[static_cast<std::size_t>(right)], n2) + t;
    const double det = cross(n1, n2);
    if (std::abs(det) > 1e-6) {
        v.origin = {(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
        if (distance(v.origin, q) > 1e3 * tol_) v.origin = q;
    } else {
        v.origin = q + n1 * (c1 - dot(q, n1));
    }
    const double denom = 1.0 + dot(n1, n2);
    if (denom <= 1e-12) {
        // Antiparallel lines: only legal inside a loop that is about to
        // collapse to a segment.
        v.degenerate = true;
    } else {
        v.vel = (n1 + n2) / denom;
        v.speed = norm(v.vel);
    }
    kv_.push_back(v);
    return static_cast<int>(kv_.size()) - 1;
}

int Wavefront::node_at(Point2 p, double t, double radius)
{
    auto& nodes = res_.graph.nodes;
    for (std::size_t i = poly_.size(); i < nodes.size(); ++i)
        if (nodes[i].time == t && distance(nodes[i].pos, p) <= radius) return static_cast<int>(i);
    nodes.push_back({p, t});
    return static_cast<int>(nodes.size()) - 1;
}

void Wavefront::add_edge(int a, int b, int d0, int d1)
{
    if (a == b) return;
    const auto key = std::minmax(a, b);
    if (edge_index_.count(key)) return;
    edge_index_[key] = static_cast<int>(res_.graph.edges.size());
    res_.graph.edges.push_back({a, b, {d0, d1}});
}

void Wavefront::end_vertex(int k, int node)
{
    const auto& v = kv(k);
    add_edge(v.node, node, v.left, v.right);
}

int Wavefront::merge_run(const std::vector<int>& run, double t)
{
    Point2 c;
    double radius = 0.0;
    for (int k : run) {
        c += pos(k, t);
        radius = std::max(radius, pair_tol(k, k));
    }
    c = c / static_cast<double>(run.size());
    const int node = node_at(c, t, radius);
    EventRecord ev;
    ev.kind = EventKind::Shrink;
    ev.time = t;
    ev.node = node;
    for (int k : run) {
        end_vertex(k, node);
        ev.vertices.push_back(k);
        ev.half_angles.push_back(half_angle(kv(k).left, kv(k).right));
    }
    const int w = spawn(kv(run.front()).left, kv(run.back()).right, node, t);
    ev.location = res_.graph.nodes[static_cast<std::size_t>(node)].pos;
    if (!kv(w).degenerate) ev.merged_half_angle = half_angle(kv(w).left, kv(w).right);
    res_.events.push_back(std::move(ev));
    return w;
}

void Wavefront::collapse_point(const Loop& loop, double t)
{
    Point2 c;
    double radius = 0.0;
    for (int k : loop) {
        c += pos(k, t);
        radius = std::max(radius, pair_tol(k, k));
    }
    c = c / static_cast<double>(loop.size());
    const int node = node_at(c, t, radius);
    EventRecord ev;
    ev.kind = EventKind::Shrink;
    ev.time = t;
    ev.node = node;
    ev.location = res_.graph.nodes[static_cast<std::size_t>(node)].pos;
    for (int k : loop) {
        end_vertex(k, node);
        ev.vertices.push_back(k);
        ev.half_angles.push_back(half_angle(kv(k).left, kv(k).right));
    }
    res_.events.push_back(std::move(ev));
    res_.collapses.push_back({{node}, -1, t});
}

void Wavefront::collapse_segment(const Loop& loop, double t)
{
    std::array<int, 2> ends{};
    for (std::size_t s = 0; s < 2; ++s) {
        const int k = loop[s];
        const auto& node = res_.graph.nodes[static_cast<std::size_t>(kv(k).node)];
        const Point2 p = pos(k, t);
        if (node.time == t && distance(node.pos, p) <= pair_tol(k, k)) {
            ends[s] = kv(k).node;
        } else {
            ends[s] = node_at(p, t, pair_tol(k, k));
            end_vertex(k, ends[s]);
        }
    }
    if (ends[0] == ends[1]) {
        res_.collapses.push_back({{ends[0]}, -1, t});
        return;
    }
    add_edge(ends[0], ends[1], kv(loop[0]).right, kv(loop[1]).right);
    const int e = edge_index_.at(std::minmax(ends[0], ends[1]));
    res_.collapses.push_back({{ends[0], ends[1]}, e, t});
}

void Wavefront::split(const Loop& loop, std::size_t i, std::size_t j, double t, std::deque<Loop>& work)
{
    const std::size_t m = loop.size();
    const int r = loop[i];
    const int hit = kv(loop[j]).right;
    const int node = node_at(pos(r, t), t, pair_tol(r, r));
    end_vertex(r, node);
    const int r1 = spawn(hit, kv(r).right, node, t);
    const int r2 = spawn(kv(r).left, hit, node, t);

    Loop a{r1}, b{r2};
    for (std::size_t k = (i + 1) % m;; k = (k + 1) % m) {
        a.push_back(loop[k]);
        if (k == j) break;
    }
    for (std::size_t k = (j + 1) % m; k != i; k = (k + 1) % m) b.push_back(loop[k]);

    EventRecord ev;
    ev.kind = EventKind::Split;
    ev.time = t;
    ev.node = node;
    ev.location = res_.graph.nodes[static_cast<std::size_t>(node)].pos;
    ev.vertices = {r};
    ev.hit_edge = hit;
    res_.events.push_back(std::move(ev));
    work.push_back(std::move(a));
    work.push_back(std::move(b));
}

double Wavefront::next_event(const Loop& loop, double now) const
{
    const std::size_t m = loop.size();
    if (m <= 2) return now;
    double best = kInf;
    for (std::size_t i = 0; i < m; ++i) {
        const int a = loop[i], b = loop[(i + 1) % m];
        const Point2 d = poly_.edge_direction(static_cast<std::size_t>(kv(a).right));
        const double len = dot(pos(b, now) - pos(a, now), d);
        const double rate = dot(kv(b).vel - kv(a).vel, d);
        if (rate < 0.0) best = std::min(best, now + std::max(len, 0.0) / -rate);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const int r = loop[i];
        if (!is_reflex(r)) continue;
        const Point2 pr = pos(r, now);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i || (j + 1) % m == i) continue;
            const int e = kv(loop[j]).right;
            const Point2 n = poly_.inward_normal(static_cast<std::size_t>(e));
            const double f0 = poly_.signed_line_distance(static_cast<std::size_t>(e), pr) - now;
            const double slope = dot(kv(r).vel, n) - 1.0;
            const double slack = tol_ * (1.0 + kv(r).speed);
            if (slope >= 0.0 || f0 < -slack) continue;
            const double th = now + std::max(f0, 0.0) / -slope;
            if (th >= best) continue;
            const Point2 d = poly_.edge_direction(static_cast<std::size_t>(e));
            const Point2 pa = pos(loop[j], th), pb = pos(loop[(j + 1) % m], th);
            const double s = dot(pos(r, th) - pa, d);
            const double len = dot(pb - pa, d);
            if (len >= -slack && s >= -slack && s <= len + slack) best = th;
        }
    }
    return best;
}

// Repairs one loop at time t: merges coincident neighbours, collapses
// degenerate loops and splits at reflex contacts, until every piece is stable.
bool Wavefront::resolve(const Loop& loop, double t, std::vector<Loop>& out)
{
    bool changed = false;
    std::deque<Loop> work{loop};
    while (!work.empty()) {
        Loop cur = std::move(work.front());
        work.pop_front();
        const std::size_t m = cur.size();

        if (m == 1) {
            collapse_point(cur, t);
            changed = true;
            continue;
        }

        std::vector<char> link(m);
        bool all = true, any = false;
        for (std::size_t i = 0; i < m; ++i) {
            const int a = cur[i], b = cur[(i + 1) % m];
            link[i] = distance(pos(a, t), pos(b, t)) <= pair_tol(a, b);
            all = all && link[i];
            any = any || link[i];
        }
        // Three offset lines bound a triangle, which vanishes all at once.
        const bool triangle = m == 3 && std::all_of(cur.begin(), cur.end(), [&](int k) { return turn(k) > 1e-9; });
        if (all || (any && triangle)) {
            collapse_point(cur, t);
            changed = true;
            continue;
        }
        if (any) {
            std::size_t start = 0;
            while (link[(start + m - 1) % m]) start = (start + 1) % m;
            Loop next;
            std::size_t k = start;
            for (std::size_t done = 0; done < m;) {
                std::vector<int> run{cur[k]};
                while (link[k]) {
                    k = (k + 1) % m;
                    ++done;
                    run.push_back(cur[k]);
                }
                k = (k + 1) % m;
                ++done;
                next.push_back(run.size() == 1 ? run.front() : merge_run(run, t));
            }
            work.push_back(std::move(next));
            changed = true;
            continue;
        }
        if (m == 2) {
            collapse_segment(cur, t);
            changed = true;
            continue;
        }

        bool did_split = false;
        for (std::size_t i = 0; i < m && !did_split; ++i) {
            const int r = cur[i];
            // Flat and antiparallel vertices can pinch a zero-area loop too.
            if (turn(r) > 1e-9) continue;
            const Point2 pr = pos(r, t);
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t j1 = (j + 1) % m;
                if (j == i || j1 == i) continue;
                const Point2 a = pos(cur[j], t), b = pos(cur[j1], t);
                const Point2 ab = b - a;
                const double len2 = dot(ab, ab);
                const double s = len2 > 0.0 ? dot(pr - a, ab) / len2 : 0.0;
                bool touch = false;
                if (s <= 0.0) {
                    touch = j != (i + 1) % m && distance(pr, a) <= pair_tol(r, cur[j]);
                } else if (s >= 1.0) {
                    touch = j1 != (i + m - 1) % m && distance(pr, b) <= pair_tol(r, cur[j1]);
                } else {
                    // The edge's supporting line is exact; only r carries drift.
                    touch = distance(pr, a + ab * s) <= pair_tol(r, r);
                }
                if (touch) {
                    split(cur, i, j, t, work);
                    did_split = true;
                    changed = true;
                    break;
                }
            }
        }
        if (did_split) continue;

        for (int k : cur)
            if (kv(k).degenerate)
                throw SkeletonError("wavefront vertex between antiparallel edges at t=" + std::to_string(t));
        out.push_back(std::move(cur));
    }
    return changed;
}

double Wavefront::angle_residual(const Loop& loop, double t) const
{
    const std::size_t m = loop.size();
    auto direction = [&](std::size_t i) {
        const int a = loop[i], b = loop[(i + 1) % m];
        const Point2 v = pos(b, t) - pos(a, t);
        if (norm(v) > 100.0 * pair_tol(a, b)) return normalized(v);
        return poly_.edge_direction(static_cast<std::size_t>(kv(a).right));
    };
    double interior = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point2 din = direction((i + m - 1) % m), dout = direction(i);
        interior += kPi - std::atan2(cross(din, dout), dot(din, dout));
    }
    return std::abs(interior - static_cast<double>(m - 2) * kPi);
}

SkeletonResult Wavefront::run()
{
    const std::size_t n = poly_.size();
    Loop initial;
    for (std::size_t i = 0; i < n; ++i) {
        res_.graph.nodes.push_back({poly_[i], 0.0});
        res_.graph.leaf_map.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        initial.push_back(spawn(static_cast<int>((i + n - 1) % n), static_cast<int>(i), static_cast<int>(i), 0.0));

    std::vector<Loop> loops{initial};
    double now = 0.0;
    // Every batch removes at least one vertex or edge from the wavefront.
    const std::size_t max_batches = 8 * n * n + 16;
    for (std::size_t batch = 0; !loops.empty(); ++batch) {
        if (batch > max_batches) throw SkeletonError("event processing did not terminate");
        double t = kInf;
        for (const auto& l : loops) t = std::min(t, next_event(l, now));
        if (!std::isfinite(t)) throw SkeletonError("wavefront has no further events but has not vanished");
        t = std::max(t, now);

        const std::size_t first_event = res_.events.size();
        std::vector<Loop> next;
        bool changed = false;
        for (const auto& l : loops) changed = resolve(l, t, next) || changed;
        if (!changed)
            throw SkeletonError("events predicted at t=" + std::to_string(t) +
                                " could not be resolved within the geometric tolerance");

        double worst = 0.0;
        for (const auto& l : next) worst = std::max(worst, angle_residual(l, t));
        for (std::size_t e = first_event; e < res_.events.size(); ++e) res_.events[e].angle_sum_residual = worst;
        loops = std::move(next);
        now = t;
    }
    return std::move(res_);
}

} // namespace

SkeletonResult straight_skeleton(const Polygon& polygon, const ToleranceConfig& cfg)
{
    cfg.validate();
    return Wavefront(polygon, cfg).run();
}

RibbonTree extract_ribbon_tree(const SkeletonGraph& s)
{
    const auto inc = s.incident_edges();
    const std::size_t nn = s.nodes.size();
    std::vector<std::string> labels(nn);
    std::vector<char> is_polygon_vertex(nn, 0);
    for (std::size_t i = 0; i < s.leaf_map.size(); ++i) {
        const auto v = static_cast<std::size_t>(s.leaf_map[i]);
        labels[v] = "v" + std::to_string(i);
        is_polygon_vertex[v] = 1;
    }
    std::vector<TreeEdge> edges;
    for (std::size_t e = 0; e < s.edges.size(); ++e)
        edges.push_back({s.edges[e].a, s.edges[e].b, s.edge_length(static_cast<int>(e))});

    std::vector<std::vector<int>> rotation(nn);
    for (std::size_t v = 0; v < nn; ++v) {
        if (inc[v].size() == 2)
            throw SkeletonError("degenerate skeleton: node " + std::to_string(v) + " has degree 2");
        if (inc[v].size() == 1 && !is_polygon_vertex[v])
            throw SkeletonError("skeleton leaf " + std::to_string(v) + " is not a polygon vertex");
        std::vector<std::pair<double, int>> by_angle;
        for (int e : inc[v]) {
            const int w = edges[static_cast<std::size_t>(e)].other(static_cast<int>(v));
            const Point2 d = s.nodes[static_cast<std::size_t>(w)].pos - s.nodes[v].pos;
            by_angle.emplace_back(std::atan2(d.y, d.x), e);
        }
        std::sort(by_angle.begin(), by_angle.end());
        for (const auto& [angle, e] : by_angle) rotation[v].push_back(e);
    }
    try {
        return RibbonTree(std::move(labels), std::move(edges), std::move(rotation));
    } catch (const TreeError& err) {
        throw SkeletonError(std::string("skeleton is not a ribbon tree: ") + err.what());
    }
}

std::vector<ChronologicalCenter> chronological_centers(const SkeletonGraph& s, const std::vector<EventRecord>&,
                                                       const ToleranceConfig& cfg)
{
    std::vector<Point2> pts;
    for (const auto& nd : s.nodes) pts.push_back(nd.pos);
    const double tol = cfg.geom_tol * extent_of(pts);
    const auto inc = s.incident_edges();
    const std::size_t nn = s.nodes.size();

    // Group nodes joined by equal-time edges; a group is a sink when no
    // member has a strictly later neighbour.
    std::vector<int> group(nn, -1);
    std::vector<char> later;
    for (std::size_t v0 = 0; v0 < nn; ++v0) {
        if (group[v0] >= 0) continue;
        const int g = static_cast<int>(later.size());
        later.push_back(inc[v0].empty());
        std::vector<int> stack{static_cast<int>(v0)};
        group[v0] = g;
        while (!stack.empty()) {
            const auto v = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            for (int e : inc[v]) {
                const auto& ed = s.edges[static_cast<std::size_t>(e)];
                const auto w = static_cast<std::size_t>(ed.a == static_cast<int>(v) ? ed.b : ed.a);
                const double dt = s.nodes[w].time - s.nodes[v].time;
                if (dt > tol) later[static_cast<std::size_t>(g)] = 1;
                if (std::abs(dt) <= tol && group[w] < 0) {
                    group[w] = g;
                    stack.push_back(static_cast<int>(w));
                }
            }
        }
    }
    std::vector<char> sink(nn, 0);
    for (std::size_t v = 0; v < nn; ++v) sink[v] = !later[static_cast<std::size_t>(group[v])];

    std::vector<ChronologicalCenter> out;
    std::vector<char> seen(nn, 0);
    for (std::size_t v0 = 0; v0 < nn; ++v0) {
        if (!sink[v0] || seen[v0]) continue;
        ChronologicalCenter c;
        std::vector<int> stack{static_cast<int>(v0)};
        seen[v0] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            c.nodes.push_back(v);
            for (int e : inc[static_cast<std::size_t>(v)]) {
                const auto& ed = s.edges[static_cast<std::size_t>(e)];
                const int w = ed.a == v ? ed.b : ed.a;
                if (!sink[static_cast<std::size_t>(w)]) continue;
                if (std::find(c.edges.begin(), c.edges.end(), e) == c.edges.end()) c.edges.push_back(e);
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(c.nodes.begin(), c.nodes.end());
        std::sort(c.edges.begin(), c.edges.end());
        c.kind = c.nodes.size() == 1 ? CenterCandidate::Kind::Vertex : CenterCandidate::Kind::Edge;
        for (int v : c.nodes) {
            c.location += s.nodes[static_cast<std::size_t>(v)].pos;
            c.time = std::max(c.time, s.nodes[static_cast<std::size_t>(v)].time);
        }
        c.location = c.location / static_cast<double>(c.nodes.size());
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.time > b.time; });
    return out;
}

SkeletonValidation validate_skeleton(const Polygon& p, const SkeletonGraph& s, const ToleranceConfig& cfg)
{
    SkeletonValidation r;
    const std::size_t nn = s.nodes.size();
    const auto inc = s.incident_edges();
    const double tol = cfg.geom_tol * extent_of(p.vertices());

    auto valid_node = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < nn; };
    bool ids_ok = true;
    for (const auto& e : s.edges) ids_ok = ids_ok && valid_node(e.a) && valid_node(e.b) && e.a != e.b;
    if (!ids_ok) {
        r.problems.push_back("edge references an unknown node");
        return r;
    }

    // Tree: |E| = |V| - 1 and connected.
    if (nn > 0 && s.edges.size() + 1 == nn) {
        std::vector<char> seen(nn, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int e : inc[static_cast<std::size_t>(v)]) {
                const auto& ed = s.edges[static_cast<std::size_t>(e)];
                const int w = ed.a == v ? ed.b : ed.a;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        r.is_tree = count == nn;
    }
    if (!r.is_tree) r.problems.push_back("skeleton is not a spanning tree");

    r.leaves_match = s.leaf_map.size() == p.size();
    std::vector<char> is_leaf(nn, 0);
    for (std::size_t i = 0; r.leaves_match && i < p.size(); ++i) {
        const int v = s.leaf_map[i];
        if (!valid_node(v) || is_leaf[static_cast<std::size_t>(v)]) {
            r.leaves_match = false;
            break;
        }
        const auto& nd = s.nodes[static_cast<std::size_t>(v)];
        is_leaf[static_cast<std::size_t>(v)] = 1;
        r.leaves_match = distance(nd.pos, p[i]) <= tol && std::abs(nd.time) <= tol &&
                         inc[static_cast<std::size_t>(v)].size() == 1;
    }
    for (std::size_t v = 0; r.leaves_match && v < nn; ++v)
        if (inc[v].size() == 1 && !is_leaf[v]) r.leaves_match = false;
    if (!r.leaves_match) r.problems.push_back("leaves do not match the polygon vertices");

    for (const auto& e : s.edges) {
        for (int v : {e.a, e.b}) {
            const auto& nd = s.nodes[static_cast<std::size_t>(v)];
            for (int d : e.defs) {
                if (d < 0 || static_cast<std::size_t>(d) >= p.size()) {
                    r.equidistance_residual = kInf;
                    continue;
                }
                const double res = std::abs(p.signed_line_distance(static_cast<std::size_t>(d), nd.pos) - nd.time);
                r.equidistance_residual = std::max(r.equidistance_residual, res);
            }
        }
    }

    if (p.is_convex()) {
        r.medial_axis_checked = true;
        for (const auto& nd : s.nodes) {
            double nearest = kInf;
            for (std::size_t e = 0; e < p.size(); ++e) nearest = std::min(nearest, p.signed_line_distance(e, nd.pos));
            r.medial_axis_residual = std::max(r.medial_axis_residual, std::abs(nearest - nd.time));
        }
    }

    // Equal-time edges are legal (simultaneous collapses), so only the
    // leaf-to-interior direction is strict.
    r.times_monotone = true;
    for (std::size_t v = 0; v < nn; ++v) {
        const double t = s.nodes[v].time;
        if (inc[v].size() == 1 ? std::abs(t) > tol : t <= tol) r.times_monotone = false;
    }
    if (!r.times_monotone) r.problems.push_back("node times are not monotone along skeleton edges");
    return r;
}

} // namespace skeletree
