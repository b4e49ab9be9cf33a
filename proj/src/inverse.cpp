#include "skeletree/inverse.hpp"

#include "skeletree/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace skeletree {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIter = 200;

// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi):
// Newton steps kept inside a shrinking bracket, bisection otherwise. The
// returned point is always the last one passed to f.
template <class F>
double bracketed_newton(F&& f, double lo, double hi, double x, double ftol)
{
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxIter; ++it) {
        const auto [fx, dfx] = f(x);
        if (std::abs(fx) <= ftol) return x;
        if (fx < 0.0) lo = x;
        else hi = x;
        double next = x - fx / dfx;
        if (!(std::isfinite(next) && next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
            return x;
        x = next;
    }
    return x;
}

} // namespace

double node_half_angle_psi(std::span<const double> a)
{
    if (a.size() < 2) throw SolverError("psi needs at least two child half-angles");
    double sum = 0.0;
    for (double x : a) {
        if (!(x > 0.0 && x < kHalfPi)) throw SolverError("child half-angle outside (0, pi/2)");
        sum += x;
    }
    return sum - static_cast<double>(a.size() - 1) * kHalfPi;
}

std::string to_string(Infeasibility r)
{
    switch (r) {
    case Infeasibility::None: return "none";
    case Infeasibility::NoBracket: return "no-bracket";
    case Infeasibility::AngleOutOfRange: return "angle-out-of-range";
    case Infeasibility::EdgeCenterMismatch: return "edge-center-mismatch";
    case Infeasibility::AngleSumMismatch: return "angle-sum-mismatch";
    case Infeasibility::EmbeddingNotClosed: return "embedding-not-closed";
    case Infeasibility::NotConvex: return "not-convex";
    case Infeasibility::ForwardFailure: return "forward-failure";
    case Infeasibility::TreeMismatch: return "tree-mismatch";
    case Infeasibility::CenterMismatch: return "center-mismatch";
    }
    return "unknown";
}

VelocityModel::VelocityModel(const RibbonTree& tree, CenterCandidate center, const ToleranceConfig& cfg)
    : tree_(tree), center_(center), cfg_(cfg)
{
    const std::size_t nn = tree.node_count();
    parent_.assign(nn, -1);
    plen_.assign(nn, 0.0);
    children_.assign(nn, {});
    warm_.assign(nn, {});

    int excluded_edge = -1;
    if (center.is_vertex()) {
        if (center.id < 0 || static_cast<std::size_t>(center.id) >= nn || tree.is_leaf(center.id))
            throw SolverError("vertex center must be an internal node");
        roots_ = {center.id};
    } else {
        if (center.id < 0 || static_cast<std::size_t>(center.id) >= tree.edge_count())
            throw SolverError("edge center out of range");
        const auto& e = tree.edge(center.id);
        if (tree.is_leaf(e.a) || tree.is_leaf(e.b)) throw SolverError("edge center must join two internal nodes");
        roots_ = {e.a, e.b};
        excluded_edge = center.id;
    }

    // Children in walk order: starting after the parent edge, counter-clockwise.
    std::vector<int> stack;
    std::vector<double> depth(nn, 0.0);
    for (int r : roots_) {
        const auto rot = tree.rotation(r);
        std::size_t start = 0;
        if (excluded_edge >= 0)
            start = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), excluded_edge) - rot.begin()) + 1;
        for (std::size_t k = 0; k < rot.size(); ++k) {
            const int e = rot[(start + k) % rot.size()];
            if (e == excluded_edge) continue;
            const int c = tree.edge(e).other(r);
            parent_[static_cast<std::size_t>(c)] = r;
            plen_[static_cast<std::size_t>(c)] = tree.edge(e).length;
            children_[static_cast<std::size_t>(r)].push_back(c);
            stack.push_back(c);
        }
    }
    // Parent edge id per node, to walk children in rotation order.
    std::vector<int> pedge(nn, -1);
    for (int r : roots_)
        for (int e : tree.rotation(r))
            if (e != excluded_edge) pedge[static_cast<std::size_t>(tree.edge(e).other(r))] = e;

    std::vector<int> order = stack;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        const int p = parent_[static_cast<std::size_t>(v)];
        depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(p)] + plen_[static_cast<std::size_t>(v)];
        if (tree.is_leaf(v)) continue;
        const int pe = pedge[static_cast<std::size_t>(v)];
        for (int e = tree.next_edge(v, pe); e != pe; e = tree.next_edge(v, e)) {
            const int c = tree.edge(e).other(v);
            parent_[static_cast<std::size_t>(c)] = v;
            plen_[static_cast<std::size_t>(c)] = tree.edge(e).length;
            pedge[static_cast<std::size_t>(c)] = e;
            children_[static_cast<std::size_t>(v)].push_back(c);
            order.push_back(c);
        }
    }

    // The first root's side bounds the center time.
    time_bound_ = kInf;
    std::vector<int> todo(children_[static_cast<std::size_t>(roots_[0])]);
    while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        if (tree.is_leaf(v)) time_bound_ = std::min(time_bound_, depth[static_cast<std::size_t>(v)]);
        for (int c : children_[static_cast<std::size_t>(v)]) todo.push_back(c);
    }
}

VelocityModel::Eval VelocityModel::psi(int v, double s)
{
    const auto& ch = children_[static_cast<std::size_t>(v)];
    double value = -static_cast<double>(ch.size() - 1) * kHalfPi, deriv = 0.0;
    for (int c : ch) {
        const Eval e = arrive(c, s);
        value += e.value;
        deriv += e.deriv;
    }
    return {value, deriv};
}

VelocityModel::EventSolve VelocityModel::solve_event(int v, double T)
{
    const double l = plen_[static_cast<std::size_t>(v)];
    if (T <= 0.0) return {T, psi(v, T), 1.0};
    // g(s) = s + l*sin(psi(s)) with psi clamped to [0, pi/2] keeps g increasing
    // and lets infeasible targets resolve to psi outside (0, pi/2).
    Eval last{};
    double gd = 1.0, glast = 0.0;
    auto g = [&](double s) -> std::pair<double, double> {
        last = psi(v, s);
        if (!(last.value > 0.0)) gd = 1.0;
        else if (last.value >= kHalfPi) gd = 1.0;
        else gd = 1.0 + l * std::cos(last.value) * last.deriv;
        const double psi_c = std::clamp(last.value, 0.0, kHalfPi);
        glast = s + l * std::sin(psi_c) - T;
        return {glast, gd};
    };
    auto& w = warm_[static_cast<std::size_t>(v)];
    double guess = 0.5 * T;
    if (w.target >= 0.0) guess = w.s + (T - w.target) * w.dsdT;
    const double s = bracketed_newton(g, 0.0, T, guess, 1e-15 * std::max(1.0, T));
    // A bracket that collapses onto a jump of g (a child subtree leaving its
    // domain) is not a root: the event does not exist for this target.
    if (std::abs(glast) > 1e-9 * std::max(1.0, T)) return {s, {kInf, 0.0}, 1.0};
    w = {T, s, 1.0 / gd};
    return {s, last, 1.0 / gd};
}

VelocityModel::Eval VelocityModel::arrive(int v, double T)
{
    const double l = plen_[static_cast<std::size_t>(v)];
    if (tree_.is_leaf(v)) {
        if (T >= l) return {kInf, 0.0};
        const double x = std::max(T, -l) / l;
        return {std::asin(x), 1.0 / std::sqrt((l - T) * (l + T))};
    }
    const EventSolve es = solve_event(v, T);
    return {es.psi.value, es.psi.deriv * es.dsdT};
}

double VelocityModel::arrival_half_angle(int v, double T) { return arrive(v, T).value; }
double VelocityModel::node_psi(int v, double s) { return psi(v, s).value; }
double VelocityModel::event_time(int v, double T) { return solve_event(v, T).s; }

std::pair<double, double> VelocityModel::objective_eval(double T)
{
    const Eval p = psi(roots_[0], T);
    return {center_.is_vertex() ? p.value + kHalfPi : p.value, p.deriv};
}

double VelocityModel::objective(double T) { return objective_eval(T).first; }

Outcome<AngleAssignment> leaf_angles_for_center(const RibbonTree& tree, CenterCandidate center,
                                                const ToleranceConfig& cfg)
{
    using Out = Outcome<AngleAssignment>;
    VelocityModel model(tree, center, cfg);

    const double hi = model.time_bound();
    if (!(hi > 0.0) || !std::isfinite(hi)) return Out::fail(Infeasibility::NoBracket, "no leaf below the center");
    const double f_hi = model.objective(hi);
    if (!(f_hi >= 0.0)) return Out::fail(Infeasibility::NoBracket, "angle sum stays below its target");

    auto obj = [&](double T) { return model.objective_eval(T); };
    const double T = bracketed_newton(obj, 0.0, hi, 0.5 * hi, 1e-15);

    AngleAssignment a;
    a.center = center;
    a.center_time = T;
    const std::size_t nn = tree.node_count();
    a.times.assign(nn, 0.0);
    a.half_angle.assign(nn, 0.0);
    a.nu.assign(nn, kInf);
    a.alpha.assign(tree.leaf_count(), 0.0);

    std::vector<int> order;
    for (int r : model.roots()) {
        a.times[static_cast<std::size_t>(r)] = T;
        order.push_back(r);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        for (int c : model.children(v)) {
            if (!tree.is_leaf(c)) a.times[static_cast<std::size_t>(c)] = model.event_time(c, a.times[static_cast<std::size_t>(v)]);
            order.push_back(c);
        }
    }
    // Bottom-up half-angles from the solved times.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        const auto sv = static_cast<std::size_t>(v);
        if (tree.is_leaf(v)) {
            const double l = model.parent_length(v);
            const double tp = a.times[static_cast<std::size_t>(model.parent(v))];
            a.half_angle[sv] = tp < l ? std::asin(tp / l) : kInf;
            a.alpha[static_cast<std::size_t>(tree.leaf_position(v))] = a.half_angle[sv];
        } else {
            double sum = 0.0;
            for (int c : model.children(v)) sum += a.half_angle[static_cast<std::size_t>(c)];
            a.half_angle[sv] = sum - static_cast<double>(model.children(v).size() - 1) * kHalfPi;
        }
    }
    const auto roots = model.roots();
    for (int r : roots) a.half_angle[static_cast<std::size_t>(r)] = 0.0;

    for (std::size_t v = 0; v < nn; ++v) {
        const bool is_root = std::find(roots.begin(), roots.end(), static_cast<int>(v)) != roots.end();
        if (is_root) continue;
        const double h = a.half_angle[v];
        // psi at an internal node must be strictly positive: psi = 0 would need
        // parallel wavefront edges, which only the center may have.
        if (!(h > cfg.geom_tol && h < kHalfPi))
            return Out::fail(Infeasibility::AngleOutOfRange,
                             "half-angle " + std::to_string(h) + " at node " + std::to_string(v));
        a.nu[v] = 1.0 / std::sin(h);
        const double lhs = a.times[v] + model.parent_length(static_cast<int>(v)) * std::sin(h);
        a.timing_residual = std::max(a.timing_residual, std::abs(lhs - a.times[static_cast<std::size_t>(model.parent(static_cast<int>(v)))]));
    }

    // Closing condition at the center.
    if (center.is_vertex()) {
        const double res = model.objective(T);
        if (std::abs(res) > cfg.geom_tol)
            return Out::fail(Infeasibility::NoBracket, "closing angle residual " + std::to_string(res));
    } else {
        const double p1 = model.node_psi(roots[0], T);
        const double p2 = model.node_psi(roots[1], T);
        if (std::abs(p1) > cfg.geom_tol)
            return Out::fail(Infeasibility::NoBracket, "psi at the first endpoint does not vanish");
        if (std::abs(p2) > cfg.solver_tol)
            return Out::fail(Infeasibility::EdgeCenterMismatch, "psi at the second endpoint is " + std::to_string(p2));
    }

    double sum = 0.0;
    for (double x : a.alpha) sum += x;
    a.angle_sum_residual = std::abs(sum - static_cast<double>(tree.leaf_count() - 2) * kHalfPi);
    if (!(a.angle_sum_residual <= cfg.solver_tol * static_cast<double>(tree.leaf_count())))
        return Out::fail(Infeasibility::AngleSumMismatch, "leaf angle sum off by " + std::to_string(a.angle_sum_residual));
    return {std::move(a), Infeasibility::None, {}};
}

namespace {

// First and last leaf position (in leaf_order) below every node, following
// the children order of the model, which is the cyclic walk order.
void leaf_spans(const VelocityModel& m, int v, std::vector<int>& first, std::vector<int>& last)
{
    const auto sv = static_cast<std::size_t>(v);
    if (m.tree().is_leaf(v)) {
        first[sv] = last[sv] = m.tree().leaf_position(v);
        return;
    }
    for (int c : m.children(v)) leaf_spans(m, c, first, last);
    first[sv] = first[static_cast<std::size_t>(m.children(v).front())];
    last[sv] = last[static_cast<std::size_t>(m.children(v).back())];
}

} // namespace

Outcome<Embedding> embed_configuration(const RibbonTree& tree, const AngleAssignment& a, const ToleranceConfig& cfg)
{
    using Out = Outcome<Embedding>;
    const VelocityModel model(tree, a.center, cfg);
    const std::size_t n = tree.leaf_count();
    const std::size_t nn = tree.node_count();
    if (a.alpha.size() != n) throw SolverError("assignment does not match the tree");

    std::vector<Point2> dir(n), normal(n);
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) theta += kPi - 2.0 * a.alpha[k];
        dir[k] = {std::cos(theta), std::sin(theta)};
        normal[k] = perp(dir[k]);
    }

    std::vector<int> first(nn, -1), last(nn, -1);
    for (int r : model.roots()) leaf_spans(model, r, first, last);
    auto gap_before = [&](int v) { return (static_cast<std::size_t>(first[static_cast<std::size_t>(v)]) + n - 1) % n; };

    std::vector<Point2> pos(nn);
    std::vector<int> order(model.roots().begin(), model.roots().end());
    if (!a.center.is_vertex()) {
        // The center edge is traced instantly between two parallel polygon
        // edges; the gap edge entering the second root's span points from the
        // first root to the second.
        const int v2 = order[1];
        pos[static_cast<std::size_t>(v2)] = tree.edge(a.center.id).length * dir[gap_before(v2)];
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        for (int c : model.children(v)) {
            const Point2 bis = normal[gap_before(c)] + normal[static_cast<std::size_t>(last[static_cast<std::size_t>(c)])];
            if (norm(bis) <= cfg.geom_tol)
                return Out::fail(Infeasibility::EmbeddingNotClosed, "parallel gap edges below the center");
            pos[static_cast<std::size_t>(c)] = pos[static_cast<std::size_t>(v)] - model.parent_length(c) * normalized(bis);
            order.push_back(c);
        }
    }

    std::vector<Point2> pts;
    double extent = 1.0;
    for (int leaf : tree.leaf_order()) {
        pts.push_back(pos[static_cast<std::size_t>(leaf)]);
        extent = std::max({extent, std::abs(pts.back().x), std::abs(pts.back().y)});
    }
    double closure = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 e = pts[(k + 1) % n] - pts[k];
        if (dot(e, dir[k]) <= 0.0)
            return Out::fail(Infeasibility::EmbeddingNotClosed, "polygon edge " + std::to_string(k) + " reversed");
        closure = std::max(closure, std::abs(cross(dir[k], e)));
    }
    if (closure > cfg.verify_tol * extent)
        return Out::fail(Infeasibility::EmbeddingNotClosed, "edge direction error " + std::to_string(closure));

    auto report = validate_polygon(pts, cfg);
    if (!report.ok()) return Out::fail(Infeasibility::NotConvex, report.error);
    if (!report.convex || !report.notices.empty())
        return Out::fail(Infeasibility::NotConvex, "embedded polygon is not convex");
    return {Embedding{std::move(*report.polygon), std::move(pos)}, Infeasibility::None, {}};
}

Outcome<ReconstructionResult> reconstruct_convex(const RibbonTree& tree, CenterCandidate center,
                                                 const ToleranceConfig& cfg)
{
    using Out = Outcome<ReconstructionResult>;
    auto sol = leaf_angles_for_center(tree, center, cfg);
    if (!sol) return Out::fail(sol.reason, sol.detail);
    auto emb = embed_configuration(tree, *sol.value, cfg);
    if (!emb) return Out::fail(emb.reason, emb.detail);

    SkeletonResult sk;
    std::optional<RibbonTree> forward;
    try {
        sk = straight_skeleton(emb.value->polygon, cfg);
        forward = extract_ribbon_tree(sk.graph);
    } catch (const Error& e) {
        return Out::fail(Infeasibility::ForwardFailure, e.what());
    }
    // Polygon vertex k is leaf k of the forward tree and leaf_order[k] here.
    const auto al = align_from(tree, tree.leaf_order()[0], *forward, sk.graph.leaf_map[0]);
    if (!al) return Out::fail(Infeasibility::TreeMismatch, "forward skeleton has a different topology");
    if (al->max_length_diff > cfg.verify_tol)
        return Out::fail(Infeasibility::TreeMismatch, "edge lengths differ by " + std::to_string(al->max_length_diff));

    const auto centers = chronological_centers(sk.graph, sk.events, cfg);
    std::vector<int> expected;
    if (center.is_vertex()) {
        expected = {al->node_map[static_cast<std::size_t>(center.id)]};
    } else {
        const auto& e = tree.edge(center.id);
        expected = {al->node_map[static_cast<std::size_t>(e.a)], al->node_map[static_cast<std::size_t>(e.b)]};
    }
    std::sort(expected.begin(), expected.end());
    if (centers.size() != 1 || centers[0].nodes != expected)
        return Out::fail(Infeasibility::CenterMismatch, "forward chronological center differs from the candidate");

    ReconstructionResult r{center, emb.value->polygon, std::move(emb.value->node_pos), std::move(*sol.value),
                           al->max_length_diff};
    return {std::move(r), Infeasibility::None, {}};
}

std::vector<CenterAttempt> attempt_all_centers(const RibbonTree& tree, const ToleranceConfig& cfg)
{
    std::vector<CenterAttempt> out;
    for (const auto& c : center_candidates(tree)) out.push_back({c, reconstruct_convex(tree, c, cfg)});
    return out;
}

std::vector<ReconstructionResult> distinct_results(std::span<const CenterAttempt> attempts, const ToleranceConfig& cfg)
{
    std::vector<ReconstructionResult> out;
    for (const auto& attempt : attempts) {
        if (!attempt.outcome) continue;
        const auto& r = *attempt.outcome.value;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const ReconstructionResult& o) {
            return congruence_distance(o.polygon, r.polygon) <= cfg.verify_tol;
        });
        if (!dup) out.push_back(r);
    }
    return out;
}

std::vector<ReconstructionResult> invert_all_centers(const RibbonTree& tree, const ToleranceConfig& cfg)
{
    return distinct_results(attempt_all_centers(tree, cfg), cfg);
}

} // namespace skeletree
