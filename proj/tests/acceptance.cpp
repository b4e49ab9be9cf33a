// Acceptance suite. Usage: acceptance [criterion ...]; no arguments runs all.
// Prints one PASS/FAIL line per criterion and exits nonzero if any failed.

#include "support.hpp"

#include "skeletree/feasibility.hpp"
#include "skeletree/special.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

using namespace skeletree;
namespace st = skeletree::testing;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (ok) return;
        if (pass) detail << "first failure: " << what << "; ";
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RibbonTree tree_of(const Polygon& p) { return extract_ribbon_tree(straight_skeleton(p).graph); }

void round_trip_rigidity(Verdict& v)
{
    st::Rng rng(st::seed(1001));
    const auto t0 = std::chrono::steady_clock::now();
    int congruent = 0, max_results = 0;
    for (int it = 0; it < 200; ++it) {
        const int n = 4 + it % 7;
        const auto p = Polygon::from_points(st::random_convex(rng, n));
        try {
            const auto t = tree_of(p);
            const auto attempts = attempt_all_centers(t);
            std::map<std::string, int> per_center;
            for (const auto& a : attempts)
                if (a.outcome) ++per_center[to_string(a.center)];
            for (const auto& [c, k] : per_center) v.require(k <= 1, "two results for " + c);
            const auto results = distinct_results(attempts);
            max_results = std::max(max_results, static_cast<int>(results.size()));
            v.require(!results.empty(), "no result for polygon " + std::to_string(it));
            v.require(static_cast<int>(results.size()) <= 2 * n - 5, "more than 2n-5 results");
            double best = std::numeric_limits<double>::infinity();
            for (const auto& r : results) best = std::min(best, congruence_distance(r.polygon, p));
            if (best <= 1e-6) ++congruent;
            else v.require(false, "polygon " + std::to_string(it) + " not recovered, distance " + std::to_string(best));
        } catch (const Error& e) {
            v.require(false, std::string("polygon ") + std::to_string(it) + " threw: " + e.what());
        }
    }
    const double secs = seconds_since(t0);
    v.require(secs <= 60.0, "runtime " + std::to_string(secs) + " s");
    v.detail << congruent << "/200 recovered, max results " << max_results << ", " << secs << " s";
}

void closed_form_fixtures(Verdict& v)
{
    const double h = std::sqrt(0.5);
    {
        const auto sq = Polygon::from_points(st::unit_square());
        const auto sk = straight_skeleton(sq);
        const std::vector<double> legs(4, h);
        v.require(tree_distance(extract_ribbon_tree(sk.graph), make_star(legs)) <= 1e-9, "square tree");
        const auto c = chronological_centers(sk.graph, sk.events);
        v.require(c.size() == 1 && std::abs(c[0].time - 0.5) <= 1e-9, "square center time");
        const auto inv = invert_all_centers(make_star(legs));
        v.require(inv.size() == 1 && congruence_distance(inv[0].polygon, sq) <= 1e-9, "square from S4");
        v.require(inv.size() == 1 && std::abs(inv[0].assignment.center_time - 0.5) <= 1e-9, "S4 center time");
    }
    {
        const auto rect = Polygon::from_points(st::rectangle_2x1());
        const auto sk = straight_skeleton(rect);
        const auto t = extract_ribbon_tree(sk.graph);
        std::ostringstream cat;
        cat.precision(17);
        cat << "((A:" << h << ",B:" << h << "):1,C:" << h << ",D:" << h << ");";
        v.require(tree_distance(t, parse_tree(cat.str())) <= 1e-9, "rectangle tree");
        const auto c = chronological_centers(sk.graph, sk.events);
        v.require(c.size() == 1 && c[0].kind == CenterCandidate::Kind::Edge, "rectangle edge center");
        const auto inv = invert_all_centers(parse_tree(cat.str()));
        v.require(inv.size() == 1 && !inv[0].center.is_vertex() && congruence_distance(inv[0].polygon, rect) <= 1e-9,
                  "rectangle from caterpillar");
    }
    {
        const auto tri = Polygon::from_points(st::equilateral_sqrt3());
        const auto s3 = parse_tree("(A:1,B:1,C:1);");
        v.require(tree_distance(tree_of(tri), s3) <= 1e-9, "triangle tree");
        const auto inv = invert_all_centers(s3);
        v.require(inv.size() == 1 && congruence_distance(inv[0].polygon, tri) <= 1e-9, "triangle from S3");
        if (!inv.empty())
            for (double a : inv[0].assignment.alpha) v.require(std::abs(a - kPi / 6) <= 1e-9, "alpha = pi/6");
    }
    v.detail << "square, rectangle, triangle";
}

void triangle_algebra(Verdict& v)
{
    st::Rng rng(st::seed(1003));
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const double a = st::uniform(rng, 0.01, 10), b = st::uniform(rng, 0.01, 10), c = st::uniform(rng, 0.01, 10);
        const auto rep = analyze_triangle_cubic(triangle_cubic(a, b, c));
        v.require(rep.discriminant_nonnegative, "negative discriminant");
        v.require(rep.positive_roots == 1, "positive root count");
        v.require(rep.root_at_most_one, "root above 1");
        const auto s = leaf_angles_for_center(make_star(std::vector<double>{a, b, c}), CenterCandidate::vertex(0));
        v.require(static_cast<bool>(s), "tree solver failed");
        if (s) worst = std::max(worst, std::abs(std::sin(s.value->alpha[0]) - rep.positive_root));
    }
    v.require(worst <= 1e-9, "agreement " + std::to_string(worst));
    const auto eq = analyze_triangle_cubic(triangle_cubic(1, 1, 1));
    v.require(eq.positive_root == 0.5, "equilateral root");
    v.detail << "1000 triples, max |sin(alpha_A) - root| = " << worst;
}

void constructibility(Verdict& v)
{
    const auto r = rational_root_test(PolynomialReal{-36, 0, 49, 12});
    v.require(!r.root, "found a rational root");
    std::set<std::pair<std::int64_t, std::int64_t>> tried, expected;
    for (const auto& c : r.tried) tried.insert({c.num, c.den});
    for (std::int64_t a = 1; a <= 36; ++a)
        for (std::int64_t b = 1; b <= 12; ++b)
            if (36 % a == 0 && 12 % b == 0) {
                expected.insert({a, b});
                expected.insert({-a, b});
            }
    v.require(tried == expected, "candidate set incomplete");
    v.detail << tried.size() << " candidates tried, no rational root";
}

void five_star(Verdict& v)
{
    const auto r = five_star_check();
    v.require(r.relative_residual <= 1e-6, "relative residual " + std::to_string(r.relative_residual));
    char buf[200];
    std::snprintf(buf, sizeof buf, "x = %.17g, |p(x^2)| relative = %.3g (at (x/10)^2: %.3g)", r.x,
                  r.relative_residual, r.rescaled_relative_residual);
    v.detail << buf;
}

void infeasibility(Verdict& v)
{
    std::vector<double> thin;
    for (int i = 0; i < 3; ++i) thin.insert(thin.end(), {0.01, 1.0, 1.0});
    const auto t = make_star(thin);
    const auto rep = infeasibility_report(t);
    v.require(!rep.feasible, "S9 reported feasible");
    v.require(rep.attempts.size() == center_candidates(t).size(), "not every candidate tried");
    st::Rng rng(st::seed(1006));
    int feasible = 0;
    for (int it = 0; it < 200; ++it) {
        const std::vector<double> l{st::uniform(rng, 0.01, 10), st::uniform(rng, 0.01, 10), st::uniform(rng, 0.01, 10)};
        const bool ok = infeasibility_report(make_star(l)).feasible;
        feasible += ok;
        v.require(ok, "S3 infeasible");
    }
    v.detail << "S9 infeasible at " << rep.attempts.size() << " candidate(s); " << feasible << "/200 S3 feasible";
}

void topology_realization(Verdict& v)
{
    st::Rng rng(st::seed(1007));
    int ok = 0;
    double slowest = 0.0;
    for (int it = 0; it < 100; ++it) {
        const auto text = st::random_tree_text(rng, 12);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto t = parse_tree(text);
            const auto r = realize_topology(t);
            const bool match = ribbon_isomorphic(t, tree_of(r.polygon), false, false);
            v.require(match, "topology mismatch for " + text);
            ok += match;
        } catch (const Error& e) {
            v.require(false, text + " threw: " + e.what());
        }
        const double secs = seconds_since(t0);
        slowest = std::max(slowest, secs);
        v.require(secs <= 1.0, "slow tree " + text);
    }
    v.detail << ok << "/100 realized, slowest " << slowest << " s";
}

void non_injectivity(Verdict& v)
{
    const auto p = Polygon::from_points(st::staircase());
    const auto g = straight_skeleton(p).graph;
    int edge = -1;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Point2 m = (g.nodes[static_cast<std::size_t>(g.edges[e].a)].pos + g.nodes[static_cast<std::size_t>(g.edges[e].b)].pos) * 0.5;
        if (distance(m, {5.0, 3.5}) <= 1e-9) edge = static_cast<int>(e);
    }
    v.require(edge >= 0, "no skeleton edge on the middle run");
    if (edge < 0) return;
    const auto q = mirror_transform(p, g, edge);
    const double cong = congruence_distance(p, q);
    const double dist = tree_distance(extract_ribbon_tree(g), tree_of(q));
    v.require(cong > 1e-3, "mirror is congruent");
    v.require(dist <= 1e-6, "trees differ by " + std::to_string(dist));
    v.detail << "congruence distance " << cong << ", tree distance " << dist;
}

void skeleton_validity(Verdict& v)
{
    st::Rng rng(st::seed(1009));
    int done = 0, convex = 0, events = 0;
    double worst_eq = 0.0, worst_medial = 0.0, worst_angle = 0.0;
    while (done < 500) {
        const int n = st::uniform_int(rng, 3, 12);
        auto rep = validate_polygon(done % 5 == 0 ? st::random_convex(rng, n) : st::random_star_shaped(rng, n));
        if (!rep.ok()) continue;
        ++done;
        const auto& p = *rep.polygon;
        try {
            const auto sk = straight_skeleton(p);
            const auto val = validate_skeleton(p, sk.graph);
            v.require(val.is_tree && val.leaves_match, "not a spanning tree");
            worst_eq = std::max(worst_eq, val.equidistance_residual);
            if (p.is_convex()) {
                ++convex;
                v.require(val.medial_axis_checked, "medial axis unchecked");
                worst_medial = std::max(worst_medial, val.medial_axis_residual);
            }
            for (const auto& e : sk.events) {
                worst_angle = std::max(worst_angle, e.angle_sum_residual);
                if (e.kind != EventKind::Shrink || e.merged_half_angle < 0 || e.half_angles.size() < 2) continue;
                ++events;
                double s = 0.0;
                for (double a : e.half_angles) s += a;
                const double psi = s - static_cast<double>(e.half_angles.size() - 1) * kPi / 2;
                worst_angle = std::max(worst_angle, std::abs(psi - e.merged_half_angle));
            }
        } catch (const Error& e) {
            std::ostringstream pts;
            pts.precision(17);
            for (const auto& q : p.vertices()) pts << "(" << q.x << "," << q.y << ")";
            v.require(false, std::string("engine threw: ") + e.what() + " on " + pts.str());
        }
    }
    v.require(worst_eq <= 1e-6, "equidistance " + std::to_string(worst_eq));
    v.require(worst_medial <= 1e-6, "medial axis " + std::to_string(worst_medial));
    v.require(worst_angle <= 1e-6, "angle sum " + std::to_string(worst_angle));
    v.detail << done << " polygons (" << convex << " convex), " << events << " shrink events; worst equidistance "
             << worst_eq << ", medial " << worst_medial << ", angle sum " << worst_angle;
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
        {"round-trip rigidity", round_trip_rigidity},
        {"closed-form fixtures", closed_form_fixtures},
        {"triangle algebra", triangle_algebra},
        {"constructibility demo", constructibility},
        {"five-star polynomial", five_star},
        {"infeasibility", infeasibility},
        {"topology realization", topology_realization},
        {"non-injectivity", non_injectivity},
        {"skeleton validity", skeleton_validity},
    };
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);

    bool all = true;
    for (int k : which) {
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::printf("criterion %d: unknown\n", k);
            all = false;
            continue;
        }
        Verdict v;
        try {
            criteria[static_cast<std::size_t>(k - 1)].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("uncaught: ") + e.what());
        }
        std::printf("criterion %d (%s): %s  %s\n", k, criteria[static_cast<std::size_t>(k - 1)].first,
                    v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
