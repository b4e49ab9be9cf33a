#include "support.hpp"

#include "skeletree/feasibility.hpp"

#include <doctest.h>

using namespace skeletree;
namespace st = skeletree::testing;

namespace {

int find_edge(const SkeletonGraph& g, Point2 midpoint)
{
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Point2 m = (g.nodes[static_cast<std::size_t>(g.edges[e].a)].pos + g.nodes[static_cast<std::size_t>(g.edges[e].b)].pos) * 0.5;
        if (distance(m, midpoint) <= 1e-9) return static_cast<int>(e);
    }
    return -1;
}

bool realizes(const RibbonTree& t, const Polygon& p)
{
    return ribbon_isomorphic(t, extract_ribbon_tree(straight_skeleton(p).graph), false, false);
}

} // namespace

TEST_SUITE("feasibility") {

TEST_CASE("S3 topology is a triangle")
{
    const auto t = parse_tree("(A:1,B:5,C:2);");
    const auto r = realize_topology(t);
    CHECK(r.polygon.size() == 3);
    CHECK(r.rounds == 1);
    CHECK(realizes(t, r.polygon));
}

TEST_CASE("4-leaf caterpillar gives a quadrilateral with one internal skeleton edge")
{
    const auto t = parse_tree("((A:1,B:1):1,C:1,D:1);");
    const auto r = realize_topology(t);
    CHECK(r.polygon.size() == 4);
    CHECK(r.polygon.is_convex());
    const auto g = straight_skeleton(r.polygon).graph;
    const auto inc = g.incident_edges();
    int internal_edges = 0;
    for (const auto& e : g.edges)
        internal_edges += inc[static_cast<std::size_t>(e.a)].size() > 1 && inc[static_cast<std::size_t>(e.b)].size() > 1;
    CHECK(internal_edges == 1);
    CHECK(realizes(t, r.polygon));
}

TEST_CASE("depth-two tree gives a doubly truncated hexagon")
{
    const auto t = parse_tree("((A:1,B:1):1,(C:1,D:1):1,(E:1,F:1):1);");
    const auto r = realize_topology(t);
    CHECK(r.polygon.size() == 6);
    CHECK(r.polygon.is_convex());
    CHECK(realizes(t, r.polygon));
}

TEST_CASE("random topologies are realized")
{
    st::Rng rng(st::seed(61));
    for (int it = 0; it < 30; ++it) {
        const auto t = parse_tree(st::random_tree_text(rng, 12));
        const auto r = realize_topology(t);
        CHECK(r.polygon.is_convex());
        CHECK(r.polygon.size() == t.leaf_count());
        CHECK(realizes(t, r.polygon));
    }
}

TEST_CASE("mirror of the rectangle is congruent")
{
    const auto p = Polygon::from_points(st::rectangle_2x1());
    const auto g = straight_skeleton(p).graph;
    const int e = find_edge(g, {1.0, 0.5});
    REQUIRE(e >= 0);
    const auto q = mirror_transform(p, g, e);
    CHECK(congruence_distance(p, q) <= 1e-9);
}

TEST_CASE("mirror of the staircase changes the polygon but not the tree")
{
    const auto p = Polygon::from_points(st::staircase());
    const auto g = straight_skeleton(p).graph;
    const int e = find_edge(g, {5.0, 3.5});
    REQUIRE(e >= 0);
    const auto q = mirror_transform(p, g, e);
    CHECK(congruence_distance(p, q) > 1e-3);
    CHECK(q.area() == doctest::Approx(p.area()));
    CHECK(q.perimeter() == doctest::Approx(p.perimeter()));
    const auto tq = extract_ribbon_tree(straight_skeleton(q).graph);
    CHECK(tree_distance(extract_ribbon_tree(g), tq) <= 1e-6);
}

TEST_CASE("mirror preconditions")
{
    // Orthogonal L with unequal arms: one internal skeleton edge is diagonal.
    const auto p = Polygon::from_points({{0, 0}, {4, 0}, {4, 1}, {2, 1}, {2, 4}, {0, 4}});
    const auto g = straight_skeleton(p).graph;
    const auto inc = g.incident_edges();
    int diagonal = -1, leaf_edge = -1;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        const Point2 d = g.nodes[static_cast<std::size_t>(ed.b)].pos - g.nodes[static_cast<std::size_t>(ed.a)].pos;
        const bool internal = inc[static_cast<std::size_t>(ed.a)].size() > 1 && inc[static_cast<std::size_t>(ed.b)].size() > 1;
        if (internal && std::abs(d.x) > 1e-6 && std::abs(d.y) > 1e-6) diagonal = static_cast<int>(e);
        if (!internal) leaf_edge = static_cast<int>(e);
    }
    REQUIRE(diagonal >= 0);
    CHECK_THROWS_AS(mirror_transform(p, g, diagonal), GeometryError);
    CHECK_THROWS_AS(mirror_transform(p, g, leaf_edge), GeometryError);
    CHECK_THROWS_AS(mirror_transform(p, g, 999), GeometryError);

    const auto skew = Polygon::from_points({{0, 0}, {3, 0}, {3, 1}, {0, 1.2}});
    CHECK_THROWS_AS(mirror_transform(skew, straight_skeleton(skew).graph, 0), GeometryError);
}

TEST_CASE("infeasibility certificates")
{
    std::vector<double> thin;
    for (int i = 0; i < 3; ++i) thin.insert(thin.end(), {0.01, 1.0, 1.0});
    const auto t9 = make_star(thin);
    const auto r9 = infeasibility_report(t9);
    CHECK_FALSE(r9.feasible);
    CHECK(r9.attempts.size() == center_candidates(t9).size());
    for (const auto& a : r9.attempts) CHECK(a.outcome.reason != Infeasibility::None);
    CHECK(r9.scope.find("convex") != std::string::npos);

    CHECK(infeasibility_report(make_star(std::vector<double>{1, 1, 1, 1})).feasible);

    st::Rng rng(st::seed(62));
    for (int it = 0; it < 50; ++it) {
        const std::vector<double> l{st::uniform(rng, 0.01, 10), st::uniform(rng, 0.01, 10), st::uniform(rng, 0.01, 10)};
        CHECK(infeasibility_report(make_star(l)).feasible);
    }
    for (int it = 0; it < 10; ++it) {
        const auto p = Polygon::from_points(st::random_convex(rng, st::uniform_int(rng, 4, 9)));
        CHECK(infeasibility_report(extract_ribbon_tree(straight_skeleton(p).graph)).feasible);
    }
}

} // TEST_SUITE
