#include "support.hpp"

#include "skeletree/cli.hpp"
#include "skeletree/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace skeletree;
namespace st = skeletree::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "skeletree");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("skeletree_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_polygon(const std::string& file, const std::vector<Point2>& pts)
{
    Json v = Json::array();
    for (auto p : pts) v.push_back({p.x, p.y});
    write_text_file(file, dump_json({{"vertices", v}}));
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("polygon JSON round trip is exact")
{
    st::Rng rng(st::seed(71));
    const auto p = Polygon::from_points(st::random_convex(rng, 7));
    const auto q = polygon_from_json(parse_json(dump_json(polygon_to_json(p))));
    REQUIRE(q.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
}

TEST_CASE("clockwise polygon file is reversed with a warning")
{
    std::vector<std::string> w;
    const auto p = polygon_from_json(parse_json(R"({"vertices": [[0,0],[0,1],[1,1],[1,0]]})"), {}, &w);
    CHECK(w.size() == 1);
    CHECK(signed_area(p.vertices()) > 0);
}

TEST_CASE("malformed documents")
{
    CHECK_THROWS_AS(parse_json("{"), IoError);
    CHECK_THROWS_AS(polygon_from_json(parse_json("{}")), IoError);
    CHECK_THROWS_AS(polygon_from_json(parse_json(R"({"vertices": [[0,0],[1]]})")), IoError);
    CHECK_THROWS_AS(polygon_from_json(parse_json(R"({"vertices": [[0,0],[1,1],[1,0],[0,1]]})")), GeometryError);
    CHECK_THROWS_AS(skeleton_from_json(parse_json(R"({"nodes": [{"id": 3, "x": 0, "y": 0, "t": 0}], "edges": [], "leaf_map": []})")), IoError);
    CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), IoError);
}

TEST_CASE("skeleton JSON round trip")
{
    const auto sk = straight_skeleton(Polygon::from_points(st::l_shape()));
    const auto back = skeleton_from_json(parse_json(dump_json(skeleton_to_json(sk.graph))));
    REQUIRE(back.nodes.size() == sk.graph.nodes.size());
    REQUIRE(back.edges.size() == sk.graph.edges.size());
    for (std::size_t i = 0; i < back.nodes.size(); ++i) {
        CHECK(back.nodes[i].pos == sk.graph.nodes[i].pos);
        CHECK(back.nodes[i].time == sk.graph.nodes[i].time);
    }
    for (std::size_t e = 0; e < back.edges.size(); ++e) CHECK(back.edges[e].defs == sk.graph.edges[e].defs);
    CHECK(back.leaf_map == sk.graph.leaf_map);
}

TEST_CASE("SVG output")
{
    const auto p = Polygon::from_points(st::unit_square());
    const auto sk = straight_skeleton(p);
    const auto svg = skeleton_svg(p, &sk.graph);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("stroke=\"black\"") != std::string::npos);
    std::size_t red = 0;
    for (std::size_t pos = 0; (pos = svg.find("stroke=\"red\"", pos)) != std::string::npos; ++pos) ++red;
    CHECK(red == sk.graph.edges.size());
}

} // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("skeleton writes JSON and SVG")
{
    TempDir d;
    write_polygon(d / "square.json", st::unit_square());
    const auto r = cli({"skeleton", "--in", d / "square.json", "--out", d / "skel.json", "--svg", d / "fig.svg"});
    CHECK(r.code == 0);
    const auto j = parse_json(read_text_file(d / "skel.json"));
    CHECK(j["nodes"].size() == 5);
    CHECK(j["edges"].size() == 4);
    CHECK(j["centers"].size() == 1);
    CHECK(fs::exists(d / "fig.svg"));
    CHECK_NOTHROW(skeleton_from_json(j));
    CHECK_NOTHROW(parse_tree(j["tree"].get<std::string>()));
}

TEST_CASE("invert on the thin S9 star exits 1 with an empty array")
{
    TempDir d;
    write_text_file(d / "s9_thin.nwk", "(A:0.01,B:1,C:1,D:0.01,E:1,F:1,G:0.01,H:1,I:1);");
    const auto r = cli({"invert", "--tree", d / "s9_thin.nwk", "--out", d / "results.json"});
    CHECK(r.code == 1);
    const auto j = parse_json(read_text_file(d / "results.json"));
    CHECK(j.is_array());
    CHECK(j.empty());
}

TEST_CASE("invert on S4 returns the square")
{
    const auto r = cli({"invert", "--tree", "(A:1,B:1,C:1,D:1);"});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    REQUIRE(j.size() == 1);
    for (const char* k : {"center", "polygon", "residual", "alphas"}) CHECK(j[0].contains(k));
    const auto sq = Polygon::from_points({{0, 0}, {std::sqrt(2.0), 0}, {std::sqrt(2.0), std::sqrt(2.0)}, {0, std::sqrt(2.0)}});
    CHECK(congruence_distance(polygon_from_json(j[0]["polygon"]), sq) <= 1e-9);
}

TEST_CASE("triangle prints the cubic and its positive root")
{
    const auto r = cli({"triangle", "--lengths", "1,2,3"});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["cubic"] == Json::array({-36.0, 0.0, 49.0, 12.0}));
    CHECK(j["positive_root"].get<double>() > 0.78);
    CHECK(j["positive_root"].get<double>() < 0.79);
    CHECK(j["triangle"]["vertices"].size() == 3);
}

TEST_CASE("star-solve, certify, realize, verify, mirror")
{
    TempDir d;
    auto s = cli({"star-solve", "--lengths", "1,1,1,1"});
    CHECK(s.code == 0);
    CHECK(parse_json(s.out)["convex"]["x"].get<double>() == doctest::Approx(std::sqrt(0.5)));

    CHECK(cli({"certify", "--tree", "(A:1,B:1,C:1);"}).code == 0);
    const auto c = cli({"certify", "--tree", "(A:0.01,B:1,C:1,D:0.01,E:1,F:1,G:0.01,H:1,I:1);"});
    CHECK(c.code == 1);
    CHECK(parse_json(c.out)["verdict"] == "infeasible");

    const std::string tree = "((A:1,B:1):1,(C:1,D:1):1,(E:1,F:1):1);";
    CHECK(cli({"realize", "--tree", tree, "--out", d / "real.json"}).code == 0);
    const auto v = cli({"verify", "--in", d / "real.json", "--tree", tree});
    CHECK(parse_json(v.out)["topology_match"] == true);

    write_polygon(d / "rect.json", st::rectangle_2x1());
    const auto sk = parse_json(cli({"skeleton", "--in", d / "rect.json"}).out);
    const auto vr = cli({"verify", "--in", d / "rect.json", "--tree", sk["tree"].get<std::string>()});
    CHECK(vr.code == 0);
    CHECK(parse_json(vr.out)["match"] == true);

    write_polygon(d / "stairs.json", st::staircase());
    const auto g = skeleton_from_json(parse_json(cli({"skeleton", "--in", d / "stairs.json"}).out));
    int edge = -1;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Point2 m = (g.nodes[static_cast<std::size_t>(g.edges[e].a)].pos + g.nodes[static_cast<std::size_t>(g.edges[e].b)].pos) * 0.5;
        if (distance(m, {5.0, 3.5}) <= 1e-9) edge = static_cast<int>(e);
    }
    REQUIRE(edge >= 0);
    const auto m = cli({"mirror", "--in", d / "stairs.json", "--edge", std::to_string(edge), "--out", d / "mirrored.json"});
    CHECK(m.code == 0);
    CHECK(cli({"skeleton", "--in", d / "mirrored.json"}).code == 0);
    CHECK(cli({"mirror", "--in", d / "stairs.json", "--edge", "0"}).code == 2);
}

TEST_CASE("invalid input exits 2")
{
    TempDir d;
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"triangle", "--lengths", "1,x,3"}).code == 2);
    CHECK(cli({"triangle", "--lengths", "1,2"}).code == 2);
    CHECK(cli({"invert", "--tree", "(A:1,B:1);"}).code == 2);
    CHECK(cli({"skeleton", "--in", d / "missing.json"}).code == 2);
    write_text_file(d / "bowtie.json", R"({"vertices": [[0,0],[1,1],[1,0],[0,1]]})");
    const auto r = cli({"skeleton", "--in", d / "bowtie.json"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(cli({"skeleton", "--in", d / "bowtie.json", "--out", d / "bowtie.json"}).code == 2);
    CHECK(cli({"skeleton", "--in", d / "bowtie.json", "--tol", "-1"}).code == 2);
}

TEST_CASE("output is deterministic")
{
    TempDir d;
    st::Rng rng(st::seed(72));
    write_polygon(d / "p.json", st::random_star_shaped(rng, 9));
    const auto a = cli({"skeleton", "--in", d / "p.json"});
    const auto b = cli({"skeleton", "--in", d / "p.json"});
    CHECK(a.out == b.out);
    const auto tree = parse_json(a.out)["tree"].get<std::string>();
    CHECK(cli({"certify", "--tree", tree}).out == cli({"certify", "--tree", tree}).out);
}

TEST_CASE("tolerance flag")
{
    TempDir d;
    write_polygon(d / "sq.json", st::unit_square());
    CHECK(cli({"skeleton", "--in", d / "sq.json", "--tol", "1e-4"}).code == 0);
    CHECK(cli({"skeleton", "--in", d / "sq.json", "--tol", "2"}).code == 2);
}

} // TEST_SUITE
