#include "skeletree/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace skeletree {

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json point(Point2 p) { return Json::array({p.x, p.y}); }

double number(const Json& j, const char* what)
{
    if (!j.is_number()) throw IoError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw IoError(std::string("non-finite ") + what);
    return v;
}

int integer(const Json& j, const char* what)
{
    if (!j.is_number_integer()) throw IoError(std::string("expected an integer for ") + what);
    return j.get<int>();
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace

Json polygon_to_json(const Polygon& p)
{
    Json v = Json::array();
    for (const auto& q : p.vertices()) v.push_back(point(q));
    return {{"vertices", v}};
}

Polygon polygon_from_json(const Json& j, const ToleranceConfig& cfg, std::vector<std::string>* warnings)
{
    const Json& v = field(j, "vertices");
    if (!v.is_array()) throw IoError("\"vertices\" must be an array");
    std::vector<Point2> pts;
    for (const auto& q : v) {
        if (!q.is_array() || q.size() != 2) throw IoError("each vertex must be [x, y]");
        pts.push_back({number(q[0], "x"), number(q[1], "y")});
    }
    auto report = validate_polygon(std::move(pts), cfg);
    if (!report.ok()) throw GeometryError(report.error);
    if (warnings) warnings->insert(warnings->end(), report.notices.begin(), report.notices.end());
    return std::move(*report.polygon);
}

Json skeleton_to_json(const SkeletonGraph& s)
{
    Json nodes = Json::array(), edges = Json::array();
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
        nodes.push_back({{"id", i}, {"x", s.nodes[i].pos.x}, {"y", s.nodes[i].pos.y}, {"t", s.nodes[i].time}});
    for (const auto& e : s.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"defs", {e.defs[0], e.defs[1]}}});
    return {{"nodes", nodes}, {"edges", edges}, {"leaf_map", s.leaf_map}};
}

SkeletonGraph skeleton_from_json(const Json& j)
{
    SkeletonGraph s;
    const Json& nodes = field(j, "nodes");
    if (!nodes.is_array()) throw IoError("\"nodes\" must be an array");
    s.nodes.resize(nodes.size());
    std::vector<bool> seen(nodes.size(), false);
    for (const auto& n : nodes) {
        const int id = integer(field(n, "id"), "id");
        if (id < 0 || static_cast<std::size_t>(id) >= nodes.size() || seen[static_cast<std::size_t>(id)])
            throw IoError("bad node id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = true;
        s.nodes[static_cast<std::size_t>(id)] = {{number(field(n, "x"), "x"), number(field(n, "y"), "y")},
                                                 number(field(n, "t"), "t")};
    }
    const auto check = [&](int v) {
        if (v < 0 || static_cast<std::size_t>(v) >= s.nodes.size()) throw IoError("edge endpoint out of range");
        return v;
    };
    for (const auto& e : field(j, "edges")) {
        SkeletonEdge ed;
        ed.a = check(integer(field(e, "a"), "a"));
        ed.b = check(integer(field(e, "b"), "b"));
        const Json& d = field(e, "defs");
        if (!d.is_array() || d.size() != 2) throw IoError("\"defs\" must hold two edge ids");
        ed.defs = {integer(d[0], "defs"), integer(d[1], "defs")};
        s.edges.push_back(ed);
    }
    for (const auto& l : field(j, "leaf_map")) s.leaf_map.push_back(check(integer(l, "leaf_map")));
    return s;
}

Json result_to_json(const RibbonTree& tree, const ReconstructionResult& r)
{
    Json labels = Json::array();
    for (int v : tree.leaf_order()) labels.push_back(tree.label(v));
    return {{"center", to_string(r.center)},
            {"center_time", r.assignment.center_time},
            {"polygon", polygon_to_json(r.polygon)},
            {"residual", r.residual},
            {"alphas", r.assignment.alpha},
            {"leaf_order", labels}};
}

Json results_to_json(const RibbonTree& tree, std::span<const ReconstructionResult> rs)
{
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(result_to_json(tree, r));
    return out;
}

Json feasibility_to_json(const RibbonTree& tree, const FeasibilityReport& r)
{
    Json attempts = Json::array();
    for (const auto& a : r.attempts) {
        Json item{{"center", to_string(a.center)}, {"accepted", static_cast<bool>(a.outcome)}};
        if (!a.outcome) {
            item["reason"] = to_string(a.outcome.reason);
            item["detail"] = a.outcome.detail;
        } else {
            item["residual"] = a.outcome.value->residual;
        }
        attempts.push_back(std::move(item));
    }
    return {{"tree", serialize_tree(tree)},
            {"verdict", r.feasible ? "feasible" : "infeasible"},
            {"scope", r.scope},
            {"attempts", attempts},
            {"results", results_to_json(tree, r.results)}};
}

namespace {

struct Canvas {
    double minx = std::numeric_limits<double>::infinity(), miny = minx;
    double maxx = -minx, maxy = -minx;
    std::ostringstream body;

    void extend(Point2 p)
    {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }

    // SVG's y axis points down, so y is negated throughout.
    std::string finish(double stroke_scale = 0.004)
    {
        const double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
        const double pad = 0.05 * std::max(w, h);
        const double stroke = stroke_scale * std::max(w, h);
        std::ostringstream s;
        s << std::setprecision(10);
        s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << minx - pad << ' ' << -maxy - pad << ' '
          << w + 2 * pad << ' ' << h + 2 * pad << "\">\n";
        s << "<g stroke-width=\"" << stroke << "\" fill=\"none\" stroke-linecap=\"round\">\n";
        s << body.str() << "</g>\n</svg>\n";
        return s.str();
    }

    void path(std::span<const Point2> pts, const char* colour)
    {
        body << std::setprecision(17) << "<path stroke=\"" << colour << "\" d=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) body << (i ? " L " : "M ") << pts[i].x << ' ' << (0.0 - pts[i].y);
        body << " Z\"/>\n";
    }

    void line(Point2 a, Point2 b, const char* colour)
    {
        body << std::setprecision(17) << "<line stroke=\"" << colour << "\" x1=\"" << a.x << "\" y1=\"" << (0.0 - a.y)
             << "\" x2=\"" << b.x << "\" y2=\"" << (0.0 - b.y) << "\"/>\n";
    }
};

} // namespace

std::string skeleton_svg(const Polygon& p, const SkeletonGraph* s)
{
    Canvas c;
    for (const auto& q : p.vertices()) c.extend(q);
    c.path(p.vertices(), "black");
    if (s)
        for (const auto& e : s->edges)
            c.line(s->nodes[static_cast<std::size_t>(e.a)].pos, s->nodes[static_cast<std::size_t>(e.b)].pos, "red");
    return c.finish();
}

std::string reconstruction_svg(const RibbonTree& tree, const ReconstructionResult& r)
{
    Canvas c;
    for (const auto& q : r.polygon.vertices()) c.extend(q);
    c.path(r.polygon.vertices(), "black");
    for (const auto& e : tree.edges())
        c.line(r.node_pos[static_cast<std::size_t>(e.a)], r.node_pos[static_cast<std::size_t>(e.b)], "red");
    return c.finish();
}

} // namespace skeletree
