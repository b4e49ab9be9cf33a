#include "skeletree/cli.hpp"

#include "skeletree/io.hpp"
#include "skeletree/special.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace skeletree {

namespace {

constexpr int kOk = 0;
constexpr int kNoSolution = 1;
constexpr int kInvalid = 2;

struct Options {
    std::string in, out, tree, svg, lengths;
    double tol = 0.0;
    bool all_centers = true;
    int edge = -1;
};

// Malformed command-line values, reported with exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

ToleranceConfig config(const Options& o)
{
    if (o.tol == 0.0) return {};
    auto cfg = ToleranceConfig::from_verify_tol(o.tol);
    cfg.validate();
    return cfg;
}

RibbonTree load_tree(const std::string& arg)
{
    if (arg.empty()) throw UsageError("--tree is required");
    // A literal tree is accepted in place of a file name.
    if (!std::filesystem::exists(arg) && arg.find('(') != std::string::npos) return parse_tree(arg);
    return parse_tree(read_text_file(arg));
}

std::vector<double> parse_lengths(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad length \"" + item + "\"");
        }
        if (used != item.size()) throw UsageError("bad length \"" + item + "\"");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("--lengths is required");
    return out;
}

Polygon load_polygon(const Options& o, const ToleranceConfig& cfg, std::ostream& err)
{
    if (o.in.empty()) throw UsageError("--in is required");
    std::vector<std::string> warnings;
    auto p = polygon_from_json(parse_json(read_text_file(o.in)), cfg, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return p;
}

void emit(const Options& o, const Json& j, std::ostream& out)
{
    if (o.out.empty()) out << dump_json(j);
    else write_text_file(o.out, dump_json(j));
}

int cmd_skeleton(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config(o);
    const auto p = load_polygon(o, cfg, err);
    const auto sk = straight_skeleton(p, cfg);
    Json j = skeleton_to_json(sk.graph);
    j["tree"] = serialize_tree(extract_ribbon_tree(sk.graph));
    Json centers = Json::array();
    for (const auto& c : chronological_centers(sk.graph, sk.events, cfg))
        centers.push_back({{"kind", c.kind == CenterCandidate::Kind::Vertex ? "vertex" : "edge"},
                           {"nodes", c.nodes},
                           {"time", c.time}});
    j["centers"] = centers;
    emit(o, j, out);
    if (!o.svg.empty()) write_text_file(o.svg, skeleton_svg(p, &sk.graph));
    return kOk;
}

int cmd_invert(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config(o);
    const auto tree = load_tree(o.tree);
    std::vector<ReconstructionResult> results;
    if (o.all_centers) {
        results = invert_all_centers(tree, cfg);
    } else {
        for (const auto& c : center_candidates(tree)) {
            auto r = reconstruct_convex(tree, c, cfg);
            if (r) {
                results.push_back(std::move(*r.value));
                break;
            }
        }
    }
    emit(o, results_to_json(tree, results), out);
    if (!o.svg.empty() && !results.empty()) write_text_file(o.svg, reconstruction_svg(tree, results.front()));
    return results.empty() ? kNoSolution : kOk;
}

int cmd_star_solve(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config(o);
    const auto lengths = parse_lengths(o.lengths);
    Json j;
    const auto convex = solve_star_convex(lengths, cfg);
    if (convex)
        j["convex"] = {{"x", convex->x}, {"alphas", convex->alpha}, {"time", convex->time}, {"residual", convex->residual}};
    else
        j["convex"] = nullptr;
    if (lengths.size() <= 12) {
        Json branches = Json::array();
        for (const auto& b : solve_star_all_branches(lengths, cfg)) {
            Json choice = Json::array();
            for (Branch k : b.branch) choice.push_back(k == Branch::Principal ? "principal" : "reflex");
            branches.push_back({{"branch", choice}, {"roots", b.roots}, {"near_boundary", b.near_boundary}});
        }
        j["branches"] = branches;
    }
    emit(o, j, out);
    return convex ? kOk : kNoSolution;
}

int cmd_triangle(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config(o);
    const auto l = parse_lengths(o.lengths);
    if (l.size() != 3) throw UsageError("triangle needs exactly three lengths");
    const auto p = triangle_cubic(l[0], l[1], l[2]);
    const auto rep = analyze_triangle_cubic(p, cfg);
    Json j{{"cubic", p.coefficients()},
           {"roots", rep.cubic.roots},
           {"discriminant", rep.cubic.discriminant},
           {"discriminant_sign", rep.cubic.discriminant_sign},
           {"positive_root", rep.positive_root},
           {"checks_pass", rep.ok()}};
    const auto tree = make_star(l);
    const auto results = invert_all_centers(tree, cfg);
    j["triangle"] = results.empty() ? Json(nullptr) : polygon_to_json(results.front().polygon);
    emit(o, j, out);
    if (!o.svg.empty() && !results.empty()) write_text_file(o.svg, reconstruction_svg(tree, results.front()));
    return rep.ok() && !results.empty() ? kOk : kNoSolution;
}

int cmd_realize(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config(o);
    const auto tree = load_tree(o.tree);
    const auto r = [&] {
        try {
            return realize_topology(tree, cfg);
        } catch (const GeometryError& e) {
            // The tree itself was valid, so this is "no solution" rather than bad input.
            throw SkeletonError(e.what());
        }
    }();
    emit(o, polygon_to_json(r.polygon), out);
    if (!o.svg.empty()) {
        const auto sk = straight_skeleton(r.polygon, cfg);
        write_text_file(o.svg, skeleton_svg(r.polygon, &sk.graph));
    }
    return kOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config(o);
    const auto tree = load_tree(o.tree);
    const auto rep = infeasibility_report(tree, cfg);
    emit(o, feasibility_to_json(tree, rep), out);
    return rep.feasible ? kOk : kNoSolution;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config(o);
    const auto p = load_polygon(o, cfg, err);
    const auto tree = load_tree(o.tree);
    const auto sk = straight_skeleton(p, cfg);
    const auto got = extract_ribbon_tree(sk.graph);
    const double residual = tree_distance(tree, got, false);
    const bool ok = residual <= cfg.verify_tol;
    Json j{{"residual", std::isfinite(residual) ? Json(residual) : Json(nullptr)},
           {"topology_match", ribbon_isomorphic(tree, got, false, false)},
           {"match", ok},
           {"skeleton_tree", serialize_tree(got)}};
    emit(o, j, out);
    return ok ? kOk : kNoSolution;
}

int cmd_mirror(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config(o);
    const auto p = load_polygon(o, cfg, err);
    if (o.edge < 0) throw UsageError("--edge is required");
    const auto sk = straight_skeleton(p, cfg);
    const auto q = mirror_transform(p, sk.graph, o.edge, cfg);
    emit(o, polygon_to_json(q), out);
    if (!o.svg.empty()) {
        const auto sq = straight_skeleton(q, cfg);
        write_text_file(o.svg, skeleton_svg(q, &sq.graph));
    }
    return kOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Straight skeletons of polygons and their inverse from phylogenetic trees"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "Output file (stdout when omitted)");
        s->add_option("--tol", o.tol, "Verification tolerance; geometric and solver tolerances scale with it")
            ->check(CLI::PositiveNumber);
    };
    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const Options&, std::ostream&, std::ostream&);
    };
    const Sub subs[] = {
        {"skeleton", "Straight skeleton of a polygon", cmd_skeleton},
        {"invert", "Convex polygons whose skeleton is the given tree", cmd_invert},
        {"star-solve", "Angle equation of a star tree", cmd_star_solve},
        {"triangle", "Triangle cubic for three leg lengths", cmd_triangle},
        {"realize", "Convex polygon with the topology of a tree", cmd_realize},
        {"certify", "Feasibility report over all center candidates", cmd_certify},
        {"verify", "Compare a polygon's skeleton with a tree", cmd_verify},
        {"mirror", "Reflect part of an orthogonal polygon across a skeleton edge", cmd_mirror},
    };
    std::vector<std::pair<CLI::App*, const Sub*>> registered;
    for (const auto& s : subs) {
        auto* c = app.add_subcommand(s.name, s.help);
        common(c);
        const std::string name = s.name;
        if (name == "skeleton" || name == "verify" || name == "mirror")
            c->add_option("--in", o.in, "Polygon JSON file")->required();
        if (name == "invert" || name == "realize" || name == "certify" || name == "verify")
            c->add_option("--tree", o.tree, "Tree file, or the tree text itself")->required();
        if (name == "star-solve" || name == "triangle")
            c->add_option("--lengths", o.lengths, "Comma separated leg lengths")->required();
        if (name == "skeleton" || name == "invert" || name == "triangle" || name == "realize" || name == "mirror")
            c->add_option("--svg", o.svg, "Also write an SVG drawing");
        if (name == "invert")
            c->add_flag("--all-centers,!--first-center", o.all_centers,
                        "Try every center candidate (default) or stop at the first accepted one");
        if (name == "mirror") c->add_option("--edge", o.edge, "Skeleton edge id")->required();
        registered.emplace_back(c, &s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalid;
    }

    for (const auto& [c, s] : registered) {
        if (!c->parsed()) continue;
        if (!o.in.empty() && o.in == o.out) {
            err << "error: input and output paths must differ\n";
            return kInvalid;
        }
        try {
            return s->fn(o, out, err);
        } catch (const SkeletonError& e) {
            err << "error: " << e.what() << "\n";
            return kNoSolution;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kInvalid;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInvalid;
        }
    }
    return kInvalid;
}

} // namespace skeletree
