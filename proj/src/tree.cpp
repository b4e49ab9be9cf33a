#include "skeletree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace skeletree {

namespace {

bool valid_label(const std::string& s)
{
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string letter_label(std::size_t i)
{
    std::string out;
    ++i;
    while (i > 0) {
        --i;
        out.insert(out.begin(), static_cast<char>('A' + i % 26));
        i /= 26;
    }
    return out;
}

std::string format_length(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

RibbonTree::RibbonTree(std::vector<std::string> labels, std::vector<TreeEdge> edges,
                       std::vector<std::vector<int>> rotation)
    : labels_(std::move(labels)), edges_(std::move(edges)), rotation_(std::move(rotation))
{
    const std::size_t n = rotation_.size();
    if (labels_.size() != n) throw TreeError("label count does not match node count");
    if (n < 4) throw TreeError("a ribbon tree needs at least three leaves");
    if (edges_.size() + 1 != n) throw TreeError("edge count must be node count - 1");

    std::vector<int> seen_count(n, 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.a < 0 || ed.b < 0 || static_cast<std::size_t>(ed.a) >= n || static_cast<std::size_t>(ed.b) >= n ||
            ed.a == ed.b)
            throw TreeError("edge " + std::to_string(e) + " has invalid endpoints");
        if (!(ed.length > 0.0) || !std::isfinite(ed.length))
            throw TreeError("edge " + std::to_string(e) + " must have positive finite length");
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (int e : rotation_[v]) {
            if (e < 0 || static_cast<std::size_t>(e) >= edges_.size())
                throw TreeError("rotation of node " + std::to_string(v) + " references unknown edge");
            const auto& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.a != static_cast<int>(v) && ed.b != static_cast<int>(v))
                throw TreeError("rotation of node " + std::to_string(v) + " lists a non-incident edge");
            ++seen_count[static_cast<std::size_t>(e)];
        }
        const int deg = static_cast<int>(rotation_[v].size());
        if (deg == 0) throw TreeError("isolated node " + std::to_string(v));
        if (deg == 2) throw TreeError("internal node " + std::to_string(v) + " has degree 2");
        if (deg == 1 && !valid_label(labels_[v]))
            throw TreeError("leaf " + std::to_string(v) + " needs a label of [A-Za-z0-9_]+");
    }
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (seen_count[e] != 2) throw TreeError("edge " + std::to_string(e) + " must appear in both rotations");

    // Connectivity (with |E| = |V| - 1 this also gives acyclicity).
    std::vector<char> visited(n, 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : rotation_[static_cast<std::size_t>(v)]) {
            const int w = edges_[static_cast<std::size_t>(e)].other(v);
            if (!visited[static_cast<std::size_t>(w)]) {
                visited[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != n) throw TreeError("tree is not connected");

    leaf_pos_.assign(n, -1);
    int start = -1;
    for (std::size_t v = 0; v < n; ++v)
        if (rotation_[v].size() == 1) {
            start = static_cast<int>(v);
            break;
        }
    // Walk around the tree: leave each node along the edge after the arrival edge.
    int v = start;
    int e = rotation_[static_cast<std::size_t>(start)][0];
    leaf_order_.push_back(start);
    for (std::size_t step = 0; step < 2 * edges_.size(); ++step) {
        const int w = edges_[static_cast<std::size_t>(e)].other(v);
        if (rotation_[static_cast<std::size_t>(w)].size() == 1 && w != start) leaf_order_.push_back(w);
        e = next_edge(w, e);
        v = w;
    }
    for (std::size_t i = 0; i < leaf_order_.size(); ++i)
        leaf_pos_[static_cast<std::size_t>(leaf_order_[i])] = static_cast<int>(i);
}

int RibbonTree::next_edge(int v, int e) const
{
    const auto& rot = rotation_[static_cast<std::size_t>(v)];
    const auto it = std::find(rot.begin(), rot.end(), e);
    if (it == rot.end()) throw TreeError("edge is not incident to node");
    const auto next = std::next(it);
    return next == rot.end() ? rot.front() : *next;
}

std::vector<int> RibbonTree::internal_nodes() const
{
    std::vector<int> out;
    for (std::size_t v = 0; v < node_count(); ++v)
        if (rotation_[v].size() > 1) out.push_back(static_cast<int>(v));
    return out;
}

RibbonTree RibbonTree::mirrored() const
{
    auto rot = rotation_;
    for (auto& r : rot) std::reverse(r.begin(), r.end());
    return RibbonTree(labels_, edges_, std::move(rot));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    RibbonTree parse()
    {
        skip_ws();
        if (peek() != '(') fail("tree must start with '(' (the root is an internal node)");
        const int root = new_node("");
        parse_children(root, -1);
        skip_ws();
        expect(';');
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after ';'");
        if (rotation_[0].size() < 3) fail("root has degree " + std::to_string(rotation_[0].size()) + ", need >= 3");
        return RibbonTree(std::move(labels_), std::move(edges_), std::move(rotation_));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw TreeError("tree syntax error at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip_ws()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r'))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void expect(char c)
    {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    int new_node(std::string label)
    {
        labels_.push_back(std::move(label));
        rotation_.emplace_back();
        return static_cast<int>(rotation_.size()) - 1;
    }

    // Parses "( child:len , child:len ... )" below node `v`.
    void parse_children(int v, int parent_edge)
    {
        expect('(');
        int count = 0;
        while (true) {
            skip_ws();
            int child;
            if (peek() == '(') {
                child = new_node("");
                const int e = static_cast<int>(edges_.size());
                edges_.push_back({v, child, 0.0});
                rotation_[static_cast<std::size_t>(v)].push_back(e);
                rotation_[static_cast<std::size_t>(child)].push_back(e);
                parse_children(child, e);
                finish_edge(e);
            } else {
                std::string label = parse_label();
                child = new_node(std::move(label));
                const int e = static_cast<int>(edges_.size());
                edges_.push_back({v, child, 0.0});
                rotation_[static_cast<std::size_t>(v)].push_back(e);
                rotation_[static_cast<std::size_t>(child)].push_back(e);
                finish_edge(e);
            }
            ++count;
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            break;
        }
        expect(')');
        if (parent_edge >= 0 && count < 2)
            fail("internal node has degree " + std::to_string(count + 1) + ", need >= 3");
    }

    void finish_edge(int e)
    {
        expect(':');
        skip_ws();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc()) fail("expected a decimal length");
        pos_ += static_cast<std::size_t>(res.ptr - first);
        if (!(value > 0.0) || !std::isfinite(value)) fail("edge length must be positive");
        edges_[static_cast<std::size_t>(e)].length = value;
    }

    std::string parse_label()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
            if (!ok) break;
            ++pos_;
        }
        if (pos_ == start) fail("expected a leaf label or '('");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string> labels_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<int>> rotation_;
};

void write_subtree(const RibbonTree& t, int v, int via, std::string& out)
{
    if (t.is_leaf(v)) {
        out += t.label(v);
        return;
    }
    out += '(';
    bool first = true;
    const auto rot = t.rotation(v);
    // Children follow the arrival edge counter-clockwise; the root starts at rot[0].
    std::size_t start = 0;
    if (via >= 0) start = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), via) - rot.begin()) + 1;
    for (std::size_t k = 0; k < rot.size(); ++k) {
        const int e = rot[(start + k) % rot.size()];
        if (e == via) continue;
        if (!first) out += ',';
        first = false;
        write_subtree(t, t.edge(e).other(v), e, out);
        out += ':';
        out += format_length(t.edge(e).length);
    }
    out += ')';
}

} // namespace

RibbonTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string serialize_tree(const RibbonTree& tree)
{
    const auto internal = tree.internal_nodes();
    std::string out;
    write_subtree(tree, internal.front(), -1, out);
    out += ';';
    return out;
}

RibbonTree make_star(std::span<const double> lengths)
{
    const std::size_t n = lengths.size();
    if (n < 3) throw TreeError("a star needs at least three edges");
    std::vector<std::string> labels{""};
    std::vector<TreeEdge> edges;
    std::vector<std::vector<int>> rotation(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lengths[i] > 0.0)) throw TreeError("star edge lengths must be positive");
        labels.push_back(letter_label(i));
        edges.push_back({0, static_cast<int>(i) + 1, lengths[i]});
        rotation[0].push_back(static_cast<int>(i));
        rotation.push_back({static_cast<int>(i)});
    }
    return RibbonTree(std::move(labels), std::move(edges), std::move(rotation));
}

std::string to_string(const CenterCandidate& c)
{
    return (c.is_vertex() ? "vertex " : "edge ") + std::to_string(c.id);
}

std::vector<CenterCandidate> center_candidates(const RibbonTree& tree)
{
    std::vector<CenterCandidate> out;
    for (int v : tree.internal_nodes()) out.push_back(CenterCandidate::vertex(v));
    for (std::size_t e = 0; e < tree.edge_count(); ++e) {
        const auto& ed = tree.edge(static_cast<int>(e));
        if (!tree.is_leaf(ed.a) && !tree.is_leaf(ed.b)) out.push_back(CenterCandidate::edge(static_cast<int>(e)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Comparison

std::optional<TreeAlignment> align_from(const RibbonTree& a, int leaf_a, const RibbonTree& b, int leaf_b)
{
    if (a.node_count() != b.node_count() || !a.is_leaf(leaf_a) || !b.is_leaf(leaf_b)) return std::nullopt;
    TreeAlignment out;
    out.node_map.assign(a.node_count(), -1);
    std::vector<int> inverse(b.node_count(), -1);
    out.node_map[static_cast<std::size_t>(leaf_a)] = leaf_b;
    inverse[static_cast<std::size_t>(leaf_b)] = leaf_a;

    int va = leaf_a, vb = leaf_b;
    int ea = a.rotation(leaf_a)[0], eb = b.rotation(leaf_b)[0];
    for (std::size_t step = 0; step < 2 * a.edge_count(); ++step) {
        const int wa = a.edge(ea).other(va), wb = b.edge(eb).other(vb);
        if (a.degree(wa) != b.degree(wb)) return std::nullopt;
        auto& fwd = out.node_map[static_cast<std::size_t>(wa)];
        auto& bwd = inverse[static_cast<std::size_t>(wb)];
        if (fwd == -1 && bwd == -1) {
            fwd = wb;
            bwd = wa;
        } else if (fwd != wb || bwd != wa) {
            return std::nullopt;
        }
        out.max_length_diff = std::max(out.max_length_diff, std::abs(a.edge(ea).length - b.edge(eb).length));
        ea = a.next_edge(wa, ea);
        eb = b.next_edge(wb, eb);
        va = wa;
        vb = wb;
    }
    return out;
}

double tree_distance(const RibbonTree& a, const RibbonTree& b, bool allow_reflection)
{
    double best = std::numeric_limits<double>::infinity();
    if (a.node_count() != b.node_count() || a.leaf_count() != b.leaf_count()) return best;
    const int la = a.leaf_order()[0];
    auto scan = [&](const RibbonTree& target) {
        for (int lb : target.leaf_order())
            if (auto al = align_from(a, la, target, lb)) best = std::min(best, al->max_length_diff);
    };
    scan(b);
    if (allow_reflection) scan(b.mirrored());
    return best;
}

bool ribbon_isomorphic(const RibbonTree& a, const RibbonTree& b, bool allow_reflection, bool metric, double tol)
{
    const double d = tree_distance(a, b, allow_reflection);
    if (!std::isfinite(d)) return false;
    return !metric || d <= tol;
}

} // namespace skeletree
