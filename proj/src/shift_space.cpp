#include "tfg/shift_space.hpp"

#include <algorithm>
#include <sstream>

namespace tfg {

Path vertex_path(const MultiGraph& g, int vertex) {
    if (vertex < 0 || vertex >= g.vertex_count()) throw invalid_argument("vertex out of range");
    return Path{vertex, {}};
}

Path make_path(const MultiGraph& g, const std::vector<int>& edges) {
    if (edges.empty()) throw invalid_argument("make_path needs at least one edge; use vertex_path");
    Path p{g.edge(edges[0]).origin, edges};
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (g.edge(edges[i]).terminus != g.edge(edges[i + 1]).origin)
            throw invalid_argument("edges do not compose at position " + std::to_string(i));
    return p;
}

int path_origin(const Path& p) { return p.anchor; }

int path_terminus(const MultiGraph& g, const Path& p) {
    return p.empty() ? p.anchor : g.edge(p.edges.back()).terminus;
}

Path path_extend(const MultiGraph& g, const Path& p, int edge) {
    if (g.edge(edge).origin != path_terminus(g, p))
        throw invalid_argument("edge does not continue the path");
    Path out = p;
    out.edges.push_back(edge);
    return out;
}

Path path_concat(const MultiGraph& g, const Path& p, const Path& suffix) {
    if (path_terminus(g, p) != path_origin(suffix))
        throw invalid_argument("paths do not compose");
    Path out = p;
    out.edges.insert(out.edges.end(), suffix.edges.begin(), suffix.edges.end());
    return out;
}

bool path_less(const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.empty()) return a.anchor < b.anchor;
    return a.edges < b.edges;
}

bool is_prefix(const Path& prefix, const Path& p) {
    if (prefix.anchor != p.anchor) return false;
    if (prefix.length() > p.length()) return false;
    return std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin());
}

bool is_strict_prefix(const Path& prefix, const Path& p) {
    return prefix.length() < p.length() && is_prefix(prefix, p);
}

Path path_suffix(const MultiGraph& g, const Path& p, int prefix_len) {
    if (prefix_len < 0 || prefix_len > p.length()) throw invalid_argument("bad prefix length");
    if (prefix_len == 0) return p;
    Path cut = p;
    cut.edges.resize(prefix_len);
    Path out;
    out.anchor = path_terminus(g, cut);
    out.edges.assign(p.edges.begin() + prefix_len, p.edges.end());
    return out;
}

std::string path_to_string(const MultiGraph& g, const Path& p) {
    if (p.empty()) return "@" + g.vertex_name(p.anchor);
    std::string out;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i) out += ".";
        out += g.edge(p.edges[i]).name;
    }
    return out;
}

ClopenSet full_space(GraphPtr g) {
    ClopenSet c;
    c.graph = g;
    c.name = "X";
    for (int v = 0; v < g->vertex_count(); ++v) c.antichain.push_back(vertex_path(*g, v));
    return c;
}

static void validate_path(const MultiGraph& g, const Path& p) {
    if (p.anchor < 0 || p.anchor >= g.vertex_count()) throw invalid_argument("path anchor out of range");
    int at = p.anchor;
    for (int e : p.edges) {
        if (e < 0 || e >= g.edge_count()) throw invalid_argument("path edge out of range");
        if (g.edge(e).origin != at) throw invalid_argument("path edges do not compose");
        at = g.edge(e).terminus;
    }
}

ClopenSet make_clopen(GraphPtr g, std::vector<Path> antichain, std::string name) {
    for (const Path& p : antichain) validate_path(*g, p);
    std::sort(antichain.begin(), antichain.end(), path_less);
    for (size_t i = 0; i < antichain.size(); ++i)
        for (size_t j = i + 1; j < antichain.size(); ++j)
            if (is_prefix(antichain[i], antichain[j]) || is_prefix(antichain[j], antichain[i]))
                throw invalid_argument("antichain paths must be pairwise prefix-incomparable");
    ClopenSet c;
    c.graph = std::move(g);
    c.antichain = std::move(antichain);
    c.name = std::move(name);
    return c;
}

namespace {

// Z(a) contained in the union of cylinders of B: either some b is a prefix of a,
// or the strict extensions of a in B cover every child of a.
bool covers(const MultiGraph& g, const std::vector<Path>& b, const Path& a) {
    for (const Path& p : b)
        if (is_prefix(p, a)) return true;
    bool any_below = false;
    for (const Path& p : b)
        if (is_strict_prefix(a, p)) {
            any_below = true;
            break;
        }
    if (!any_below) return false;
    int t = path_terminus(g, a);
    if (g.out_degree(t) == 0) return false;
    for (int e : g.out_edges(t)) {
        Path child = a;
        child.edges.push_back(e);
        if (!covers(g, b, child)) return false;
    }
    return true;
}

}  // namespace

bool is_complete_antichain(const MultiGraph& g, const std::vector<Path>& paths,
                           const ClopenSet& within) {
    for (const Path& p : paths) validate_path(g, p);
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t j = i + 1; j < paths.size(); ++j)
            if (is_prefix(paths[i], paths[j]) || is_prefix(paths[j], paths[i])) return false;
    for (const Path& p : paths)
        if (!covers(g, within.antichain, p)) return false;
    for (const Path& w : within.antichain)
        if (!covers(g, paths, w)) return false;
    return true;
}

bool same_clopen_set(const ClopenSet& a, const ClopenSet& b) {
    const MultiGraph& g = *a.graph;
    for (const Path& p : a.antichain)
        if (!covers(g, b.antichain, p)) return false;
    for (const Path& p : b.antichain)
        if (!covers(g, a.antichain, p)) return false;
    return true;
}

bool clopen_subset(const ClopenSet& inner, const ClopenSet& outer) {
    const MultiGraph& g = *inner.graph;
    for (const Path& p : inner.antichain)
        if (!covers(g, outer.antichain, p)) return false;
    return true;
}

ClopenSet refine_at(const ClopenSet& c, const Path& leaf) {
    const MultiGraph& g = *c.graph;
    auto it = std::find(c.antichain.begin(), c.antichain.end(), leaf);
    if (it == c.antichain.end()) throw invalid_argument("leaf is not in the antichain");
    int t = path_terminus(g, leaf);
    if (g.out_degree(t) == 0) throw invalid_argument("leaf terminus has no out-edges");
    std::vector<Path> paths;
    paths.reserve(c.antichain.size() + g.out_degree(t) - 1);
    for (const Path& p : c.antichain)
        if (!(p == leaf)) paths.push_back(p);
    for (int e : g.out_edges(t)) paths.push_back(path_extend(g, leaf, e));
    ClopenSet out = make_clopen(c.graph, std::move(paths), c.name);
    return out;
}

ClopenSet common_refinement(const ClopenSet& a, const ClopenSet& b) {
    if (!same_clopen_set(a, b)) throw invalid_argument("clopen sets differ");
    std::vector<Path> out;
    for (const Path& p : a.antichain)
        for (const Path& q : b.antichain) {
            if (is_prefix(q, p)) out.push_back(p);
            else if (is_strict_prefix(p, q)) out.push_back(q);
        }
    std::sort(out.begin(), out.end(), path_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return make_clopen(a.graph, std::move(out), a.name);
}

namespace {

void subtract(const MultiGraph& g, const Path& w, const std::vector<Path>& c,
              std::vector<Path>& out) {
    for (const Path& p : c)
        if (is_prefix(p, w)) return;  // fully removed
    bool any_below = false;
    for (const Path& p : c)
        if (is_strict_prefix(w, p)) {
            any_below = true;
            break;
        }
    if (!any_below) {
        out.push_back(w);
        return;
    }
    for (int e : g.out_edges(path_terminus(g, w))) {
        Path child = w;
        child.edges.push_back(e);
        subtract(g, child, c, out);
    }
}

}  // namespace

ClopenSet complement(const ClopenSet& c, const ClopenSet& within) {
    if (!clopen_subset(c, within)) throw invalid_argument("set is not contained in the ambient set");
    const MultiGraph& g = *within.graph;
    std::vector<Path> out;
    for (const Path& w : within.antichain) subtract(g, w, c.antichain, out);
    return make_clopen(within.graph, std::move(out));
}

BoundaryPoint make_point(GraphPtr g, Path preperiod, Path period) {
    if (period.empty()) throw invalid_argument("period must be nonempty");
    validate_path(*g, period);
    if (path_terminus(*g, period) != path_origin(period))
        throw invalid_argument("period must be a cycle");
    if (preperiod.anchor < 0) preperiod = vertex_path(*g, path_origin(period));
    validate_path(*g, preperiod);
    if (path_terminus(*g, preperiod) != path_origin(period))
        throw invalid_argument("preperiod must end where the period starts");

    // Shortest period: the least divisor length that reproduces the cycle.
    int n = period.length();
    for (int len = 1; len < n; ++len) {
        if (n % len != 0) continue;
        bool ok = true;
        for (int i = len; i < n && ok; ++i) ok = period.edges[i] == period.edges[i - len];
        if (ok) {
            period.edges.resize(len);
            break;
        }
    }
    // Shortest preperiod: absorb trailing edges into a rotated period.
    while (!preperiod.empty() && preperiod.edges.back() == period.edges.back()) {
        preperiod.edges.pop_back();
        std::rotate(period.edges.begin(), period.edges.end() - 1, period.edges.end());
        period.anchor = g->edge(period.edges[0]).origin;
    }
    if (preperiod.empty()) preperiod.anchor = path_origin(period);
    BoundaryPoint p;
    p.graph = std::move(g);
    p.preperiod = std::move(preperiod);
    p.period = std::move(period);
    return p;
}

int point_origin(const BoundaryPoint& p) { return path_origin(p.preperiod); }

int point_edge_at(const BoundaryPoint& p, int k) {
    if (k < p.preperiod.length()) return p.preperiod.edges[k];
    return p.period.edges[(k - p.preperiod.length()) % p.period.length()];
}

bool point_has_prefix(const BoundaryPoint& p, const Path& prefix) {
    if (prefix.empty()) return point_origin(p) == prefix.anchor;
    if (path_origin(prefix) != point_origin(p)) return false;
    for (int k = 0; k < prefix.length(); ++k)
        if (point_edge_at(p, k) != prefix.edges[k]) return false;
    return true;
}

bool member(const BoundaryPoint& p, const ClopenSet& c) {
    for (const Path& q : c.antichain)
        if (point_has_prefix(p, q)) return true;
    return false;
}

BoundaryPoint shift(const BoundaryPoint& p) {
    const MultiGraph& g = *p.graph;
    Path pre = p.preperiod;
    Path per = p.period;
    if (!pre.empty()) {
        pre.anchor = g.edge(pre.edges[0]).terminus;
        pre.edges.erase(pre.edges.begin());
        if (pre.empty()) pre.anchor = path_origin(per);
    } else {
        std::rotate(per.edges.begin(), per.edges.begin() + 1, per.edges.end());
        per.anchor = g.edge(per.edges[0]).origin;
        pre = vertex_path(g, per.anchor);
    }
    return make_point(p.graph, pre, per);
}

std::string point_to_string(const BoundaryPoint& p) {
    const MultiGraph& g = *p.graph;
    std::string pre = p.preperiod.empty() ? "-" : path_to_string(g, p.preperiod);
    return "point " + pre + " (" + path_to_string(g, p.period) + ")";
}

}  // namespace tfg
