#include "tfg/almost_aut.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tfg {

namespace {

bool pair_less(const std::pair<Path, Path>& a, const std::pair<Path, Path>& b) {
    return path_less(a.first, b.first);
}

ClopenSet paths_as_clopen(GraphPtr g, std::vector<Path> paths) {
    return make_clopen(std::move(g), std::move(paths));
}

std::vector<Path> domain_paths(const PrefixExchange& e) {
    std::vector<Path> out;
    out.reserve(e.pairs.size());
    for (const auto& pr : e.pairs) out.push_back(pr.first);
    return out;
}

std::vector<Path> range_paths(const PrefixExchange& e) {
    std::vector<Path> out;
    out.reserve(e.pairs.size());
    for (const auto& pr : e.pairs) out.push_back(pr.second);
    return out;
}

void require_compatible(const PrefixExchange& a, const PrefixExchange& b) {
    if (!a.graph->same_structure(*b.graph))
        throw invalid_argument("elements live over different graphs");
    if (!same_clopen_set(a.restriction, b.restriction))
        throw invalid_argument("elements have different restrictions");
}

}  // namespace

void LocalPermMap::set(const MultiGraph& g, const Path& at, std::vector<int> perm) {
    int deg = g.out_degree(path_terminus(g, at));
    if (static_cast<int>(perm.size()) != deg)
        throw invalid_argument("local permutation size does not match out-degree");
    std::vector<char> hit(deg, 0);
    for (int i : perm) {
        if (i < 0 || i >= deg || hit[i]) throw invalid_argument("not a permutation");
        hit[i] = 1;
    }
    support[at] = std::move(perm);
}

const std::vector<int>* LocalPermMap::find(const Path& at) const {
    auto it = support.find(at);
    return it == support.end() ? nullptr : &it->second;
}

PrefixExchange identity_element(GraphPtr g) {
    ClopenSet x = full_space(g);
    return identity_element(std::move(g), std::move(x));
}

PrefixExchange identity_element(GraphPtr g, ClopenSet restriction) {
    std::vector<std::pair<Path, Path>> pairs;
    for (const Path& p : restriction.antichain) pairs.emplace_back(p, p);
    return canonicalize(make_element(std::move(g), std::move(restriction), std::move(pairs)));
}

PrefixExchange make_element(GraphPtr g, ClopenSet restriction,
                            std::vector<std::pair<Path, Path>> pairs) {
    std::sort(pairs.begin(), pairs.end(), pair_less);
    PrefixExchange e{std::move(g), std::move(restriction), std::move(pairs)};
    std::vector<std::string> errs = validate(e);
    if (!errs.empty()) throw invalid_argument("invalid element: " + errs.front());
    return e;
}

std::vector<std::string> validate(const PrefixExchange& e) {
    std::vector<std::string> errs;
    const MultiGraph& g = *e.graph;
    if (e.restriction.graph && !e.restriction.graph->same_structure(g))
        errs.push_back("restriction lives over a different graph");
    for (const auto& [a, b] : e.pairs) {
        if (path_terminus(g, a) != path_terminus(g, b))
            errs.push_back("label mismatch: pair " + path_to_string(g, a) + " -> " +
                           path_to_string(g, b) + " has different termini");
    }
    if (!is_complete_antichain(g, domain_paths(e), e.restriction))
        errs.push_back("domain paths are not a complete antichain within the restriction");
    if (!is_complete_antichain(g, range_paths(e), e.restriction))
        errs.push_back("range paths are not a complete antichain within the restriction");
    for (size_t i = 0; i + 1 < e.pairs.size(); ++i)
        if (!path_less(e.pairs[i].first, e.pairs[i + 1].first))
            errs.push_back("pairs are not sorted by domain path");
    return errs;
}

PrefixExchange expand_at(const PrefixExchange& e, const Path& domain_leaf) {
    const MultiGraph& g = *e.graph;
    auto it = std::find_if(e.pairs.begin(), e.pairs.end(),
                           [&](const auto& pr) { return pr.first == domain_leaf; });
    if (it == e.pairs.end()) throw invalid_argument("no pair with the given domain leaf");
    if (g.out_degree(path_terminus(g, domain_leaf)) == 0)
        throw invalid_argument("leaf terminus has no out-edges");
    PrefixExchange out{e.graph, e.restriction, {}};
    out.pairs.reserve(e.pairs.size() + 1);
    for (const auto& pr : e.pairs)
        if (!(pr.first == domain_leaf)) out.pairs.push_back(pr);
    for (int d : g.out_edges(path_terminus(g, domain_leaf)))
        out.pairs.emplace_back(path_extend(g, it->first, d), path_extend(g, it->second, d));
    std::sort(out.pairs.begin(), out.pairs.end(), pair_less);
    return out;
}

namespace {

Path drop_last(const MultiGraph& g, const Path& p) {
    Path out;
    if (p.length() == 1) return vertex_path(g, g.edge(p.edges[0]).origin);
    out.anchor = p.anchor;
    out.edges.assign(p.edges.begin(), p.edges.end() - 1);
    return out;
}

}  // namespace

namespace {

// The pair whose domain is exactly `dom`, by binary search; pairs stay sorted.
const std::pair<Path, Path>* find_by_domain(const std::vector<std::pair<Path, Path>>& pairs,
                                            const Path& dom) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), dom,
                               [](const auto& pr, const Path& p) { return path_less(pr.first, p); });
    if (it == pairs.end() || !(it->first == dom)) return nullptr;
    return &*it;
}

}  // namespace

PrefixExchange canonicalize(const PrefixExchange& e) {
    const MultiGraph& g = *e.graph;
    PrefixExchange cur = e;
    std::sort(cur.pairs.begin(), cur.pairs.end(), pair_less);
    for (;;) {
        // Candidate parents of domain paths, deepest first, canonical ties.
        std::vector<Path> parents;
        for (const auto& [a, b] : cur.pairs) {
            if (a.empty()) continue;
            parents.push_back(drop_last(g, a));
        }
        std::sort(parents.begin(), parents.end(), [](const Path& x, const Path& y) {
            if (x.length() != y.length()) return x.length() > y.length();
            return path_less(x, y);
        });
        parents.erase(std::unique(parents.begin(), parents.end()), parents.end());

        bool contracted = false;
        for (const Path& parent : parents) {
            const auto& outs = g.out_edges(path_terminus(g, parent));
            // Candidate image parent from the first child pair.
            const auto* first_pair = find_by_domain(cur.pairs, path_extend(g, parent, outs[0]));
            if (!first_pair) continue;
            const Path& img0 = first_pair->second;
            if (img0.empty() || img0.edges.back() != outs[0]) continue;
            Path image_parent = drop_last(g, img0);
            bool family = true;
            for (int d : outs) {
                const auto* pr = find_by_domain(cur.pairs, path_extend(g, parent, d));
                if (!pr || !(pr->second == path_extend(g, image_parent, d))) {
                    family = false;
                    break;
                }
            }
            if (!family) continue;
            std::vector<std::pair<Path, Path>> next;
            next.reserve(cur.pairs.size() - outs.size() + 1);
            for (const auto& pr : cur.pairs) {
                bool is_family_member = pr.first.length() == parent.length() + 1 &&
                                        is_strict_prefix(parent, pr.first);
                if (!is_family_member) next.push_back(pr);
            }
            next.emplace_back(parent, image_parent);
            std::sort(next.begin(), next.end(), pair_less);
            cur.pairs = std::move(next);
            contracted = true;
            break;
        }
        if (!contracted) break;
    }
    return cur;
}

PrefixExchange compose(const PrefixExchange& f, const PrefixExchange& g) {
    require_compatible(f, g);
    const MultiGraph& graph = *f.graph;
    ClopenSet middle = common_refinement(paths_as_clopen(f.graph, range_paths(g)),
                                         paths_as_clopen(f.graph, domain_paths(f)));

    // Exact-prefix lookup tables keyed by g's ranges and f's domains.
    std::map<Path, const std::pair<Path, Path>*, PathLess> by_range, by_domain;
    for (const auto& pr : g.pairs) by_range[pr.second] = &pr;
    for (const auto& pr : f.pairs) by_domain[pr.first] = &pr;
    auto lookup = [&](const std::map<Path, const std::pair<Path, Path>*, PathLess>& table,
                      const Path& r) -> const std::pair<Path, Path>* {
        Path probe = vertex_path(graph, path_origin(r));
        for (int len = 0; len <= r.length(); ++len) {
            if (len > 0) probe.edges.push_back(r.edges[len - 1]);
            auto it = table.find(probe);
            if (it != table.end()) return it->second;
        }
        return nullptr;
    };

    std::vector<std::pair<Path, Path>> pairs;
    pairs.reserve(middle.antichain.size());
    for (const Path& r : middle.antichain) {
        const auto* gpair = lookup(by_range, r);
        const auto* fpair = lookup(by_domain, r);
        if (!gpair || !fpair) throw error("internal: refinement leaf not covered");
        Path domain = path_concat(graph, gpair->first, path_suffix(graph, r, gpair->second.length()));
        Path range = path_concat(graph, fpair->second, path_suffix(graph, r, fpair->first.length()));
        pairs.emplace_back(std::move(domain), std::move(range));
    }
    return canonicalize(make_element(f.graph, f.restriction, std::move(pairs)));
}

PrefixExchange invert(const PrefixExchange& e) {
    std::vector<std::pair<Path, Path>> pairs;
    pairs.reserve(e.pairs.size());
    for (const auto& [a, b] : e.pairs) pairs.emplace_back(b, a);
    std::sort(pairs.begin(), pairs.end(), pair_less);
    return canonicalize(make_element(e.graph, e.restriction, std::move(pairs)));
}

bool equals(const PrefixExchange& e1, const PrefixExchange& e2) {
    require_compatible(e1, e2);
    return canonicalize(e1).pairs == canonicalize(e2).pairs;
}

BoundaryPoint apply(const PrefixExchange& e, const BoundaryPoint& p) {
    if (!member(p, e.restriction)) throw invalid_argument("point lies outside the restriction");
    const MultiGraph& g = *e.graph;
    for (const auto& [a, b] : e.pairs) {
        if (!point_has_prefix(p, a)) continue;
        BoundaryPoint tail = p;
        for (int k = 0; k < a.length(); ++k) tail = shift(tail);
        Path pre = path_concat(g, b, tail.preperiod);
        return make_point(e.graph, std::move(pre), tail.period);
    }
    throw error("internal: no domain path matched a restricted point");
}

Path apply_to_path(const PrefixExchange& e, const Path& p) {
    const MultiGraph& g = *e.graph;
    for (const auto& [a, b] : e.pairs)
        if (is_prefix(a, p)) return path_concat(g, b, path_suffix(g, p, a.length()));
    throw invalid_argument("path is too shallow or outside the restriction");
}

BisectionTable to_bisection(const PrefixExchange& e) {
    BisectionTable t{e.graph, e.restriction, {}};
    t.triples.reserve(e.pairs.size());
    for (const auto& [a, b] : e.pairs)
        t.triples.push_back({b, static_cast<long>(a.length() - b.length()), a});
    return t;
}

PrefixExchange from_bisection(const BisectionTable& t) {
    std::vector<std::pair<Path, Path>> pairs;
    pairs.reserve(t.triples.size());
    for (const auto& tr : t.triples) {
        if (tr.cocycle != static_cast<long>(tr.domain.length() - tr.range.length()))
            throw invalid_argument("cocycle does not equal |domain| - |range|");
        pairs.emplace_back(tr.domain, tr.range);
    }
    return canonicalize(make_element(t.graph, t.restriction, std::move(pairs)));
}

namespace {

// Prefix-to-image map of a depth-preserving element; nullopt on any conflict.
std::optional<std::map<Path, Path, PathLess>> prefix_map(const MultiGraph& g,
                                                         const PrefixExchange& e) {
    std::map<Path, Path, PathLess> phi;
    for (const auto& [a, b] : e.pairs) {
        for (int len = 0; len <= a.length(); ++len) {
            Path da = len == 0 ? vertex_path(g, path_origin(a)) : Path{a.anchor, {a.edges.begin(), a.edges.begin() + len}};
            Path db = len == 0 ? vertex_path(g, path_origin(b)) : Path{b.anchor, {b.edges.begin(), b.edges.begin() + len}};
            auto [it, inserted] = phi.emplace(da, db);
            if (!inserted && !(it->second == db)) return std::nullopt;
        }
    }
    return phi;
}

}  // namespace

std::optional<LocalPermMap> is_automorphism(const PrefixExchange& e) {
    const MultiGraph& g = *e.graph;
    PrefixExchange c = canonicalize(e);
    for (const auto& [a, b] : c.pairs)
        if (a.length() != b.length()) return std::nullopt;
    auto phi = prefix_map(g, c);
    if (!phi) return std::nullopt;
    PrefixExchange cinv = c;
    for (auto& pr : cinv.pairs) std::swap(pr.first, pr.second);
    std::sort(cinv.pairs.begin(), cinv.pairs.end(), pair_less);
    auto psi = prefix_map(g, cinv);
    if (!psi) return std::nullopt;
    for (const auto& [v, w] : *phi) {
        auto back = psi->find(w);
        if (back == psi->end() || !(back->second == v)) return std::nullopt;
        if (path_terminus(g, v) != path_terminus(g, w)) return std::nullopt;
    }

    LocalPermMap out;
    out.graph = e.graph;
    for (const auto& [v, w] : *phi) {
        // Children of v seen by the prefix tree (all of them for a full-space
        // element; possibly fewer under a proper restriction). Absent children
        // keep their edge, and the result must still be a permutation.
        const auto& outs = g.out_edges(path_terminus(g, v));
        std::vector<int> perm(outs.size());
        bool interior = false, ident = true;
        for (size_t i = 0; i < outs.size(); ++i) perm[i] = static_cast<int>(i);
        for (size_t i = 0; i < outs.size(); ++i) {
            Path child = path_extend(g, v, outs[static_cast<int>(i)]);
            auto img = phi->find(child);
            if (img == phi->end()) continue;  // below a pair leaf or outside Y
            interior = true;
            int d_new = img->second.edges.back();
            auto pos = std::find(outs.begin(), outs.end(), d_new);
            if (pos == outs.end()) return std::nullopt;
            perm[i] = static_cast<int>(pos - outs.begin());
            if (perm[i] != static_cast<int>(i)) ident = false;
        }
        if (!interior || ident) continue;
        std::vector<char> hit(outs.size(), 0);
        for (int p : perm) {
            if (hit[p]) return std::nullopt;
            hit[p] = 1;
        }
        out.set(g, v, std::move(perm));
    }
    return out;
}

std::optional<std::vector<int>> child_action(const PrefixExchange& e, const Path& v) {
    const MultiGraph& g = *e.graph;
    PrefixExchange c = canonicalize(e);
    // The cylinder must lie inside the restriction.
    ClopenSet vc = make_clopen(e.graph, {v});
    if (!clopen_subset(vc, c.restriction)) return std::nullopt;
    const auto& outs = g.out_edges(path_terminus(g, v));
    const int deg = static_cast<int>(outs.size());

    for (const auto& [a, b] : c.pairs)
        if (is_prefix(a, v)) {
            // Below the antichain the suffix is carried verbatim: identity.
            std::vector<int> perm(deg);
            for (int i = 0; i < deg; ++i) perm[i] = i;
            return perm;
        }
    std::vector<const std::pair<Path, Path>*> below;
    for (const auto& pr : c.pairs)
        if (is_strict_prefix(v, pr.first)) below.push_back(&pr);
    if (below.empty()) return std::nullopt;

    // Candidate image cylinder root: longest common prefix of the images.
    const Path& first = below.front()->second;
    int lcp = first.length();
    for (const auto* pr : below) {
        if (path_origin(pr->second) != path_origin(first)) return std::nullopt;
        int k = 0;
        while (k < lcp && k < pr->second.length() && pr->second.edges[k] == first.edges[k]) ++k;
        lcp = k;
    }
    Path image_root = lcp == 0 ? vertex_path(g, path_origin(first))
                               : Path{first.anchor, {first.edges.begin(), first.edges.begin() + lcp}};
    if (path_terminus(g, image_root) != path_terminus(g, v)) return std::nullopt;
    std::vector<Path> images;
    for (const auto* pr : below) images.push_back(pr->second);
    if (!is_complete_antichain(g, images, make_clopen(e.graph, {image_root}))) return std::nullopt;

    std::vector<int> perm(deg, -1);
    for (int i = 0; i < deg; ++i) {
        int d = outs[i];
        int image_edge = -1;
        for (const auto* pr : below) {
            if (pr->first.edges[v.length()] != d) continue;
            if (pr->second.length() <= image_root.length()) return std::nullopt;
            int cand = pr->second.edges[image_root.length()];
            if (image_edge >= 0 && image_edge != cand) return std::nullopt;  // cylinder split
            image_edge = cand;
        }
        if (image_edge < 0) return std::nullopt;
        auto pos = std::find(outs.begin(), outs.end(), image_edge);
        if (pos == outs.end()) return std::nullopt;
        perm[i] = static_cast<int>(pos - outs.begin());
    }
    std::vector<char> hit(deg, 0);
    for (int i : perm) {
        if (i < 0 || hit[i]) return std::nullopt;
        hit[i] = 1;
    }
    return perm;
}

namespace {

void build_from_perms(const MultiGraph& g, const LocalPermMap& data, const Path& dom,
                      const Path& rng, std::vector<std::pair<Path, Path>>& pairs) {
    bool support_below = false;
    for (const auto& [at, perm] : data.support)
        if (is_prefix(dom, at)) {
            support_below = true;
            break;
        }
    if (!support_below) {
        pairs.emplace_back(dom, rng);
        return;
    }
    const auto& outs = g.out_edges(path_terminus(g, dom));
    const std::vector<int>* perm = data.find(dom);
    for (size_t i = 0; i < outs.size(); ++i) {
        int d = outs[i];
        int d_img = outs[perm ? (*perm)[i] : i];
        build_from_perms(g, data, path_extend(g, dom, d), path_extend(g, rng, d_img), pairs);
    }
}

}  // namespace

PrefixExchange from_local_perms(GraphPtr g, const LocalPermMap& data) {
    const MultiGraph& graph = *g;
    for (const auto& [at, perm] : data.support) {
        const auto& outs = graph.out_edges(path_terminus(graph, at));
        for (size_t i = 0; i < outs.size(); ++i)
            if (graph.edge(outs[i]).terminus != graph.edge(outs[perm[i]]).terminus)
                throw invalid_argument("local permutation does not preserve edge termini");
    }
    std::vector<std::pair<Path, Path>> pairs;
    for (int v = 0; v < graph.vertex_count(); ++v)
        build_from_perms(graph, data, vertex_path(graph, v), vertex_path(graph, v), pairs);
    ClopenSet x = full_space(g);
    return canonicalize(make_element(std::move(g), std::move(x), std::move(pairs)));
}

namespace {

// Count of complete antichains of the subtree below a vertex with the given
// terminus, leaves at relative depth <= budget.
Int antichain_count(const MultiGraph& g, int terminus, int budget,
                    std::map<std::pair<int, int>, Int>& memo) {
    if (budget == 0) return 1;
    auto key = std::make_pair(terminus, budget);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Int split = 1;
    for (int e : g.out_edges(terminus))
        split *= antichain_count(g, g.edge(e).terminus, budget - 1, memo);
    Int total = 1 + split;
    memo.emplace(key, total);
    return total;
}

// Decode the antichain with the given index below `p` (0 = keep p as a leaf).
void decode_antichain(const MultiGraph& g, const Path& p, int budget, Int index,
                      std::map<std::pair<int, int>, Int>& memo, std::vector<Path>& out) {
    if (index == 0 || budget == 0) {
        out.push_back(p);
        return;
    }
    index -= 1;
    for (int e : g.out_edges(path_terminus(g, p))) {
        Path child = path_extend(g, p, e);
        Int sub = antichain_count(g, path_terminus(g, child), budget - 1, memo);
        decode_antichain(g, child, budget - 1, index % sub, memo, out);
        index /= sub;
    }
}

Int uniform_int(std::mt19937_64& rng, const Int& n) {
    if (n <= 1) return 0;
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    for (;;) {
        Int draw = 0;
        for (unsigned got = 0; got < bits; got += 64) {
            draw <<= 64;
            draw += rng();
        }
        unsigned excess = ((bits + 63) / 64) * 64 - bits;
        draw >>= excess;
        if (draw < n) return draw;
    }
}

std::vector<Path> sample_antichain(const MultiGraph& g, const ClopenSet& y, int depth,
                                   std::mt19937_64& rng,
                                   std::map<std::pair<int, int>, Int>& memo) {
    std::vector<Path> out;
    for (const Path& leaf : y.antichain) {
        Int count = antichain_count(g, path_terminus(g, leaf), depth, memo);
        decode_antichain(g, leaf, depth, uniform_int(rng, count), memo, out);
    }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

}  // namespace

PrefixExchange random_element(GraphPtr g, const ClopenSet& y, int depth, std::uint64_t seed) {
    if (depth < 1) throw invalid_argument("random_element needs depth >= 1");
    const MultiGraph& graph = *g;
    std::mt19937_64 rng(seed);
    std::map<std::pair<int, int>, Int> memo;

    auto profile = [&](const std::vector<Path>& paths) {
        std::vector<int> counts(graph.vertex_count(), 0);
        for (const Path& p : paths) counts[path_terminus(graph, p)] += 1;
        return counts;
    };

    std::vector<Path> dom = sample_antichain(graph, y, depth, rng, memo);
    std::vector<Path> rng_paths;
    for (int attempt = 0; attempt < 256; ++attempt) {
        rng_paths = sample_antichain(graph, y, depth, rng, memo);
        if (profile(rng_paths) == profile(dom)) break;
        rng_paths.clear();
    }
    if (rng_paths.empty()) rng_paths = dom;  // terminus profiles always match

    // Uniform terminus-preserving pairing: shuffle each terminus class.
    std::vector<std::vector<Path>> by_term(graph.vertex_count());
    for (const Path& p : rng_paths) by_term[path_terminus(graph, p)].push_back(p);
    for (auto& cls : by_term)
        for (size_t i = cls.size(); i > 1; --i)
            std::swap(cls[i - 1], cls[static_cast<size_t>(uniform_int(rng, Int(i)))]);
    std::vector<int> used(graph.vertex_count(), 0);
    std::vector<std::pair<Path, Path>> pairs;
    pairs.reserve(dom.size());
    for (const Path& d : dom) {
        int t = path_terminus(graph, d);
        pairs.emplace_back(d, by_term[t][used[t]++]);
    }
    return make_element(std::move(g), y, std::move(pairs));
}

bool fixes_pointwise(const PrefixExchange& e, const ClopenSet& t) {
    const MultiGraph& g = *e.graph;
    if (!is_complete_antichain(g, t.antichain, e.restriction))
        throw invalid_argument("T is not a complete antichain within the restriction");
    PrefixExchange c = canonicalize(e);
    for (const Path& leaf : t.antichain) {
        std::vector<Path> image;
        for (const auto& [a, b] : c.pairs) {
            if (is_prefix(a, leaf))
                image.push_back(path_concat(g, b, path_suffix(g, leaf, a.length())));
            else if (is_strict_prefix(leaf, a))
                image.push_back(b);
        }
        if (!same_clopen_set(make_clopen(e.graph, std::move(image)),
                             make_clopen(e.graph, {leaf})))
            return false;
    }
    return true;
}

std::string element_to_text(const PrefixExchange& e) {
    const MultiGraph& g = *e.graph;
    PrefixExchange c = canonicalize(e);
    std::ostringstream out;
    out << "element over " << g.name();
    ClopenSet x = full_space(e.graph);
    if (!same_clopen_set(c.restriction, x)) {
        if (c.restriction.name.empty())
            throw invalid_argument("cannot serialize an element with an unnamed restriction");
        out << " restrict " << c.restriction.name;
    }
    out << "\n";
    for (const auto& [a, b] : c.pairs)
        out << "pair " << path_to_string(g, a) << " -> " << path_to_string(g, b) << "\n";
    return out.str();
}

}  // namespace tfg
