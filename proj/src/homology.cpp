#include "tfg/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace tfg {

namespace {

void require_admissible(const MultiGraph& g) {
    if (!is_diconnected(g)) throw invalid_argument("graph '" + g.name() + "' is not diconnected");
    if (!is_non_circular(g)) throw invalid_argument("graph '" + g.name() + "' is circular");
}

std::vector<Int> unit_vector(int n, int i) {
    std::vector<Int> v(n, 0);
    v[i] = 1;
    return v;
}

// The cylinder-class formula rests on e_v = sum_w M(v,w) e_w holding in the
// cokernel; machine-checked here rather than assumed.
void verify_generator_relations(const MultiGraph& g, const CokernelMap& map) {
    IntMatrix m = adjacency_matrix(g);
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        AbElement lhs = map.reduce(unit_vector(n, v));
        std::vector<Int> rhs(n, 0);
        for (int w = 0; w < n; ++w) rhs[w] = m.at(v, w);
        if (!(lhs == map.reduce(rhs)))
            throw error("cokernel generator relation failed for vertex " + g.vertex_name(v));
    }
}

}  // namespace

CokernelMap homology_cokernel(const MultiGraph& g) {
    require_admissible(g);
    return cokernel(id_minus_transpose(adjacency_matrix(g)));
}

FinAbGroup homology_group(const MultiGraph& g, int n) {
    require_admissible(g);
    if (n < 0) throw invalid_argument("negative homology degree");
    if (n == 0) return homology_cokernel(g).group();
    if (n == 1) {
        FinAbGroup h;
        h.free_rank = static_cast<int>(kernel_basis(id_minus_transpose(adjacency_matrix(g))).size());
        return h;
    }
    return FinAbGroup{};
}

HomologyClass class_of_clopen(const MultiGraph& g, const ClopenSet& y) {
    CokernelMap map = homology_cokernel(g);
    verify_generator_relations(g, map);
    std::vector<Int> ambient(g.vertex_count(), 0);
    for (const Path& p : y.antichain) ambient[path_terminus(g, p)] += 1;
    return HomologyClass{map.reduce(ambient)};
}

namespace {

// Breadth-first search over classes reachable by nonnegative nonzero vertex
// multiplicity vectors; returns the least vector (by level, then lex) hitting h.
std::vector<Int> search_multiplicities(const MultiGraph& g, const CokernelMap& map,
                                       const AbElement& target, int bound) {
    const int n = g.vertex_count();
    struct Node {
        std::vector<Int> mult;
        AbElement cls;
        int last;  // largest vertex index used, for multiset enumeration
    };
    std::vector<AbElement> gen(n, zero_element(map.group()));
    for (int v = 0; v < n; ++v) gen[v] = map.reduce(unit_vector(n, v));

    std::map<std::pair<std::vector<Int>, std::vector<Int>>, bool> seen;
    auto key = [](const AbElement& e) { return std::make_pair(e.torsion_coords, e.free_coords); };

    std::deque<Node> frontier;
    for (int v = 0; v < n; ++v) {
        std::vector<Int> m(n, 0);
        m[v] = 1;
        Node node{std::move(m), gen[v], v};
        if (node.cls == target) return node.mult;
        if (!seen.emplace(key(node.cls), true).second) continue;
        frontier.push_back(std::move(node));
    }
    for (int level = 2; level <= bound; ++level) {
        std::deque<Node> next;
        for (const Node& node : frontier)
            for (int v = node.last; v < n; ++v) {
                Node ext = node;
                ext.mult[v] += 1;
                ext.cls = add(ext.cls, gen[v]);
                ext.last = v;
                if (ext.cls == target) return ext.mult;
                if (!seen.emplace(key(ext.cls), true).second) continue;
                next.push_back(std::move(ext));
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return {};
}

// Distance (in edges) from every vertex to `target`, minimum one edge not required.
std::vector<int> distances_to(const MultiGraph& g, int target) {
    const int n = g.vertex_count();
    std::vector<int> dist(n, -1);
    dist[target] = 0;
    // Reverse BFS over the edge relation.
    std::deque<int> queue{target};
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edge(e);
            if (ed.terminus != w || dist[ed.origin] >= 0) continue;
            dist[ed.origin] = dist[w] + 1;
            queue.push_back(ed.origin);
        }
    }
    return dist;
}

// First edge of a shortest path from `from` toward `target` (canonical tie-break).
int step_toward(const MultiGraph& g, const std::vector<int>& dist, int from) {
    for (int e : g.out_edges(from))
        if (dist[g.edge(e).terminus] == dist[from] - 1) return e;
    throw error("internal: no edge decreases the distance");
}

}  // namespace

ClopenSet realize_class(GraphPtr g, const HomologyClass& h) {
    require_admissible(*g);
    CokernelMap map = homology_cokernel(*g);
    verify_generator_relations(*g, map);
    if (!(h.element.group == map.group()))
        throw invalid_argument("class does not live in this graph's H0");

    Int factor_sum = 0;
    for (const Int& d : map.group().torsion) factor_sum += d;
    int bound = factor_sum + 4 > 1024 ? 1024 : static_cast<int>(factor_sum) + 4;
    std::vector<Int> mult;
    for (;;) {
        mult = search_multiplicities(*g, map, h.element, bound);
        if (!mult.empty()) break;
        if (bound >= 1024)
            throw bound_exhausted(
                "realize_class: no multiplicity vector within bound 1024; the class may need a "
                "larger search bound");
        bound = std::min(bound * 2, 1024);
    }

    const MultiGraph& graph = *g;
    const int n = graph.vertex_count();
    std::vector<std::vector<int>> dist(n);
    for (int w = 0; w < n; ++w) dist[w] = distances_to(graph, w);

    std::vector<Path> pool;
    for (int v = 0; v < n; ++v) pool.push_back(vertex_path(graph, v));
    auto pool_take = [&](int pos) {
        Path p = pool[pos];
        pool.erase(pool.begin() + pos);
        return p;
    };
    // Walk a path one edge along a shortest route, returning sibling cylinders.
    auto extend_toward = [&](Path p, int target) {
        while (path_terminus(graph, p) != target) {
            int at = path_terminus(graph, p);
            int e = step_toward(graph, dist[target], at);
            for (int other : graph.out_edges(at))
                if (other != e) pool.push_back(path_extend(graph, p, other));
            p = path_extend(graph, p, e);
        }
        return p;
    };

    std::vector<Path> result;
    long remaining = 0;
    for (int v = 0; v < n; ++v) remaining += static_cast<long>(mult[v]);
    for (int v = 0; v < n; ++v) {
        for (Int c = 0; c < mult[v]; ++c) {
            // Keep enough incomparable cylinders available for the needs left.
            while (static_cast<long>(pool.size()) < remaining) {
                std::sort(pool.begin(), pool.end(), path_less);
                Path p = pool_take(0);
                int at = path_terminus(graph, p);
                // Nearest vertex with out-degree >= 2 (exists: diconnected + non-circular).
                int best = -1;
                for (int w = 0; w < n; ++w) {
                    if (graph.out_degree(w) < 2 || dist[w][at] < 0) continue;
                    if (best < 0 || dist[w][at] < dist[best][at]) best = w;
                }
                if (best < 0) throw error("internal: no splitting vertex reachable");
                p = extend_toward(std::move(p), best);
                for (int e : graph.out_edges(best)) pool.push_back(path_extend(graph, p, e));
            }
            std::sort(pool.begin(), pool.end(), path_less);
            int pick = 0;
            for (size_t i = 1; i < pool.size(); ++i) {
                int di = dist[v][path_terminus(graph, pool[i])];
                int dp = dist[v][path_terminus(graph, pool[pick])];
                if (di >= 0 && (dp < 0 || di < dp)) pick = static_cast<int>(i);
            }
            Path p = extend_toward(pool_take(pick), v);
            result.push_back(std::move(p));
            --remaining;
        }
    }
    return make_clopen(g, std::move(result));
}

FinAbGroup abelianization(const MultiGraph& g) {
    FinAbGroup h0 = homology_group(g, 0);
    FinAbGroup h1 = homology_group(g, 1);
    FinAbGroup out;
    int twos = 0;
    for (const Int& d : h0.torsion)
        if (d % 2 == 0) ++twos;
    twos += h0.free_rank;  // each free generator survives as Z/2
    out.torsion.assign(twos, 2);
    out.free_rank = h1.free_rank;
    return out;
}

bool matsumoto_equivalent(const MultiGraph& g1, const ClopenSet& y1, const MultiGraph& g2,
                          const ClopenSet& y2, long order_cap) {
    require_admissible(g1);
    require_admissible(g2);
    Int det1 = determinant(id_minus_transpose(adjacency_matrix(g1)));
    Int det2 = determinant(id_minus_transpose(adjacency_matrix(g2)));
    if (det1 == 0 || det2 == 0)
        throw unsupported_infinite("matsumoto criterion needs finite H0 (det != 0)");
    if (det1 != det2) return false;
    HomologyClass c1 = class_of_clopen(g1, y1);
    HomologyClass c2 = class_of_clopen(g2, y2);
    return marked_iso_exists(MarkedGroup{c1.element.group, c1.element},
                             MarkedGroup{c2.element.group, c2.element}, order_cap);
}

}  // namespace tfg
