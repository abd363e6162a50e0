#include "tfg/multigraph.hpp"

#include <sstream>

namespace tfg {

int MultiGraph::add_vertex(const std::string& name) {
    if (name.empty()) throw invalid_argument("empty vertex name");
    if (vertex_index_.count(name)) throw invalid_argument("duplicate vertex '" + name + "'");
    int id = static_cast<int>(vertices_.size());
    vertices_.push_back(name);
    out_edges_.emplace_back();
    vertex_index_[name] = id;
    return id;
}

int MultiGraph::add_edge(const std::string& name, const std::string& origin,
                         const std::string& terminus) {
    if (name.empty()) throw invalid_argument("empty edge name");
    if (edge_index_.count(name)) throw invalid_argument("duplicate edge '" + name + "'");
    auto o = vertex_index_.find(origin);
    auto t = vertex_index_.find(terminus);
    if (o == vertex_index_.end()) throw invalid_argument("undeclared vertex '" + origin + "'");
    if (t == vertex_index_.end()) throw invalid_argument("undeclared vertex '" + terminus + "'");
    int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{name, o->second, t->second});
    out_edges_[o->second].push_back(id);
    edge_index_[name] = id;
    return id;
}

int MultiGraph::vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    return it == vertex_index_.end() ? -1 : it->second;
}

int MultiGraph::edge_index(const std::string& name) const {
    auto it = edge_index_.find(name);
    return it == edge_index_.end() ? -1 : it->second;
}

bool MultiGraph::same_structure(const MultiGraph& other) const {
    if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& a = edges_[i];
        const Edge& b = other.edges_[i];
        if (a.name != b.name || a.origin != b.origin || a.terminus != b.terminus) return false;
    }
    return true;
}

IntMatrix adjacency_matrix(const MultiGraph& g) {
    IntMatrix m(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) m.at(e.origin, e.terminus) += 1;
    return m;
}

bool is_diconnected(const MultiGraph& g) {
    const int n = g.vertex_count();
    // Reachability by paths of length >= 1, per start vertex.
    for (int v = 0; v < n; ++v) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack;
        for (int e : g.out_edges(v)) {
            int w = g.edge(e).terminus;
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e : g.out_edges(u)) {
                int w = g.edge(e).terminus;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (int w = 0; w < n; ++w)
            if (!seen[w]) return false;
    }
    return true;
}

bool is_non_circular(const MultiGraph& g) {
    return !adjacency_matrix(g).is_permutation_matrix();
}

bool is_admissible(const MultiGraph& g) { return is_diconnected(g) && is_non_circular(g); }

MultiGraph matui_graph(int d, int k) {
    if (d < 2) throw invalid_argument("matui_graph requires d >= 2");
    if (k < 1) throw invalid_argument("matui_graph requires k >= 1");
    MultiGraph g("matui_" + std::to_string(d) + "_" + std::to_string(k));
    for (int i = 1; i <= k; ++i) g.add_vertex("v" + std::to_string(i));
    for (int i = 1; i < k; ++i)
        g.add_edge("c" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1));
    for (int j = 1; j <= d; ++j)
        g.add_edge("b" + std::to_string(j), "v" + std::to_string(k), "v1");
    return g;
}

std::string to_dot(const MultiGraph& g) {
    std::ostringstream out;
    out << "digraph " << g.name() << " {\n";
    for (const auto& e : g.edges())
        out << "  " << g.vertex_name(e.origin) << " -> " << g.vertex_name(e.terminus)
            << " [label=" << e.name << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace tfg
