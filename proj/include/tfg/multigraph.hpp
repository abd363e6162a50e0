#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfg/exact_linalg.hpp"

namespace tfg {

/// Finite oriented multigraph. Declaration order of vertices and edges is the
/// canonical order used for all downstream tie-breaking.
class MultiGraph {
public:
    struct Edge {
        std::string name;
        int origin;
        int terminus;
    };

    explicit MultiGraph(std::string name) : name_(std::move(name)) {}

    /// Throws invalid_argument on duplicate names or undeclared endpoints.
    int add_vertex(const std::string& name);
    int add_edge(const std::string& name, const std::string& origin, const std::string& terminus);

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_name(int v) const { return vertices_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    int vertex_index(const std::string& name) const;  // -1 when absent
    int edge_index(const std::string& name) const;    // -1 when absent

    /// Out-edges of v in canonical (declaration) order.
    const std::vector<int>& out_edges(int v) const { return out_edges_[v]; }
    int out_degree(int v) const { return static_cast<int>(out_edges_[v].size()); }

    bool same_structure(const MultiGraph& other) const;

private:
    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
    std::unordered_map<std::string, int> vertex_index_;
    std::unordered_map<std::string, int> edge_index_;
};

using GraphPtr = std::shared_ptr<const MultiGraph>;

/// Entry (v,w) counts the edges v -> w, rows/columns in canonical vertex order.
IntMatrix adjacency_matrix(const MultiGraph& g);

/// True iff every ordered vertex pair (v,w) is joined by a path of length n > 0.
bool is_diconnected(const MultiGraph& g);

/// True iff the adjacency matrix is not a permutation matrix.
bool is_non_circular(const MultiGraph& g);

bool is_admissible(const MultiGraph& g);  // both predicates

/// k vertices in a directed cycle plus d parallel edges k -> 1 (d loops when k = 1).
MultiGraph matui_graph(int d, int k);

/// Deterministic DOT text, edges in canonical order, labelled by edge name.
std::string to_dot(const MultiGraph& g);

}  // namespace tfg
